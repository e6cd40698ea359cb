#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "helpers.hpp"
#include "parsp/digraph.hpp"
#include "parsp/exec.hpp"
#include "parsp/generate.hpp"
#include "parsp/graph_io.hpp"

using namespace parsp;
using testutil::build_real;
using testutil::gstar;

namespace {

std::map<Vertex, RealLifted> dist_map(const std::vector<std::optional<RealLifted>>& d,
                                      std::span<const Vertex> xs) {
  std::map<Vertex, RealLifted> out;
  for (Vertex x : xs) out[x] = *d[x];
  return out;
}

}  // namespace

TEST_CASE("construction removes self-loops, source in-edges, parallel duplicates") {
  RealKind kind;
  RawGraph g = gstar();
  g.real_edges.push_back({1, 1, Rational(9)});   // self-loop
  g.real_edges.push_back({2, 0, Rational(1)});   // into the source
  g.real_edges.push_back({0, 1, Rational(3)});   // parallel, heavier
  g.real_edges.push_back({0, 2, Rational(2)});   // parallel, lighter
  auto d = build_real(kind, g);
  d.validate();
  CHECK(d.edge_count() == 4);
  CHECK(d.out(0).at(1).w.scalar == 1);
  CHECK(d.out(0).at(2).w.scalar == 2);
  CHECK(d.in_tails(0).empty());
}

TEST_CASE("contracting {a} merges by head with the min rule") {
  RealKind kind;
  Exec ex;
  auto d = build_real(kind, gstar());
  std::map<Vertex, RealLifted> dists{{1, lift(0, 1, Rational(1))}};
  Vertex xs[] = {1};
  auto rec = d.contract_into_source(ex, xs, dists);
  d.validate();
  CHECK(rec.edges_rewritten == 1);
  CHECK(d.n_alive() == 3);
  CHECK(d.edge_count() == 2);
  CHECK(d.out(0).at(2).w.scalar == 3);  // min(4, 1+2)
  CHECK(d.out(2).at(3).w.scalar == 1);
}

TEST_CASE("contracting the empty set is the identity") {
  RealKind kind;
  Exec ex;
  auto d = build_real(kind, gstar());
  auto before = d.export_edges();
  auto rec = d.contract_into_source(ex, {}, {});
  CHECK(rec.contracted.empty());
  CHECK(d.export_edges() == before);
}

TEST_CASE("contracting {a,b} leaves s->c at the original distance") {
  RealKind kind;
  Exec ex;
  auto d = build_real(kind, gstar());
  std::map<Vertex, RealLifted> dists{{1, lift(0, 1, Rational(1))},
                                     {2, RealLifted{Rational(3), 2, 2}}};
  Vertex xs[] = {1, 2};
  d.contract_into_source(ex, xs, dists);
  d.validate();
  CHECK(d.n_alive() == 2);
  CHECK(d.edge_count() == 1);
  CHECK(d.out(0).at(3).w.scalar == 4);
  auto od = oracle::dijkstra(4, testutil::scalar_edges(gstar()), 0);
  CHECK(*od[3] == d.out(0).at(3).w.scalar);
}

TEST_CASE("contraction errors") {
  RealKind kind;
  Exec ex;
  auto d = build_real(kind, gstar());
  Vertex with_source[] = {0};
  CHECK_THROWS_AS(d.contract_into_source(ex, with_source, {}), InvalidContraction);
  Vertex missing[] = {1};
  CHECK_THROWS_AS(d.contract_into_source(ex, missing, {}), MissingDistance);
}

TEST_CASE("contraction preserves source distances and never shortens others") {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    RealKind kind;
    Exec ex;
    RawGraph rg = testutil::random_graph(seed, 30);
    auto d = build_real(kind, rg);
    auto base = oracle::bellman_ford_lifted(rg.n, testutil::exported_lifted(d), 0);
    auto base_all = oracle::all_pairs_lifted(rg.n, testutil::exported_lifted(d));

    // Contract the closest few reachable vertices, as a discovery step would.
    auto near = oracle::nearest_of(base, 0, 3);
    if (near.empty()) continue;
    std::vector<Vertex> xs;
    std::map<Vertex, RealLifted> dists;
    for (auto& [v, w] : near) {
      xs.push_back(v);
      dists[v] = w;
    }
    d.contract_into_source(ex, xs, dists);
    d.validate();

    auto after = oracle::bellman_ford_lifted(rg.n, testutil::exported_lifted(d), 0);
    auto after_all = oracle::all_pairs_lifted(rg.n, testutil::exported_lifted(d));
    for (Vertex v = 0; v < rg.n; ++v) {
      if (!d.alive(v)) continue;
      CHECK(base[v].has_value() == after[v].has_value());
      if (base[v]) CHECK(oracle::lifted_less(*base[v], *after[v]) == false);
      if (base[v]) CHECK(oracle::lifted_less(*after[v], *base[v]) == false);
      for (Vertex u = 0; u < rg.n; ++u) {
        if (!d.alive(u) || !after_all[u][v]) continue;
        // dist_G(u,v) <= dist_G'(u,v)
        REQUIRE(base_all[u][v].has_value());
        CHECK(!oracle::lifted_less(*after_all[u][v], *base_all[u][v]));
      }
    }
  }
}

TEST_CASE("every input edge is rewritten at most once across a contraction run") {
  RealKind kind;
  Exec ex;
  RawGraph rg = testutil::random_graph(77, 24);
  auto d = build_real(kind, rg);
  for (;;) {
    auto dist = oracle::bellman_ford_lifted(rg.n, testutil::exported_lifted(d), 0);
    auto near = oracle::nearest_of(dist, 0, 2);
    std::vector<Vertex> xs;
    std::map<Vertex, RealLifted> dists;
    for (auto& [v, w] : near) {
      if (!d.alive(v)) continue;
      xs.push_back(v);
      dists[v] = w;
    }
    if (xs.empty()) break;
    d.contract_into_source(ex, xs, dists);
  }
  for (auto c : d.rewrite_counts()) CHECK(c <= 1);
}

TEST_CASE("top-t edges are the lightest prefix") {
  RealKind kind;
  auto d = build_real(kind, gstar());
  auto t1 = d.top_t_edges(0, 1);
  REQUIRE(t1.size() == 1);
  CHECK(t1[0].first == 1);
  CHECK(d.top_t_edges(3, 3).empty());

  RawGraph rg = generate_graph(GraphFamily::kRandomGnm, 20, 120, 5);
  auto big = build_real(kind, rg);
  for (Vertex v = 0; v < 20; ++v) {
    auto top = big.top_t_edges(v, 5);
    std::vector<std::pair<Vertex, EdgeInfo<RealKind>>> all;
    for (const auto& [h, info] : big.out(v)) all.emplace_back(h, info);
    std::sort(all.begin(), all.end(), [&](const auto& a, const auto& b) {
      return cmp_lifted(kind, a.second.w, b.second.w) < 0;
    });
    all.resize(std::min<std::size_t>(all.size(), 5));
    REQUIRE(top.size() == all.size());
    for (std::size_t i = 0; i < top.size(); ++i) CHECK(top[i].first == all[i].first);
  }
}

TEST_CASE("batch edits stay within the documented ordered-map charge") {
  // c = 3 per the exec documentation: charge(k, n) <= 3 * k * ceil_log2(n).
  Exec ex;
  const std::uint64_t n = 1000, k = 37;
  ex.charge_batch_op(k, n);
  CHECK(ex.counters().work <= 3 * k * ceil_log2(n));
}

TEST_CASE("splitting bounds degrees and preserves distances") {
  RealKind kind;
  Exec ex;

  // star out of a hub behind the source
  RawGraph rg;
  rg.n = 6;
  rg.source = 0;
  rg.real_edges = {{0, 1, Rational(1)}, {1, 2, Rational(1)}, {1, 3, Rational(2)},
                   {1, 4, Rational(3)}, {1, 5, Rational(4)}};
  auto d = build_real(kind, rg);
  auto [h, map] = split_constant_degree(ex, kind, d);
  h.validate();
  for (Vertex v = 0; v < h.vertex_bound(); ++v) {
    if (v == h.source()) continue;
    CHECK(h.indeg(v) <= 2);
    CHECK(h.outdeg(v) <= 2);
  }
  auto base = oracle::dijkstra(rg.n, testutil::scalar_edges(rg), 0);
  auto split_edges = testutil::exported_lifted(h);
  auto after = oracle::bellman_ford_lifted(h.vertex_bound(), split_edges, h.source());
  for (Vertex v = 0; v < rg.n; ++v) {
    REQUIRE(after[map.rep[v]].has_value() == base[v].has_value());
    if (base[v]) CHECK(after[map.rep[v]]->scalar == *base[v]);
  }

  // a graph already within bounds keeps its size
  RawGraph small = gstar();
  auto ds = build_real(kind, small);
  auto [hs, ms] = split_constant_degree(ex, kind, ds);
  CHECK(hs.vertex_bound() == small.n);
  CHECK(hs.edge_count() == ds.edge_count());
}

TEST_CASE("splitting preserves all representative distances on random graphs") {
  for (std::uint64_t seed = 100; seed < 150; ++seed) {
    RealKind kind;
    Exec ex;
    RawGraph rg = testutil::random_graph(seed, 40);
    auto d = build_real(kind, rg);
    auto [h, map] = split_constant_degree(ex, kind, d);
    h.validate();
    for (Vertex v = 0; v < h.vertex_bound(); ++v) {
      if (v == h.source()) continue;
      CHECK(h.indeg(v) <= 2);
      CHECK(h.outdeg(v) <= 2);
    }
    auto orig = oracle::all_pairs_lifted(rg.n, testutil::exported_lifted(d));
    auto split = oracle::all_pairs_lifted(h.vertex_bound(), testutil::exported_lifted(h));
    for (Vertex u = 0; u < rg.n; ++u)
      for (Vertex v = 0; v < rg.n; ++v) {
        if (!d.alive(u) || !d.alive(v)) continue;
        CHECK(orig[u][v].has_value() == split[map.rep[u]][map.rep[v]].has_value());
        if (orig[u][v]) CHECK(orig[u][v]->scalar == split[map.rep[u]][map.rep[v]]->scalar);
      }
  }
}

TEST_CASE("graph files round-trip and generators are deterministic") {
  RawGraph a = generate_graph(GraphFamily::kRandomGnm, 10, 20, 1);
  RawGraph b = generate_graph(GraphFamily::kRandomGnm, 10, 20, 1);
  std::ostringstream sa, sb;
  write_graph(sa, a);
  write_graph(sb, b);
  CHECK(sa.str() == sb.str());

  std::istringstream in(sa.str());
  RawGraph c = read_graph(in, false);
  std::ostringstream sc;
  write_graph(sc, c);
  CHECK(sc.str() == sa.str());

  CHECK(generate_graph(GraphFamily::kComplete, 5, -1, 0).real_edges.size() == 20);
  CHECK(generate_graph(GraphFamily::kStar, 9, -1, 3).real_edges.size() == 8);
  CHECK_THROWS_AS(generate_graph(GraphFamily::kRandomGnm, 3, 100, 0), GenerationError);
}
