#pragma once

#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "parsp/digraph.hpp"
#include "parsp/exec.hpp"
#include "parsp/nearest.hpp"

namespace parsp {

template <class K>
struct SsspResult {
  // Payload (first-coordinate) distance per vertex of the input graph;
  // unreachable vertices carry the distinguished infinite (empty) value.
  std::vector<std::optional<typename K::Payload>> dist;
  // A tight parent edge tail per reached vertex (-1 at the source and for
  // unreachable vertices): dist(parent) + w(parent edge) == dist(v).
  std::vector<Vertex> parent;
  Counters counters;
  int steps = 0;
  int t = 0, ell = 0, p = 0;
};

// Step-level instrumentation for the invariant test suites.
template <class K>
struct SsspObserver {
  virtual ~SsspObserver() = default;
  // Fires before contraction; `g` is the current working graph, `found` the
  // vertices discovered by this step with their current-graph distances.
  virtual void on_discovery_step(const Digraph<K>& g,
                                 const std::vector<std::pair<Vertex, LiftedValue<K>>>& found) {
    (void)g;
    (void)found;
  }
};

// Sequential lifted Dijkstra. Serves as the CLI baseline algorithm and as the
// anchor for tight-parent extraction; the parallel algorithms cross-check
// their payloads against it when asked to.
template <class K>
std::vector<std::optional<LiftedValue<K>>> reference_sssp(Exec& ex, K& kind,
                                                          const Digraph<K>& g) {
  const Vertex n = g.vertex_bound();
  std::vector<std::optional<LiftedValue<K>>> dist(n);
  auto less = [&](const std::pair<LiftedValue<K>, Vertex>& a,
                  const std::pair<LiftedValue<K>, Vertex>& b) {
    if (int c = cmp_lifted(kind, a.first, b.first); c != 0) return c < 0;
    return a.second < b.second;
  };
  std::set<std::pair<LiftedValue<K>, Vertex>, decltype(less)> queue(less);
  std::vector<char> done(n, 0);
  dist[g.source()] = lifted_zero(kind);
  queue.insert({*dist[g.source()], g.source()});
  while (!queue.empty()) {
    auto [d, u] = *queue.begin();
    queue.erase(queue.begin());
    if (done[u]) continue;
    done[u] = 1;
    ex.charge(1);
    for (const auto& [v, info] : g.out(u)) {
      ex.charge(1);
      // A composed edge (no single atom) is already a full path weight and
      // only ever hangs off the source, where d == 0.
      LiftedValue<K> nd =
          info.atom ? add_one_atom(kind, d, LiftedAtom<K>{*info.atom, info.atom_delta})
                    : info.w;
      if (!dist[v] || cmp_lifted(kind, nd, *dist[v]) < 0) {
        if (dist[v]) queue.erase({*dist[v], v});
        dist[v] = nd;
        queue.insert({nd, v});
      }
    }
  }
  return dist;
}

// Parallel tight-edge pick over lifted distances: for each reached vertex the
// smallest in-tail u with dist(u) + w(uv) == dist(v). Lifted weights are
// strictly positive, so the picked edges form a tree.
template <class K>
std::vector<Vertex> tight_parents(Exec& ex, K& kind, const Digraph<K>& g,
                                  const std::vector<std::optional<LiftedValue<K>>>& dist) {
  const Vertex n = g.vertex_bound();
  std::vector<Vertex> parent(n, -1);
  std::vector<Vertex> targets;
  for (Vertex v = 0; v < n; ++v)
    if (v != g.source() && dist[v] && g.alive(v)) targets.push_back(v);
  ex.par_for(targets.size(), [&](std::size_t i) {
    const Vertex v = targets[i];
    for (Vertex u : g.in_tails(v)) {
      ex.charge(1);
      if (!dist[u]) continue;
      const auto& info = g.out(u).at(v);
      LiftedValue<K> cand =
          info.atom ? add_one_atom(kind, *dist[u], LiftedAtom<K>{*info.atom, info.atom_delta})
                    : info.w;
      if (cmp_lifted(kind, cand, *dist[v]) == 0) {
        parent[v] = u;
        break;  // in_tails is ordered, first hit is the smallest tail
      }
    }
    check(parent[v] >= 0, "tight_parents: no tight in-edge");
  });
  return parent;
}

template <class K>
SsspResult<K> finish_result(Exec& ex, K& kind, const Digraph<K>& input,
                            const std::vector<std::optional<typename K::Payload>>& dist) {
  SsspResult<K> res;
  res.dist = dist;
  auto lifted = reference_sssp(ex, kind, input);
  for (Vertex v = 0; v < input.vertex_bound(); ++v) {
    check(lifted[v].has_value() == dist[v].has_value(), "sssp: reachability divergence");
    if (dist[v]) check(kind.cmp(lifted[v]->scalar, *dist[v]) == 0, "sssp: payload divergence");
  }
  res.parent = tight_parents(ex, kind, input, lifted);
  return res;
}

// The basic work-depth tradeoff: repeat (a) find the t nearest remaining
// vertices on the top-t-filtered graph, (b) record their distances, (c)
// contract them into the source. Exactly ceil((n-1)/t) discovery steps on a
// fully reachable graph.
template <class K>
std::pair<std::vector<std::optional<LiftedValue<K>>>, int> basic_sssp_core(
    Exec& ex, K& kind, const Digraph<K>& input, int t, SsspObserver<K>* observer = nullptr) {
  if (t < 1) throw InvalidParameter("basic_sssp: t must be positive");
  Digraph<K> g = input;
  const Vertex s = g.source();
  std::vector<std::optional<LiftedValue<K>>> dist(g.vertex_bound());
  dist[s] = lifted_zero(kind);
  int steps = 0;
  while (g.n_alive() > 1) {
    auto found = t_nearest_from(ex, kind, g, s, t);
    if (found.empty()) break;
    if (observer) observer->on_discovery_step(g, found);
    ++steps;
    std::vector<Vertex> xs;
    std::map<Vertex, LiftedValue<K>> dmap;
    for (auto& [v, d] : found) {
      xs.push_back(v);
      dmap.emplace(v, d);
      dist[v] = d;  // contraction preserves lifted distances from the source
    }
    g.contract_into_source(ex, xs, dmap);
  }
  return {std::move(dist), steps};
}

template <class K>
SsspResult<K> basic_sssp(Exec& ex, K& kind, const Digraph<K>& input, int t,
                         SsspObserver<K>* observer = nullptr) {
  auto [lifted, steps] = basic_sssp_core(ex, kind, input, t, observer);
  std::vector<std::optional<typename K::Payload>> dist(input.vertex_bound());
  for (Vertex v = 0; v < input.vertex_bound(); ++v)
    if (lifted[v]) dist[v] = lifted[v]->scalar;
  SsspResult<K> res = finish_result(ex, kind, input, dist);
  res.steps = steps;
  res.t = t;
  res.counters = ex.counters();
  return res;
}

}  // namespace parsp
