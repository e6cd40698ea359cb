#pragma once

#include <vector>

#include "oracles.hpp"
#include "parsp/digraph.hpp"
#include "parsp/generate.hpp"
#include "parsp/graph_io.hpp"

namespace testutil {

using parsp::Digraph;
using parsp::RawGraph;
using parsp::RealKind;
using parsp::Vertex;

inline Digraph<RealKind> build_real(RealKind& kind, const RawGraph& g) {
  std::vector<Digraph<RealKind>::RawEdge> raw;
  raw.reserve(g.real_edges.size());
  for (const auto& e : g.real_edges)
    raw.push_back(Digraph<RealKind>::RawEdge{e.tail, e.head, e.w});
  return Digraph<RealKind>(kind, g.n, g.source, raw);
}

// s=0 -> a=1 (1), s -> b=2 (4), a -> b (2), b -> c=3 (1)
inline RawGraph gstar() {
  RawGraph g;
  g.n = 4;
  g.source = 0;
  g.real_edges = {{0, 1, parsp::Rational(1)},
                  {0, 2, parsp::Rational(4)},
                  {1, 2, parsp::Rational(2)},
                  {2, 3, parsp::Rational(1)}};
  return g;
}

inline std::vector<oracle::Edge> scalar_edges(const RawGraph& g) {
  std::vector<oracle::Edge> out;
  for (const auto& e : g.real_edges) out.push_back({e.tail, e.head, e.w});
  return out;
}

inline std::vector<oracle::LEdge> lifted_edges(const RawGraph& g) {
  std::vector<oracle::LEdge> out;
  for (const auto& e : g.real_edges) {
    if (e.tail == e.head) continue;
    out.push_back({e.tail, e.head, parsp::lift(e.tail, e.head, e.w)});
  }
  return out;
}

template <class K>
std::vector<oracle::LEdge> exported_lifted(const Digraph<K>& g) {
  std::vector<oracle::LEdge> out;
  for (const auto& [u, v, w] : g.export_edges()) out.push_back({u, v, w});
  return out;
}

inline RawGraph random_graph(std::uint64_t seed, Vertex max_n, double density_scale = 3.0) {
  parsp::SplitMix64 rng(seed);
  Vertex n = 2 + static_cast<Vertex>(rng.below(max_n - 1));
  std::int64_t cap = static_cast<std::int64_t>(n) * (n - 1);
  std::int64_t m = std::min<std::int64_t>(
      cap, static_cast<std::int64_t>(density_scale * n * (1 + rng.below(3))) / 2);
  return parsp::generate_graph(parsp::GraphFamily::kRandomGnm, n, m, seed);
}

}  // namespace testutil
