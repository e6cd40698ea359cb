#include "parsp/generate.hpp"

#include <algorithm>
#include <set>
#include <utility>

#include "parsp/errors.hpp"

namespace parsp {

namespace {

constexpr std::int64_t kDenChoices[] = {1, 2, 4, 8};

void push_edge(RawGraph& g, SplitMix64& rng, AtomStyle style, Vertex tail, Vertex head,
               std::int64_t label_bound) {
  switch (style) {
    case AtomStyle::kReal: {
      const std::int64_t num = static_cast<std::int64_t>(rng.below(65));
      const std::int64_t den = kDenChoices[rng.below(4)];
      g.real_edges.push_back(RawGraph::RealEdge{tail, head, make_rational(num, den)});
      break;
    }
    case AtomStyle::kLabel:
      g.int_edges.push_back(
          RawGraph::IntEdge{tail, head, static_cast<std::int64_t>(rng.below(label_bound))});
      break;
    case AtomStyle::kExponent:
      g.int_edges.push_back(
          RawGraph::IntEdge{tail, head, static_cast<std::int64_t>(rng.below(65))});
      break;
  }
}

}  // namespace

GraphFamily family_from_name(const std::string& name) {
  if (name == "random-gnm") return GraphFamily::kRandomGnm;
  if (name == "grid") return GraphFamily::kGrid;
  if (name == "layered") return GraphFamily::kLayered;
  if (name == "star") return GraphFamily::kStar;
  if (name == "complete") return GraphFamily::kComplete;
  throw GenerationError("unknown graph family: " + name);
}

RawGraph generate_graph(GraphFamily family, Vertex n, std::int64_t m, std::uint64_t seed,
                        AtomStyle style) {
  if (n < 1) throw GenerationError("generate: need n >= 1");
  RawGraph g;
  g.n = n;
  g.source = 0;
  g.integer_atoms = style != AtomStyle::kReal;
  SplitMix64 rng(seed * 0x9e3779b97f4a7c15ULL + 0x7f4a7c15ULL * (n + 1));

  std::vector<std::pair<Vertex, Vertex>> pairs;
  switch (family) {
    case GraphFamily::kRandomGnm: {
      const std::int64_t max_m = static_cast<std::int64_t>(n) * (n - 1);
      if (m < 0 || m > max_m) throw GenerationError("random-gnm: m out of range");
      std::set<std::pair<Vertex, Vertex>> used;
      while (static_cast<std::int64_t>(pairs.size()) < m) {
        Vertex u = static_cast<Vertex>(rng.below(n));
        Vertex v = static_cast<Vertex>(rng.below(n));
        if (u == v) continue;
        if (!used.insert({u, v}).second) continue;
        pairs.emplace_back(u, v);
      }
      break;
    }
    case GraphFamily::kGrid: {
      Vertex side = 1;
      while (side * side < n) ++side;
      auto id = [&](Vertex r, Vertex c) { return r * side + c; };
      for (Vertex r = 0; r < side; ++r)
        for (Vertex c = 0; c < side; ++c) {
          if (id(r, c) >= n) continue;
          if (c + 1 < side && id(r, c + 1) < n) pairs.emplace_back(id(r, c), id(r, c + 1));
          if (r + 1 < side && id(r + 1, c) < n) pairs.emplace_back(id(r, c), id(r + 1, c));
        }
      break;
    }
    case GraphFamily::kLayered: {
      Vertex width = 1;
      while (width * width < n) ++width;
      const auto layer_of = [&](Vertex v) { return v / width; };
      if (m < 0) m = 3 * n;
      std::set<std::pair<Vertex, Vertex>> used;
      std::int64_t attempts = 8 * m + 64;
      while (static_cast<std::int64_t>(pairs.size()) < m && attempts-- > 0) {
        Vertex u = static_cast<Vertex>(rng.below(n));
        if (layer_of(u) + 1 > (n - 1) / width) continue;
        Vertex lo = (layer_of(u) + 1) * width;
        if (lo >= n) continue;
        Vertex span = std::min<Vertex>(width, n - lo);
        Vertex v = lo + static_cast<Vertex>(rng.below(span));
        if (!used.insert({u, v}).second) continue;
        pairs.emplace_back(u, v);
      }
      break;
    }
    case GraphFamily::kStar: {
      for (Vertex v = 1; v < n; ++v) pairs.emplace_back(0, v);
      break;
    }
    case GraphFamily::kComplete: {
      for (Vertex u = 0; u < n; ++u)
        for (Vertex v = 0; v < n; ++v)
          if (u != v) pairs.emplace_back(u, v);
      break;
    }
  }

  const std::int64_t label_bound = std::max<std::int64_t>(1, static_cast<std::int64_t>(pairs.size()));
  for (const auto& [u, v] : pairs) push_edge(g, rng, style, u, v, label_bound);
  return g;
}

}  // namespace parsp
