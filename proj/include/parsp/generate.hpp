#pragma once

#include <cstdint>
#include <string>

#include "parsp/graph_io.hpp"

namespace parsp {

// splitmix64; fixed here so generated fixtures are stable across platforms
// (std::uniform_int_distribution is implementation-defined).
struct SplitMix64 {
  std::uint64_t state;
  explicit SplitMix64(std::uint64_t seed) : state(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d49bb133111ebULL;
    return z ^ (z >> 31);
  }
  std::uint64_t below(std::uint64_t bound) { return bound ? next() % bound : 0; }
};

enum class GraphFamily { kRandomGnm, kGrid, kLayered, kStar, kComplete };

GraphFamily family_from_name(const std::string& name);

// Deterministic generator: the same (family, n, m, seed, kind) always yields
// the same graph. Real weights are numerator in [0,64] over denominator in
// {1,2,4,8}; integer atoms are labels below max(m,1) (multiset kind) or
// exponents in [0,64] (power-of-two kind). The source is vertex 0.
enum class AtomStyle { kReal, kLabel, kExponent };
RawGraph generate_graph(GraphFamily family, Vertex n, std::int64_t m, std::uint64_t seed,
                        AtomStyle style = AtomStyle::kReal);

}  // namespace parsp
