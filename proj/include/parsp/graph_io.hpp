#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "parsp/rational.hpp"
#include "parsp/weights.hpp"

namespace parsp {

// Line-oriented text graph: header "n m s", then one edge per line. Real
// weights use "tail head numerator denominator"; the exotic kinds use
// "tail head atom" with a single integer atom (a label for the multiset kind,
// an exponent for the power-of-two kind).
struct RawGraph {
  Vertex n = 0;
  Vertex source = 0;
  bool integer_atoms = false;
  struct RealEdge {
    Vertex tail, head;
    Rational w;
  };
  struct IntEdge {
    Vertex tail, head;
    std::int64_t atom;
  };
  std::vector<RealEdge> real_edges;
  std::vector<IntEdge> int_edges;

  std::size_t edge_count() const {
    return integer_atoms ? int_edges.size() : real_edges.size();
  }
};

RawGraph read_graph(std::istream& in, bool integer_atoms);
RawGraph read_graph_file(const std::string& path, bool integer_atoms);
void write_graph(std::ostream& out, const RawGraph& g);
void write_graph_file(const std::string& path, const RawGraph& g);

}  // namespace parsp
