#include "parsp/graph_io.hpp"

#include <fstream>
#include <sstream>

#include "parsp/errors.hpp"

namespace parsp {

RawGraph read_graph(std::istream& in, bool integer_atoms) {
  RawGraph g;
  g.integer_atoms = integer_atoms;
  std::size_t m = 0;
  if (!(in >> g.n >> m >> g.source)) throw InputError("graph header: expected 'n m s'");
  if (g.n <= 0 || g.source < 0 || g.source >= g.n)
    throw InputError("graph header: bad vertex count or source");
  for (std::size_t i = 0; i < m; ++i) {
    Vertex tail, head;
    if (integer_atoms) {
      std::int64_t atom;
      if (!(in >> tail >> head >> atom)) throw InputError("graph edge: expected 'tail head atom'");
      g.int_edges.push_back(RawGraph::IntEdge{tail, head, atom});
    } else {
      std::int64_t num, den;
      if (!(in >> tail >> head >> num >> den))
        throw InputError("graph edge: expected 'tail head num den'");
      if (den <= 0) throw InputError("graph edge: denominator must be positive");
      g.real_edges.push_back(RawGraph::RealEdge{tail, head, make_rational(num, den)});
    }
  }
  return g;
}

RawGraph read_graph_file(const std::string& path, bool integer_atoms) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open graph file: " + path);
  return read_graph(in, integer_atoms);
}

void write_graph(std::ostream& out, const RawGraph& g) {
  out << g.n << ' ' << g.edge_count() << ' ' << g.source << '\n';
  if (g.integer_atoms) {
    for (const auto& e : g.int_edges) out << e.tail << ' ' << e.head << ' ' << e.atom << '\n';
  } else {
    for (const auto& e : g.real_edges)
      out << e.tail << ' ' << e.head << ' ' << numerator(e.w) << ' ' << denominator(e.w)
          << '\n';
  }
}

void write_graph_file(const std::string& path, const RawGraph& g) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot open output file: " + path);
  write_graph(out, g);
}

}  // namespace parsp
