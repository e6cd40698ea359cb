#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <utility>
#include <vector>

#include "parsp/exec.hpp"
#include "parsp/weights.hpp"

namespace parsp {

template <class K>
struct EdgeInfo {
  LiftedValue<K> w;
  // Present when the weight is a single input atom; contraction composes
  // weights and clears it. Only the source ever carries composed edges.
  std::optional<typename K::Atom> atom;
  std::int64_t atom_delta = 0;
  std::int32_t orig_id = -1;
};

template <class K>
struct ContractionRecord {
  std::vector<Vertex> contracted;
  std::size_t edges_rewritten = 0;
  std::size_t edges_min_merged = 0;
};

struct SplitMapping {
  std::vector<Vertex> rep;     // original vertex -> representative split vertex
  std::vector<Vertex> origin;  // split vertex -> original vertex
};

// Weighted digraph with ordered out-adjacency kept in two synchronized views:
// keyed by head (contraction merges by head) and keyed by weight (discovery
// reads top-t prefixes). The source never has incoming edges; self-loops and
// parallel edges are dropped/min-merged on construction. Vertices are removed
// only by contraction into the source.
template <class K>
class Digraph {
 public:
  struct RawEdge {
    Vertex tail = 0;
    Vertex head = 0;
    typename K::Atom w{};
  };

  Digraph(K& kind, Vertex n, Vertex source, std::span<const RawEdge> raw)
      : Digraph(kind, n, source) {
    for (std::size_t i = 0; i < raw.size(); ++i) {
      const auto& e = raw[i];
      if (e.tail < 0 || e.tail >= n || e.head < 0 || e.head >= n)
        throw InputError("edge endpoint out of range");
      kind.validate_atom(e.w);
      if (e.tail == e.head) continue;   // self-loop: never on a shortest path
      if (e.head == source) continue;   // wlog: source has no incoming edges
      EdgeInfo<K> info;
      info.atom = e.w;
      info.atom_delta = static_cast<std::int64_t>(e.head) - e.tail;
      info.orig_id = static_cast<std::int32_t>(i);
      typename K::Atom atom = e.w;
      info.w = LiftedValue<K>{kind.add(kind.zero(), std::span<const typename K::Atom>(&atom, 1)),
                              1, info.atom_delta};
      insert_or_min(e.tail, e.head, std::move(info));
    }
    rewrites_.assign(raw.size(), 0);
  }

  // Assembles a graph from prebuilt edges (alive-edge views, candidate
  // subgraphs); weights are adopted as-is and `alive` may pre-restrict V.
  static Digraph from_edges(K& kind, Vertex n, Vertex source,
                            std::span<const std::tuple<Vertex, Vertex, EdgeInfo<K>>> edges,
                            const std::vector<char>* alive = nullptr) {
    Digraph g(kind, n, source);
    if (alive) {
      g.alive_ = *alive;
      g.alive_count_ = static_cast<Vertex>(std::count(alive->begin(), alive->end(), 1));
      check(source < n && (*alive)[source], "from_edges: dead source");
    }
    for (const auto& [tail, head, info] : edges) {
      if (tail == head) continue;
      if (head == source) continue;
      check(g.alive_[tail] && g.alive_[head], "from_edges: dead endpoint");
      EdgeInfo<K> copy = info;
      g.insert_or_min(tail, head, std::move(copy));
    }
    return g;
  }

  K& kind() const { return *kind_; }
  Vertex vertex_bound() const { return n_; }  // ids live in [0, vertex_bound)
  Vertex source() const { return source_; }
  Vertex n_alive() const { return alive_count_; }
  std::size_t edge_count() const { return m_; }
  bool alive(Vertex v) const { return v >= 0 && v < n_ && alive_[v]; }

  std::vector<Vertex> vertices() const {
    std::vector<Vertex> out;
    out.reserve(alive_count_);
    for (Vertex v = 0; v < n_; ++v)
      if (alive_[v]) out.push_back(v);
    return out;
  }

  const std::map<Vertex, EdgeInfo<K>>& out(Vertex v) const { return out_[v]; }
  const std::map<LiftedValue<K>, Vertex, LiftedLess<K>>& out_by_weight(Vertex v) const {
    return out_by_w_[v];
  }
  const std::set<Vertex>& in_tails(Vertex v) const { return in_[v]; }

  Vertex outdeg(Vertex v) const { return static_cast<Vertex>(out_[v].size()); }
  Vertex indeg(Vertex v) const { return static_cast<Vertex>(in_[v].size()); }

  // The min(t, outdeg) lightest out-edges; total order on weights makes the
  // prefix unambiguous.
  std::vector<std::pair<Vertex, EdgeInfo<K>>> top_t_edges(Vertex v, Vertex t) const {
    if (!alive(v)) throw UnknownVertex("top_t_edges: unknown vertex");
    std::vector<std::pair<Vertex, EdgeInfo<K>>> out;
    if (t <= 0) return out;
    out.reserve(std::min<std::size_t>(out_by_w_[v].size(), static_cast<std::size_t>(t)));
    for (const auto& [w, head] : out_by_w_[v]) {
      out.emplace_back(head, out_[v].at(head));
      if (static_cast<Vertex>(out.size()) == t) break;
    }
    return out;
  }

  // Contraction of X into the source: edges inside V \ X survive, each edge
  // xv with x in X is rewritten to the source with weight dist(s,x) + w(xv),
  // and parallel edges keep the minimum. Every input edge is rewritten at
  // most once over a whole run (its tail is contracted at most once).
  ContractionRecord<K> contract_into_source(
      Exec& ex, std::span<const Vertex> x_set,
      const std::map<Vertex, LiftedValue<K>>& dists) {
    ContractionRecord<K> rec;
    if (x_set.empty()) return rec;
    std::vector<char> in_x(n_, 0);
    for (Vertex x : x_set) {
      if (x == source_) throw InvalidContraction("contract: X contains the source");
      if (!alive(x)) throw InvalidContraction("contract: X contains a removed vertex");
      in_x[x] = 1;
    }
    rec.contracted.assign(x_set.begin(), x_set.end());
    std::sort(rec.contracted.begin(), rec.contracted.end());

    struct Cand {
      Vertex head;
      std::int32_t orig_id;
    };
    std::vector<Cand> cands;
    std::vector<AddPlan<K>> plans;
    std::uint64_t touched = 0;
    for (Vertex x : rec.contracted) {
      auto it = dists.find(x);
      if (it == dists.end()) throw MissingDistance("contract: no distance for vertex");
      for (const auto& [head, info] : out_[x]) {
        ++touched;
        if (head == source_ || in_x[head]) continue;
        check(info.atom.has_value(), "contract: composed edge outside the source");
        if (info.orig_id >= 0 &&
            static_cast<std::size_t>(info.orig_id) < rewrites_.size()) {
          check(++rewrites_[info.orig_id] <= 1, "contract: edge rewritten twice");
        }
        ++rec.edges_rewritten;
        cands.push_back(Cand{head, info.orig_id});
        AddPlan<K> plan;
        plan.base = it->second;
        plan.atoms.push_back(LiftedAtom<K>{*info.atom, info.atom_delta});
        plans.push_back(std::move(plan));
      }
    }
    std::vector<LiftedValue<K>> vals = add_edge_batches(ex, *kind_, plans);

    // Remove X with all incident edges.
    std::uint64_t removed = 0;
    for (Vertex x : rec.contracted) {
      for (const auto& [head, info] : out_[x]) {
        in_[head].erase(x);
        ++removed;
      }
      out_[x].clear();
      out_by_w_[x].clear();
      for (Vertex u : in_[x]) {
        if (in_x[u]) continue;
        auto it = out_[u].find(x);
        if (it != out_[u].end()) {
          out_by_w_[u].erase(it->second.w);
          out_[u].erase(it);
          ++removed;
        }
      }
      in_[x].clear();
      alive_[x] = 0;
      --alive_count_;
    }

    // Min-merge candidates into the source adjacency, grouped by head.
    std::vector<std::size_t> order(cands.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return cands[a].head < cands[b].head;
    });
    std::uint64_t inserted = 0;
    for (std::size_t i = 0; i < order.size();) {
      std::size_t j = i;
      const Vertex head = cands[order[i]].head;
      std::size_t best = order[i];
      for (; j < order.size() && cands[order[j]].head == head; ++j) {
        ex.charge(1);
        if (cmp_lifted(*kind_, vals[order[j]], vals[best]) < 0) best = order[j];
      }
      rec.edges_min_merged += (j - i) - 1;
      EdgeInfo<K> info;
      info.w = vals[best];
      info.orig_id = cands[best].orig_id;
      auto it = out_[source_].find(head);
      if (it == out_[source_].end()) {
        insert_edge(source_, head, std::move(info));
        ++inserted;
      } else if (cmp_lifted(*kind_, info.w, it->second.w) < 0) {
        out_by_w_[source_].erase(it->second.w);
        it->second = std::move(info);
        out_by_w_[source_].emplace(it->second.w, head);
        ++rec.edges_min_merged;
        ++inserted;
      } else {
        ++rec.edges_min_merged;
      }
      i = j;
    }
    recount_edges();
    ex.charge_batch_op(touched + removed + inserted, std::max<std::uint64_t>(m_, 1));
    return rec;
  }

  // Per-input-edge rewrite counters (each must stay <= 1 across a run).
  const std::vector<std::uint8_t>& rewrite_counts() const { return rewrites_; }

  std::vector<std::tuple<Vertex, Vertex, LiftedValue<K>>> export_edges() const {
    std::vector<std::tuple<Vertex, Vertex, LiftedValue<K>>> out;
    out.reserve(m_);
    for (Vertex v = 0; v < n_; ++v)
      for (const auto& [head, info] : out_[v]) out.emplace_back(v, head, info.w);
    return out;
  }

  // Both adjacency views must always describe the same edge set.
  void validate() const {
    std::size_t m = 0;
    for (Vertex v = 0; v < n_; ++v) {
      check(out_[v].size() == out_by_w_[v].size(), "digraph: view size mismatch");
      for (const auto& [w, head] : out_by_w_[v]) {
        auto it = out_[v].find(head);
        check(it != out_[v].end(), "digraph: weight view has unknown head");
        check(cmp_lifted(*kind_, it->second.w, w) == 0, "digraph: stale weight key");
        check(in_[head].count(v) == 1, "digraph: missing in-mirror");
      }
      m += out_[v].size();
    }
    check(m == m_, "digraph: edge count drift");
    check(in_[source_].empty(), "digraph: source acquired in-edges");
  }

 private:
  Digraph(K& kind, Vertex n, Vertex source) : kind_(&kind), n_(n), source_(source) {
    if (n <= 0) throw InputError("digraph: need at least one vertex");
    if (source < 0 || source >= n) throw InputError("digraph: source out of range");
    alive_.assign(n, 1);
    alive_count_ = n;
    out_.resize(n);
    out_by_w_.assign(n, std::map<LiftedValue<K>, Vertex, LiftedLess<K>>(LiftedLess<K>{&kind}));
    in_.resize(n);
  }

  void insert_edge(Vertex tail, Vertex head, EdgeInfo<K> info) {
    auto [it, fresh] = out_[tail].emplace(head, std::move(info));
    check(fresh, "digraph: duplicate head in insert");
    out_by_w_[tail].emplace(it->second.w, head);
    in_[head].insert(tail);
    ++m_;
  }

  void insert_or_min(Vertex tail, Vertex head, EdgeInfo<K> info) {
    auto it = out_[tail].find(head);
    if (it == out_[tail].end()) {
      insert_edge(tail, head, std::move(info));
      return;
    }
    if (cmp_lifted(*kind_, info.w, it->second.w) < 0) {
      out_by_w_[tail].erase(it->second.w);
      it->second = std::move(info);
      out_by_w_[tail].emplace(it->second.w, head);
    }
  }

  void recount_edges() {
    m_ = 0;
    for (Vertex v = 0; v < n_; ++v) m_ += out_[v].size();
  }

  K* kind_;
  Vertex n_ = 0;
  Vertex source_ = 0;
  std::vector<char> alive_;
  Vertex alive_count_ = 0;
  std::vector<std::map<Vertex, EdgeInfo<K>>> out_;
  std::vector<std::map<LiftedValue<K>, Vertex, LiftedLess<K>>> out_by_w_;
  std::vector<std::set<Vertex>> in_;
  std::size_t m_ = 0;
  std::vector<std::uint8_t> rewrites_;
};

// Degree reduction by vertex splitting. A vertex that violates the in/out
// bound of 2 becomes an in-chain (one node per in-edge) feeding an out-chain
// (one node per out-edge); chain edges carry the zero atom, which lifts to a
// strictly positive weight, so both simplifying assumptions survive. Vertices
// already within bounds stay single nodes, and distances from the split source
// to each representative equal the original distances.
template <class K>
std::pair<Digraph<K>, SplitMapping> split_constant_degree(Exec& ex, K& kind,
                                                          const Digraph<K>& g) {
  const Vertex n = g.vertex_bound();
  SplitMapping map;
  map.rep.assign(n, -1);
  std::vector<Vertex> in_base(n, -1), out_base(n, -1);
  Vertex next = 0;
  auto take = [&](Vertex count) {
    Vertex at = next;
    next += count;
    return at;
  };
  for (Vertex v = 0; v < n; ++v) {
    if (!g.alive(v)) continue;
    const Vertex a = g.indeg(v);
    const Vertex b = g.outdeg(v);
    const bool wide = a > 2 || b > 2;
    if (!wide) {
      map.rep[v] = take(1);
      in_base[v] = map.rep[v];
      out_base[v] = map.rep[v];
    } else {
      const Vertex in_len = a > 2 ? a : 0;
      const Vertex out_len = b > 2 ? b : 0;
      const Vertex at_in = in_len > 0 ? take(in_len) : -1;
      const Vertex at_out = out_len > 0 ? take(out_len) : -1;
      if (in_len > 0) {
        in_base[v] = at_in;
        map.rep[v] = at_in + in_len - 1;  // every entering path reaches the chain end
      }
      if (out_len > 0) {
        out_base[v] = at_out;
        if (map.rep[v] < 0) map.rep[v] = at_out;
      }
      if (in_len == 0) in_base[v] = out_base[v];   // entries join the out-chain head
      if (out_len == 0) out_base[v] = map.rep[v];  // exits leave the in-chain end
    }
  }
  map.origin.assign(next, -1);
  for (Vertex v = 0; v < n; ++v) {
    if (!g.alive(v)) continue;
    const Vertex a = g.indeg(v), b = g.outdeg(v);
    if (a <= 2 && b <= 2) {
      map.origin[map.rep[v]] = v;
    } else {
      if (a > 2)
        for (Vertex j = 0; j < a; ++j) map.origin[in_base[v] + j] = v;
      if (b > 2)
        for (Vertex j = 0; j < b; ++j) map.origin[out_base[v] + j] = v;
    }
  }

  using Raw = typename Digraph<K>::RawEdge;
  std::vector<Raw> raw;
  const typename K::Atom zero_atom = kind.zero_atom();
  // Internal chains.
  for (Vertex v = 0; v < n; ++v) {
    if (!g.alive(v)) continue;
    const Vertex a = g.indeg(v), b = g.outdeg(v);
    if (a > 2)
      for (Vertex j = 0; j + 1 < a; ++j)
        raw.push_back(Raw{static_cast<Vertex>(in_base[v] + j),
                          static_cast<Vertex>(in_base[v] + j + 1), zero_atom});
    if (b > 2)
      for (Vertex j = 0; j + 1 < b; ++j)
        raw.push_back(Raw{static_cast<Vertex>(out_base[v] + j),
                          static_cast<Vertex>(out_base[v] + j + 1), zero_atom});
    if (a > 2 && b > 2)
      raw.push_back(Raw{map.rep[v], out_base[v], zero_atom});
  }
  // Original edges: the i-th out-edge of u (by head) leaves the i-th out-chain
  // node; the j-th in-edge of v (by tail) enters the j-th in-chain node.
  std::vector<Vertex> in_seen(n, 0);
  for (Vertex u = 0; u < n; ++u) {
    if (!g.alive(u)) continue;
    Vertex i = 0;
    for (const auto& [head, info] : g.out(u)) {
      const Vertex tail_node =
          g.outdeg(u) > 2 ? static_cast<Vertex>(out_base[u] + i) : out_base[u];
      const Vertex head_node = g.indeg(head) > 2
                                   ? static_cast<Vertex>(in_base[head] + in_seen[head])
                                   : in_base[head];
      check(info.atom.has_value(), "split: composed edge weight");
      raw.push_back(Raw{tail_node, head_node, *info.atom});
      ++in_seen[head];
      ++i;
    }
  }
  ex.charge_batch_op(raw.size(), std::max<std::uint64_t>(raw.size(), 1));
  Digraph<K> h(kind, std::max<Vertex>(next, 1), map.rep[g.source()],
               std::span<const Raw>(raw));
  return {std::move(h), std::move(map)};
}

}  // namespace parsp
