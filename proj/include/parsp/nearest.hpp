#pragma once

#include <algorithm>
#include <utility>
#include <vector>

#include "parsp/digraph.hpp"
#include "parsp/exec.hpp"
#include "parsp/weights.hpp"

namespace parsp {

// One table entry: vertex, lightest hop-bounded lifted distance, the argmin
// intermediate of the round that produced it (for path reconstruction), and,
// for kinds that need decomposed sums, the list of edge atoms whose batch-sum
// with a base weight realizes the distance. Entries whose path begins with a
// composed source edge carry atoms_valid = false; such entries only ever act
// as the base of an addition, never as the atom list.
template <class K>
struct NearEntry {
  Vertex v = -1;
  LiftedValue<K> d;
  Vertex via = -1;
  std::vector<LiftedAtom<K>> atoms;
  bool atoms_valid = true;
};

template <class K>
struct NearTable {
  int t = 0;
  int rounds = 0;
  // row[u]: up to t+1 entries including (u, 0), sorted by distance.
  std::vector<std::vector<NearEntry<K>>> row;
};

namespace detail {

template <class K>
struct MergeCand {
  Vertex y = -1;
  Vertex via = -1;
  std::int32_t plan = -1;  // index into the round's batch when not prebuilt
  LiftedValue<K> d;
  std::int32_t leg1 = -1, leg2 = -1;
};

// Keeps, per candidate vertex, the minimum distance with a deterministic
// tie-break (argmin intermediate id), then the t+1 smallest overall.
template <class K>
std::vector<NearEntry<K>> keep_smallest(const K& kind, std::vector<NearEntry<K>> cands,
                                        int t) {
  std::sort(cands.begin(), cands.end(), [&](const NearEntry<K>& a, const NearEntry<K>& b) {
    if (a.v != b.v) return a.v < b.v;
    if (int c = cmp_lifted(kind, a.d, b.d); c != 0) return c < 0;
    return a.via < b.via;
  });
  std::vector<NearEntry<K>> uniq;
  for (auto& c : cands) {
    if (uniq.empty() || uniq.back().v != c.v) uniq.push_back(std::move(c));
  }
  std::stable_sort(uniq.begin(), uniq.end(), [&](const NearEntry<K>& a, const NearEntry<K>& b) {
    return cmp_lifted(kind, a.d, b.d) < 0;
  });
  if (static_cast<int>(uniq.size()) > t + 1) uniq.resize(t + 1);
  return uniq;
}

}  // namespace detail

// The t-nearest-vertices kernel: doubling rounds over hop-bounded tables.
// Round i turns lightest <=2^i-hop distances into <=2^(i+1)-hop ones by
// merging each row with the rows of its members and keeping the t+1 smallest
// candidates; after ceil(log2 n) rounds the hop bound covers every path.
// The depth charge per round is a function of the graph size only:
//   depth = (1 + L) + rounds * (1 + 2L),  L = ceil_log2(n_alive + 1),
// matching the kernel's polylog depth independent of t (tree-backed kinds add
// their batched-build surcharge).
template <class K>
NearTable<K> all_t_nearest(Exec& ex, K& kind, const Digraph<K>& g, int t) {
  if (t < 1) throw InvalidParameter("all_t_nearest: t must be positive");
  const Vertex n = g.vertex_bound();
  const std::uint64_t alive = g.n_alive();
  const std::uint64_t surcharge = ceil_log2(alive + 1);
  const int rounds = static_cast<int>(ceil_log2(std::max<std::uint64_t>(alive, 1)));

  NearTable<K> table;
  table.t = t;
  table.rounds = rounds;
  table.row.resize(n);

  std::vector<Vertex> verts = g.vertices();

  // Base case: self plus the t lightest out-edges.
  ex.par_for(verts.size(), [&](std::size_t vi) {
    const Vertex u = verts[vi];
    auto& row = table.row[u];
    NearEntry<K> self;
    self.v = u;
    self.d = lifted_zero(kind);
    self.via = u;
    row.push_back(std::move(self));
    auto top = g.top_t_edges(u, t);
    ex.charge(top.size());
    for (auto& [head, info] : top) {
      NearEntry<K> e;
      e.v = head;
      e.d = info.w;
      e.via = u;
      if constexpr (K::kTracksAtoms) {
        if (info.atom.has_value()) {
          e.atoms.push_back(LiftedAtom<K>{*info.atom, info.atom_delta});
        } else {
          e.atoms_valid = false;
        }
      }
      row.push_back(std::move(e));
    }
  });
  ex.charge_depth(surcharge);

  for (int round = 0; round < rounds; ++round) {
    std::vector<std::vector<detail::MergeCand<K>>> cand(n);
    std::vector<AddPlan<K>> plans;  // only for kinds without inline adds

    if constexpr (K::kInlineAdd) {
      std::vector<std::vector<NearEntry<K>>> next(n);
      ex.par_for(verts.size(), [&](std::size_t vi) {
        const Vertex u = verts[vi];
        const auto& row = table.row[u];
        std::vector<NearEntry<K>> cands;
        for (const auto& e1 : row) {
          const auto& row_v = table.row[e1.v];
          for (const auto& e2 : row_v) {
            if (e1.v == u) {
              cands.push_back(e2);
            } else if (e2.v == e1.v) {
              cands.push_back(e1);
            } else {
              NearEntry<K> e;
              e.v = e2.v;
              e.via = e1.v;
              e.d = LiftedValue<K>{kind.combine(e1.d.scalar, e2.d.scalar),
                                   e1.d.hops + e2.d.hops, e1.d.delta + e2.d.delta};
              cands.push_back(std::move(e));
            }
          }
        }
        const std::uint64_t c = cands.size();
        ex.charge(c + c * ceil_log2(c + 1));
        next[u] = detail::keep_smallest(kind, std::move(cands), t);
      });
      for (const Vertex u : verts) table.row[u] = std::move(next[u]);
      ex.charge_depth(2 * surcharge);
    } else {
      // Stage A: plan the sums (base = first leg's weight, atoms = second
      // leg's decomposition) so identifiers materialize at the barrier.
      for (const Vertex u : verts) {
        const auto& row = table.row[u];
        auto& cu = cand[u];
        for (std::int32_t i1 = 0; i1 < static_cast<std::int32_t>(row.size()); ++i1) {
          const auto& e1 = row[i1];
          const auto& row_v = table.row[e1.v];
          for (std::int32_t i2 = 0; i2 < static_cast<std::int32_t>(row_v.size()); ++i2) {
            const auto& e2 = row_v[i2];
            detail::MergeCand<K> c;
            c.leg1 = i1;
            c.leg2 = i2;
            if (e1.v == u) {
              c.y = e2.v;
              c.via = e2.via;
              c.d = e2.d;
            } else if (e2.v == e1.v) {
              c.y = e1.v;
              c.via = e1.via;
              c.d = e1.d;
            } else {
              check(e2.atoms_valid, "nearest: second leg lacks a decomposition");
              check(static_cast<int>(e2.atoms.size()) <= t,
                    "nearest: decomposition exceeds t atoms");
              c.y = e2.v;
              c.via = e1.v;
              c.plan = static_cast<std::int32_t>(plans.size());
              plans.push_back(AddPlan<K>{e1.d, e2.atoms});
            }
            cu.push_back(std::move(c));
          }
        }
        ex.charge(cu.size());
      }
      ex.charge_depth(1);
      std::vector<LiftedValue<K>> vals = add_edge_batches(ex, kind, plans);

      // Stage B: group by candidate vertex and keep the t+1 smallest.
      std::vector<std::vector<NearEntry<K>>> next(n);
      ex.par_for(verts.size(), [&](std::size_t vi) {
        const Vertex u = verts[vi];
        const auto& row = table.row[u];
        std::vector<NearEntry<K>> cands;
        cands.reserve(cand[u].size());
        for (const auto& c : cand[u]) {
          NearEntry<K> e;
          e.v = c.y;
          e.via = c.via;
          const auto& e1 = row[c.leg1];
          const auto& e2 = table.row[e1.v][c.leg2];
          if (c.plan >= 0) {
            e.d = vals[c.plan];
            e.atoms_valid = e1.atoms_valid;
            if (e.atoms_valid) {
              e.atoms = e1.atoms;
              e.atoms.insert(e.atoms.end(), e2.atoms.begin(), e2.atoms.end());
            }
          } else {
            // prebuilt candidate: one leg is a zero path, copy the other
            e = e1.v == u ? e2 : e1;
          }
          cands.push_back(std::move(e));
        }
        const std::uint64_t cnum = cands.size();
        ex.charge(cnum * ceil_log2(cnum + 1));
        auto kept = detail::keep_smallest(kind, std::move(cands), t);
        for (const auto& e : kept) {
          if (e.atoms_valid) {
            check(static_cast<int>(e.atoms.size()) <= t,
                  "nearest: kept entry exceeds t atoms");
          }
        }
        next[u] = std::move(kept);
      });
      for (const Vertex u : verts) table.row[u] = std::move(next[u]);
      ex.charge_depth(2 * surcharge);
    }
  }
  return table;
}

// Near_t(s) with distances: the t closest vertices distinct from s (or all
// reachable when fewer), read from the full table.
template <class K>
std::vector<std::pair<Vertex, LiftedValue<K>>> t_nearest_from(Exec& ex, K& kind,
                                                              const Digraph<K>& g, Vertex s,
                                                              int t) {
  if (!g.alive(s)) throw UnknownVertex("t_nearest_from: unknown vertex");
  NearTable<K> table = all_t_nearest(ex, kind, g, t);
  std::vector<std::pair<Vertex, LiftedValue<K>>> out;
  for (const auto& e : table.row[s]) {
    if (e.v == s) continue;
    out.emplace_back(e.v, e.d);
  }
  return out;
}

}  // namespace parsp
