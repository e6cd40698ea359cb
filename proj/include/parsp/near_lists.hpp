#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <span>
#include <utility>
#include <vector>

#include "parsp/digraph.hpp"
#include "parsp/exec.hpp"

namespace parsp {

// Near-lists for one preprocessing pass: NL(u) holds u plus at most t other
// vertices with distances, inverse lists say where each vertex appears, and
// the heavy set Z collects vertices whose appearance count reached p.
template <class K>
struct NearListTable {
  int t = 0;
  int p = 0;
  std::vector<std::vector<std::pair<Vertex, LiftedValue<K>>>> list;
  std::vector<std::vector<Vertex>> inverse;
  std::vector<int> appearances;  // includes the self entry
  std::vector<char> heavy;
  std::vector<Vertex> heavy_list;  // sorted

  bool is_heavy(Vertex v) const { return heavy[v]; }
};

// n synchronized truncated Dijkstra runs, one rooted at every vertex, each
// visiting at most t vertices. A run's queue holds candidates reachable from
// its near-list via one edge between light vertices; the key of a candidate
// is the minimum surviving contribution d_i + w(v_i y). After every iteration
// all runs synchronize: light vertices now appearing in >= p near-lists turn
// heavy, queues are purged of heavy candidates and of contributions whose
// tail turned heavy, and runs rooted at fresh heavy vertices terminate (their
// partial lists are kept). Runs rooted at z_init never start.
template <class K>
NearListTable<K> build_near_lists(Exec& ex, K& kind, const Digraph<K>& g, int t, int p,
                                  std::span<const Vertex> z_init) {
  if (t < 1) throw InvalidParameter("build_near_lists: t must be positive");
  if (p < 1) throw InvalidParameter("build_near_lists: p must be at least 1");
  const Vertex n = g.vertex_bound();
  const std::uint64_t L = ceil_log2(static_cast<std::uint64_t>(n) + 1);

  NearListTable<K> table;
  table.t = t;
  table.p = p;
  table.list.resize(n);
  table.inverse.resize(n);
  table.appearances.assign(n, 0);
  table.heavy.assign(n, 0);
  for (Vertex z : z_init) {
    check(g.alive(z), "build_near_lists: z_init vertex not in graph");
    table.heavy[z] = 1;
  }

  std::vector<Vertex> verts = g.vertices();
  for (Vertex u : verts) {
    table.list[u].emplace_back(u, lifted_zero(kind));
    table.inverse[u].push_back(u);
    table.appearances[u] = 1;
  }

  // Queue state. contribs[u][y]: tail -> value, so a tail turning heavy can
  // be deleted in a batch and the key is the remaining minimum.
  std::vector<std::map<Vertex, std::map<Vertex, LiftedValue<K>>>> queue(n);
  std::vector<std::set<Vertex>> cand_in(n);  // y -> runs whose queue holds y
  std::vector<char> terminated(n, 0);
  std::vector<std::set<Vertex>> nl_set(n);

  auto add_contribution = [&](Vertex u, Vertex y, Vertex tail, const LiftedValue<K>& val) {
    auto [it, fresh] = queue[u][y].emplace(tail, val);
    if (!fresh && cmp_lifted(kind, val, it->second) < 0) it->second = val;
    cand_in[y].insert(u);
  };

  std::uint64_t edits = 0;
  for (Vertex u : verts) {
    nl_set[u].insert(u);
    if (table.heavy[u]) {
      terminated[u] = 1;
      continue;
    }
    for (const auto& [y, info] : g.out(u)) {
      if (table.heavy[y]) continue;
      add_contribution(u, y, u, info.w);
      ++edits;
    }
  }
  ex.charge_batch_op(edits + 1, std::max<std::uint64_t>(g.edge_count(), 1));

  auto promote_heavy = [&](std::vector<Vertex>& fresh_heavy) {
    ex.charge(static_cast<std::uint64_t>(verts.size()));
    ex.charge_depth(1 + L);
    fresh_heavy.clear();
    for (Vertex v : verts) {
      if (!table.heavy[v] && table.appearances[v] >= p) fresh_heavy.push_back(v);
    }
    std::uint64_t removals = 0;
    for (Vertex z : fresh_heavy) {
      table.heavy[z] = 1;
      terminated[z] = 1;
      // z stops being a candidate
      for (Vertex u : cand_in[z]) {
        removals += queue[u][z].size();
        queue[u].erase(z);
      }
      cand_in[z].clear();
      // contributions with tail z die; they exist only in runs holding z
      for (Vertex u : table.inverse[z]) {
        if (u == z) continue;
        for (const auto& [y, info] : g.out(z)) {
          auto qy = queue[u].find(y);
          if (qy == queue[u].end()) continue;
          if (qy->second.erase(z)) {
            ++removals;
            if (qy->second.empty()) {
              queue[u].erase(qy);
              cand_in[y].erase(u);
            }
          }
        }
      }
    }
    if (removals) ex.charge_batch_op(removals, std::max<std::uint64_t>(g.edge_count(), 1));
  };

  // Initialization counts as iteration zero and is followed by a sync.
  std::vector<Vertex> fresh;
  promote_heavy(fresh);

  for (int iter = 1; iter <= t; ++iter) {
    // One synchronized iteration: every live run extracts its minimum-key
    // candidate. Keys are distinct per run (paths from one origin to distinct
    // endpoints differ), so the extraction is unambiguous.
    struct Pick {
      Vertex x = -1;
      LiftedValue<K> d;
    };
    std::vector<Pick> pick(n);
    ex.par_for(verts.size(), [&](std::size_t vi) {
      const Vertex u = verts[vi];
      if (terminated[u] || queue[u].empty()) return;
      bool have = false;
      Pick best;
      for (const auto& [y, contribs] : queue[u]) {
        ex.charge(contribs.size());
        auto it = contribs.begin();
        LiftedValue<K> key = it->second;
        for (++it; it != contribs.end(); ++it) {
          if (cmp_lifted(kind, it->second, key) < 0) key = it->second;
        }
        if (!have || cmp_lifted(kind, key, best.d) < 0) {
          best = Pick{y, key};
          have = true;
        }
      }
      if (have) pick[u] = best;
    });
    ex.charge_depth(L);

    // Apply extractions and plan the new contribution values.
    struct PendingEdge {
      Vertex u, y, tail;
    };
    std::vector<PendingEdge> pending;
    std::vector<AddPlan<K>> plans;
    bool any = false;
    for (Vertex u : verts) {
      if (pick[u].x < 0) continue;
      any = true;
      const Vertex x = pick[u].x;
      table.list[u].emplace_back(x, pick[u].d);
      table.inverse[x].push_back(u);
      ++table.appearances[x];
      nl_set[u].insert(x);
      queue[u].erase(x);
      cand_in[x].erase(u);
      for (const auto& [y, info] : g.out(x)) {
        if (table.heavy[y] || nl_set[u].count(y)) continue;
        check(info.atom.has_value(), "build_near_lists: composed edge from a light tail");
        pending.push_back(PendingEdge{u, x == y ? y : y, x});
        plans.push_back(AddPlan<K>{pick[u].d, {LiftedAtom<K>{*info.atom, info.atom_delta}}});
      }
    }
    if (!plans.empty()) {
      std::vector<LiftedValue<K>> vals = add_edge_batches(ex, kind, plans);
      for (std::size_t i = 0; i < pending.size(); ++i) {
        add_contribution(pending[i].u, pending[i].y, pending[i].tail, vals[i]);
      }
      ex.charge_batch_op(pending.size(), std::max<std::uint64_t>(g.edge_count(), 1));
    }

    promote_heavy(fresh);
    if (!any) break;  // every live queue is empty; later iterations are no-ops
  }

  for (Vertex v : verts) {
    std::sort(table.inverse[v].begin(), table.inverse[v].end());
    if (table.heavy[v]) table.heavy_list.push_back(v);
  }
  return table;
}

}  // namespace parsp
