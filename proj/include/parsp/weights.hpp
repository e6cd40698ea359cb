#pragma once

#include <concepts>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "parsp/errors.hpp"
#include "parsp/exec.hpp"
#include "parsp/rational.hpp"

namespace parsp {

using Vertex = std::int32_t;

// A weight kind is an ordered commutative monoid over path weights together
// with the finite set of per-edge atoms it supports. `add` must not disturb
// the base representation (persistent for the tree-backed kinds).
template <class K>
concept WeightKindLike = requires(K k, const typename K::Payload& p,
                                  std::span<const typename K::Atom> atoms) {
  typename K::Payload;
  typename K::Atom;
  { k.zero() } -> std::same_as<typename K::Payload>;
  { k.add(p, atoms) } -> std::same_as<typename K::Payload>;
  { k.cmp(p, p) } -> std::same_as<int>;
  { K::kTracksAtoms } -> std::convertible_to<bool>;
  { K::kInlineAdd } -> std::convertible_to<bool>;
};

// Path weight lifted with a hop count and an index-delta coordinate. The
// lexicographic order on (scalar, hops, delta) makes every proper subpath
// strictly lighter and gives distinct weights to paths from a common origin
// towards distinct endpoints, which the discovery machinery relies on.
template <class K>
struct LiftedValue {
  typename K::Payload scalar{};
  std::int64_t hops = 0;
  std::int64_t delta = 0;

  // Structural equality; for tree-backed payloads identifier equality is
  // exactly value equality, so this agrees with cmp_lifted == 0.
  bool operator==(const LiftedValue& o) const {
    return scalar == o.scalar && hops == o.hops && delta == o.delta;
  }
};

// One original edge: its atom plus the index delta (head - tail); a traversal
// contributes exactly one hop.
template <class K>
struct LiftedAtom {
  typename K::Atom w{};
  std::int64_t delta = 0;
};

template <class K>
int cmp_lifted(const K& kind, const LiftedValue<K>& a, const LiftedValue<K>& b) {
  if (int c = kind.cmp(a.scalar, b.scalar); c != 0) return c;
  if (a.hops != b.hops) return a.hops < b.hops ? -1 : 1;
  if (a.delta != b.delta) return a.delta < b.delta ? -1 : 1;
  return 0;
}

template <class K>
LiftedValue<K> lifted_zero(const K& kind) {
  return LiftedValue<K>{kind.zero(), 0, 0};
}

template <class K>
LiftedValue<K> add_atoms(K& kind, const LiftedValue<K>& base,
                         std::span<const LiftedAtom<K>> atoms) {
  std::vector<typename K::Atom> payloads;
  payloads.reserve(atoms.size());
  std::int64_t delta = base.delta;
  for (const auto& a : atoms) {
    payloads.push_back(a.w);
    delta += a.delta;
  }
  return LiftedValue<K>{kind.add(base.scalar, payloads),
                        base.hops + static_cast<std::int64_t>(atoms.size()), delta};
}

template <class K>
LiftedValue<K> add_one_atom(K& kind, const LiftedValue<K>& base, const LiftedAtom<K>& atom) {
  return add_atoms(kind, base, std::span<const LiftedAtom<K>>(&atom, 1));
}

template <class K>
struct LiftedLess {
  const K* kind = nullptr;
  bool operator()(const LiftedValue<K>& a, const LiftedValue<K>& b) const {
    return cmp_lifted(*kind, a, b) < 0;
  }
};

// Plain non-negative real (exact rational) weights.
class RealKind {
 public:
  using Payload = Rational;
  using Atom = Rational;
  static constexpr bool kTracksAtoms = false;  // decomposition lists not needed
  static constexpr bool kInlineAdd = true;     // adds are cheap value ops

  Payload zero() const { return Rational(0); }
  Atom zero_atom() const { return Rational(0); }

  // Direct payload sum; only kinds with kInlineAdd expose this.
  Payload combine(const Payload& a, const Payload& b) const { return a + b; }

  Payload add(const Payload& base, std::span<const Atom> atoms) const {
    Payload out = base;
    for (const auto& a : atoms) out += a;
    return out;
  }

  int cmp(const Payload& a, const Payload& b) const {
    if (a < b) return -1;
    if (b < a) return 1;
    return 0;
  }

  void validate_atom(const Atom& a) const {
    if (a < 0) throw InvalidWeight("edge weight must be non-negative");
  }

  std::string payload_str(const Payload& p) const { return rational_str(p); }
};

using RealLifted = LiftedValue<RealKind>;

// Appendix-style lift of a raw edge: (w, 1, head - tail). Self-loops lift to
// delta 0 and are filtered by graph construction, not here.
inline RealLifted lift(Vertex tail, Vertex head, const Rational& scalar) {
  if (scalar < 0) throw InvalidWeight("lift: negative edge weight");
  return RealLifted{scalar, 1, static_cast<std::int64_t>(head) - tail};
}

inline int compare_lifted(const RealLifted& a, const RealLifted& b) {
  RealKind kind;
  return cmp_lifted(kind, a, b);
}

// Deferred construction of `base + sum(atoms)`.
template <class K>
struct AddPlan {
  LiftedValue<K> base;
  std::vector<LiftedAtom<K>> atoms;
};

// Materializes a batch of additions as one round. Kinds with kInlineAdd build
// inside a parallel round; tree-backed kinds allocate canonical identifiers,
// so their builds run in input order at the round barrier (charged as one
// batched round; see TreeStore).
template <class K>
std::vector<LiftedValue<K>> add_edge_batches(Exec& ex, K& kind,
                                             const std::vector<AddPlan<K>>& plans) {
  std::vector<LiftedValue<K>> out(plans.size());
  if (plans.empty()) return out;
  if constexpr (K::kInlineAdd) {
    ex.par_for(plans.size(), [&](std::size_t i) {
      ex.charge(plans[i].atoms.size());
      out[i] = add_atoms(kind, plans[i].base,
                         std::span<const LiftedAtom<K>>(plans[i].atoms));
    });
  } else {
    std::uint64_t units = 0;
    for (const auto& p : plans) units += 1 + p.atoms.size();
    ex.charge(units * kind.depth_bound());
    ex.charge_depth(1 + ceil_log2(plans.size() + 1) + ceil_log2(kind.depth_bound() + 1));
    for (std::size_t i = 0; i < plans.size(); ++i) {
      out[i] = add_atoms(kind, plans[i].base,
                         std::span<const LiftedAtom<K>>(plans[i].atoms));
    }
  }
  return out;
}

}  // namespace parsp
