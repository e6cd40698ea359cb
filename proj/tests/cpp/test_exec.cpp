#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>
#include <set>

#include "parsp/exec.hpp"
#include "parsp/generate.hpp"
#include "parsp/weights.hpp"

using namespace parsp;

TEST_CASE("par_map counts one round and one unit per task") {
  Exec ex;
  auto out = ex.par_map<int>(8, [](std::size_t i) { return static_cast<int>(i) * 2; });
  for (int i = 0; i < 8; ++i) CHECK(out[i] == 2 * i);
  CHECK(ex.counters().work == 8);
  CHECK(ex.counters().depth == 1);

  ex.par_for(0, [](std::size_t) {});
  CHECK(ex.counters().depth == 1);  // empty round elided
}

TEST_CASE("nested rounds charge the longest chain") {
  Exec ex;
  ex.par_for(4, [&](std::size_t) { ex.par_for(4, [](std::size_t) {}); });
  CHECK(ex.counters().depth == 2);
  CHECK(ex.counters().work == 4 + 4 * 4);
}

TEST_CASE("par_reduce surcharges ceil(log2 n) depth") {
  Exec ex;
  std::vector<int> v(16, 1);
  int total = ex.par_reduce(std::span<const int>(v), [](int a, int b) { return a + b; });
  CHECK(total == 16);
  CHECK(ex.counters().depth == 4);
  CHECK(ex.counters().work == 16);

  std::vector<int> one{42};
  CHECK(ex.par_reduce(std::span<const int>(one), [](int a, int b) { return a + b; }) == 42);
  CHECK(ex.counters().depth == 4);  // single item adds no depth

  std::vector<int> none;
  CHECK_THROWS_AS(
      (void)ex.par_reduce(std::span<const int>(none), [](int a, int b) { return a + b; }),
      EmptyReduce);
  CHECK(ex.par_reduce(std::span<const int>(none), [](int a, int b) { return a + b; }, -1) == -1);
}

TEST_CASE("min-reduction over the fixture edge weights") {
  // G* = {s->a(1), s->b(4), a->b(2), b->c(1)}; the lightest lifted edge is
  // (1, 1, +1): both weight-1 edges tie on the scalar, and s->a wins on delta.
  std::vector<RealLifted> ws = {lift(0, 1, Rational(1)), lift(0, 2, Rational(4)),
                                lift(1, 2, Rational(2)), lift(2, 3, Rational(1))};
  Exec ex;
  RealLifted m = ex.par_reduce(std::span<const RealLifted>(ws),
                               [](const RealLifted& a, const RealLifted& b) {
                                 return compare_lifted(a, b) <= 0 ? a : b;
                               });
  CHECK(m.scalar == 1);
  CHECK(m.hops == 1);
  CHECK(m.delta == 1);
}

TEST_CASE("combiners used by clients are associative and commutative") {
  SplitMix64 rng(99);
  RealKind kind;
  for (int i = 0; i < 1000; ++i) {
    auto rnd = [&] {
      return RealLifted{make_rational(static_cast<std::int64_t>(rng.below(50)),
                                      1 + static_cast<std::int64_t>(rng.below(4))),
                        static_cast<std::int64_t>(rng.below(5)),
                        static_cast<std::int64_t>(rng.below(9)) - 4};
    };
    RealLifted a = rnd(), b = rnd(), c = rnd();
    auto mn = [&](const RealLifted& x, const RealLifted& y) {
      return cmp_lifted(kind, x, y) <= 0 ? x : y;
    };
    CHECK(cmp_lifted(kind, mn(mn(a, b), c), mn(a, mn(b, c))) == 0);
    CHECK(cmp_lifted(kind, mn(a, b), mn(b, a)) == 0);
    // integer sum and set union
    std::set<int> sa{static_cast<int>(rng.below(5))}, sb{static_cast<int>(rng.below(5))},
        sc{static_cast<int>(rng.below(5))};
    auto uni = [](std::set<int> x, const std::set<int>& y) {
      x.insert(y.begin(), y.end());
      return x;
    };
    CHECK(uni(uni(sa, sb), sc) == uni(sa, uni(sb, sc)));
  }
}

TEST_CASE("task exceptions propagate after the round, lowest index first") {
  Exec ex;
  std::vector<int> done(6, 0);
  try {
    ex.par_for(6, [&](std::size_t i) {
      done[i] = 1;
      if (i == 2 || i == 4) throw InvalidParameter("boom " + std::to_string(i));
    });
    CHECK(false);
  } catch (const InvalidParameter& e) {
    CHECK(std::string(e.what()) == "boom 2");
  }
  CHECK(std::accumulate(done.begin(), done.end(), 0) == 6);
}

TEST_CASE("identical counters and outputs across backends and reruns") {
  auto workload = [](Exec& ex) {
    std::vector<std::uint64_t> acc(37);
    ex.par_for(37, [&](std::size_t i) {
      ex.charge(i % 3);
      acc[i] = i * i;
    });
    ex.charge_batch_op(12, 100);
    auto v = ex.par_map<std::uint64_t>(9, [&](std::size_t i) { return acc[(i * 7) % 37]; });
    std::uint64_t s = ex.par_reduce(std::span<const std::uint64_t>(v),
                                    [](std::uint64_t a, std::uint64_t b) { return a + b; });
    return s;
  };
  Exec seq(Backend::kSeq);
  Exec par(Backend::kPar, 4);
  Exec par1(Backend::kPar, 1);
  std::uint64_t r1 = workload(seq);
  std::uint64_t r2 = workload(par);
  std::uint64_t r3 = workload(par1);
  CHECK(r1 == r2);
  CHECK(r1 == r3);
  CHECK(seq.counters() == par.counters());
  CHECK(seq.counters() == par1.counters());

  Exec seq2(Backend::kSeq);
  (void)workload(seq2);
  CHECK(seq.counters() == seq2.counters());
}
