#include "doctest.h"

#include "rooslab/errors.hpp"
#include "rooslab/roos.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace rooslab;

namespace {

QuasiOrder cospan() { return QuasiOrder({"x", "y", "z"}, {{0, 1}, {0, 2}}); }

InverseSystem doubling_cospan(const Ring& ring = Ring::integers()) {
  return InverseSystem(cospan(), ring, {1, 1, 1},
                       {{{0, 1}, int_matrix({{2}})}, {{0, 2}, int_matrix({{2}})}});
}

Cochain random_cochain(std::mt19937_64& rng, const RoosComplex& k, Index degree) {
  const Index n = k.modules[degree].total_rank;
  return Cochain{degree, k.ring.reduce(IntVector(testing::random_matrix(rng, n, 1, -4, 4)))};
}

}  // namespace

TEST_SUITE("roos-complex") {
  TEST_CASE("one-point system") {
    const InverseSystem s = InverseSystem::constant(QuasiOrder::chain(1), Ring::integers(), 1);
    const RoosComplex k = build_complex(s, 4);
    for (Index n = 0; n <= 4; ++n) CHECK(k.modules[n].total_rank == 1);
    CHECK(k.delta[1] == int_matrix({{0}}));
    CHECK(k.delta[2] == int_matrix({{1}}));
    CHECK(k.delta[3] == int_matrix({{0}}));
    CHECK(k.delta[4] == int_matrix({{1}}));
    CHECK(k.cohomology(0) == GroupInvariants{1, {}});
    CHECK(k.cohomology(1).is_trivial());

    const InverseSystem s2 = InverseSystem::constant(QuasiOrder::chain(1), Ring::modular(Integer(2)), 1);
    const RoosComplex k2 = build_complex(s2, 3);
    CHECK(k2.delta[2] == int_matrix({{1}}));
    CHECK(k2.cohomology(0) == GroupInvariants{0, {Integer(2)}});
  }

  TEST_CASE("chain a <= b with identity bond") {
    const InverseSystem s = InverseSystem::constant(QuasiOrder::chain(2), Ring::integers(), 1);
    const RoosComplex k = build_complex(s, 1);
    CHECK(k.modules[0].total_rank == 2);
    CHECK(k.modules[1].total_rank == 3);
    // rows (a,a), (a,b), (b,b); columns x_a, x_b
    CHECK(k.delta[1] == int_matrix({{0, 0}, {-1, 1}, {0, 0}}));
  }

  TEST_CASE("cospan derived limits") {
    const InverseSystem s = doubling_cospan();
    CHECK(derived_limit(s, 0) == GroupInvariants{1, {}});
    CHECK(derived_limit(s, 1) == GroupInvariants{0, {Integer(2)}});
    CHECK(derived_limit(s, 2).is_trivial());
    // Independent cokernel oracle of (a, b) -> 2a - 2b.
    CHECK(oracle::cokernel_by_minors(int_matrix({{2, -2}})) == GroupInvariants{0, {Integer(2)}});
    CHECK(limit_direct(s) == GroupInvariants{1, {}});
  }

  TEST_CASE("a maximum kills higher limits") {
    const InverseSystem s(QuasiOrder({"a", "b", "c"}, {{0, 2}, {1, 2}}), Ring::integers(), {1, 1, 1},
                          {{{0, 2}, int_matrix({{3}})}, {{1, 2}, int_matrix({{5}})}});
    CHECK(derived_limit(s, 1).is_trivial());
  }

  TEST_CASE("limit_direct examples") {
    CHECK(limit_direct(InverseSystem::constant(QuasiOrder::chain(3), Ring::integers(), 1)) ==
          GroupInvariants{1, {}});
    CHECK(limit_direct(InverseSystem::constant(QuasiOrder::antichain(2), Ring::integers(), 1)) ==
          GroupInvariants{2, {}});
    CHECK(limit_direct(doubling_cospan(Ring::modular(Integer(4)))) ==
          derived_limit(doubling_cospan(Ring::modular(Integer(4))), 0));
  }

  TEST_CASE("differentials square to zero and degree zero matches the equalizer") {
    std::mt19937_64 rng(testing::suite_seed() + 30);
    for (int trial = 0; trial < 60; ++trial) {
      testing::SystemShape shape;
      if (trial % 4 == 3) shape.ring = Ring::modular(Integer(testing::uniform(rng, 2, 9)));
      const InverseSystem s = testing::random_system(rng, shape);
      ComplexOptions o;
      o.verify = false;
      const RoosComplex k = build_complex(s, 4, o);
      for (Index n = 0; n < 4; ++n)
        CHECK(s.ring().is_zero_matrix(multiply(k.delta[n + 1], k.delta[n])));
      CHECK(k.cohomology(0) == limit_direct(s));
    }
  }

  TEST_CASE("cofinal restriction on directed orders keeps every limit") {
    std::mt19937_64 rng(testing::suite_seed() + 33);
    for (int trial = 0; trial < 40; ++trial) {
      testing::SystemShape shape;
      shape.with_top = true;
      const InverseSystem s = testing::random_system(rng, shape);
      REQUIRE(validate_order(s.index()).directed);
      const std::vector<Index> c = testing::random_cofinal_subset(rng, s.index());
      REQUIRE(is_cofinal(s.index(), c));
      CHECK(derived_limits(s, 3) == derived_limits(restrict(s, c), 3));
      for (Index n = 1; n <= 3; ++n) CHECK(derived_limit(s, n).is_trivial());
    }
  }

  TEST_CASE("cofinal restriction of a non-directed order can change the limit") {
    const InverseSystem s = doubling_cospan();
    CHECK(is_cofinal(s.index(), {1, 2}));
    CHECK(derived_limit(restrict(s, {1, 2}), 0) == GroupInvariants{2, {}});
    CHECK(derived_limit(s, 0) == GroupInvariants{1, {}});
  }

  TEST_CASE("strict tuples give the same invariants") {
    std::mt19937_64 rng(testing::suite_seed() + 31);
    for (int trial = 0; trial < 25; ++trial) {
      testing::SystemShape shape;
      shape.max_elements = 4;
      const InverseSystem s = testing::random_system(rng, shape);
      CHECK(derived_limits(s, 3) == derived_limits(s, 3, {true, true}));
    }
  }

  TEST_CASE("contraction examples") {
    const InverseSystem s = InverseSystem::constant(QuasiOrder::chain(2), Ring::integers(), 1);
    const RoosComplex k = build_complex(s, 2);
    const Cochain u{1, int_vector({1, 2, 3})};
    const Cochain d = contract(k, s, u, 1);
    CHECK(d.degree == 0);
    CHECK(d.values == int_vector({2, 3}));
    CHECK(contract(k, s, Cochain{1, IntVector::Zero(3)}, 1).values == IntVector::Zero(2));
    // delta^1(d_b u) at (a,b) and (delta^2 u) at (a,b,b) minus u at (a,b)
    const Cochain lhs = apply_delta(k, d);
    CHECK(entry(k, lhs, {0, 1}) == int_vector({1}));
    const Cochain du = apply_delta(k, u);
    CHECK(entry(k, du, {0, 1, 1})(0) - u.values(1) == 1);
    CHECK_THROWS_AS(contract(k, s, u, 0), IndexNotDominatingError);
  }

  TEST_CASE("contraction identity on random cochains") {
    std::mt19937_64 rng(testing::suite_seed() + 32);
    for (int trial = 0; trial < 40; ++trial) {
      testing::SystemShape shape;
      shape.max_elements = 4;
      const InverseSystem big = testing::random_system(rng, shape);
      const Index f = testing::uniform(rng, 0, big.size() - 1);
      const InverseSystem s = restrict(big, big.index().down_set(f));
      const Index top = *s.index().find(big.index().label(f));
      const Index n = testing::uniform(rng, 2, 4);
      const RoosComplex k = build_complex(s, n);
      const Cochain u = random_cochain(rng, k, n - 1);
      const Cochain lhs = apply_delta(k, contract(k, s, u, top));
      const Cochain rhs_first = contract(k, s, apply_delta(k, u), top);
      const Integer sign = (n % 2 == 0) ? 1 : -1;
      CHECK(lhs.values == IntVector(rhs_first.values - sign * u.values));
    }
  }
}
