#include "doctest.h"

#include "rooslab/errors.hpp"
#include "rooslab/system.hpp"
#include "support/generators.hpp"

using namespace rooslab;

namespace {

QuasiOrder cospan() { return QuasiOrder({"x", "y", "z"}, {{0, 1}, {0, 2}}); }
QuasiOrder abc() { return QuasiOrder({"a", "b", "c"}, {{0, 1}, {1, 2}}); }

InverseSystem scalar_system(const QuasiOrder& q, const BondTable& b,
                            const Ring& ring = Ring::integers()) {
  return InverseSystem(q, ring, std::vector<Index>(q.size(), 1), b);
}

}  // namespace

TEST_SUITE("inverse-systems") {
  TEST_CASE("validate_system examples") {
    const auto constant = validate_system(InverseSystem::constant(abc(), Ring::integers(), 2));
    CHECK(constant.valid);
    CHECK(constant.surjective);

    const InverseSystem c =
        scalar_system(cospan(), {{{0, 1}, int_matrix({{2}})}, {{0, 2}, int_matrix({{2}})}});
    const auto cr = validate_system(c);
    CHECK(cr.valid);
    CHECK_FALSE(cr.surjective);
    CHECK(cr.non_surjective.size() == 2);

    const InverseSystem bad = scalar_system(
        abc(), {{{0, 1}, int_matrix({{2}})}, {{1, 2}, int_matrix({{3}})}, {{0, 2}, int_matrix({{5}})}});
    const auto br = validate_system(bad);
    CHECK_FALSE(br.valid);
    CHECK(br.violations.size() == 1);
    CHECK_THROWS_AS(require_valid(bad), ValidationError);
  }

  TEST_CASE("composite bonds are derived") {
    const InverseSystem s =
        scalar_system(abc(), {{{0, 1}, int_matrix({{2}})}, {{1, 2}, int_matrix({{3}})}});
    CHECK(s.bond(0, 2) == int_matrix({{6}}));
    CHECK(validate_system(s).valid);
    CHECK_THROWS_AS(scalar_system(abc(), {{{0, 1}, int_matrix({{2}})}}), ValidationError);
    CHECK_THROWS_AS(scalar_system(abc(), {{{0, 1}, int_matrix({{2, 1}})}, {{1, 2}, int_matrix({{1}})}}),
                    DimensionError);
  }

  TEST_CASE("restrict examples") {
    const InverseSystem c =
        scalar_system(cospan(), {{{0, 1}, int_matrix({{2}})}, {{0, 2}, int_matrix({{2}})}});
    CHECK(restrict(c, {0, 1, 2}) == c);
    const InverseSystem x = restrict(c, {0});
    CHECK(x.size() == 1);
    CHECK(x.rank(0) == 1);
    const InverseSystem s =
        scalar_system(abc(), {{{0, 1}, int_matrix({{2}})}, {{1, 2}, int_matrix({{3}})}});
    const InverseSystem ac = restrict(s, {0, 2});
    CHECK(ac.index().leq(0, 1));
    CHECK(ac.bond(0, 1) == int_matrix({{6}}));
  }

  TEST_CASE("pullback examples") {
    const InverseSystem s =
        scalar_system(abc(), {{{0, 1}, int_matrix({{2}})}, {{1, 2}, int_matrix({{3}})}});
    std::vector<Index> id{0, 1, 2};
    CHECK(pullback(s, MonotoneMap{s.index(), s.index(), id}) == s);
    const InverseSystem top = pullback(s, MonotoneMap{QuasiOrder::chain(1), s.index(), {2}});
    CHECK(top.size() == 1);
    CHECK(top.bond(0, 0) == int_matrix({{1}}));
    const InverseSystem ends = pullback(s, MonotoneMap{QuasiOrder::chain(2), s.index(), {0, 2}});
    CHECK(ends.bond(0, 1) == int_matrix({{6}}));
    CHECK_THROWS_AS(pullback(s, MonotoneMap{QuasiOrder::chain(2), s.index(), {2, 0}}),
                    ValidationError);
  }

  TEST_CASE("random systems validate, restrict validly, and pullback along inclusion is restrict") {
    std::mt19937_64 rng(testing::suite_seed() + 20);
    for (int trial = 0; trial < 60; ++trial) {
      testing::SystemShape shape;
      if (trial % 3 == 1) shape.ring = Ring::modular(Integer(6));
      const InverseSystem s = testing::random_system(rng, shape);
      REQUIRE(validate_system(s).valid);
      std::vector<Index> subset;
      for (Index x = 0; x < s.size(); ++x)
        if (testing::uniform(rng, 0, 1)) subset.push_back(x);
      const InverseSystem r = restrict(s, subset);
      CHECK(validate_system(r).valid);
      CHECK(pullback(s, inclusion(s.index(), subset)) == r);
    }
  }

  TEST_CASE("truncated_A examples") {
    const auto one = truncated_A({1, {{1}}, Ring::integers()});
    CHECK(one.system.size() == 1);
    CHECK(one.system.rank(0) == 1);
    CHECK_FALSE(one.note.empty());

    const auto three = truncated_A({2, {{2, 1}, {1, 2}, {2, 2}}, Ring::integers()});
    const InverseSystem& s = three.system;
    CHECK(s.size() == 3);
    CHECK(s.rank(2) == 4);
    CHECK(maximum_elements(s.index()) == std::vector<Index>{2});
    CHECK_FALSE(s.index().leq(0, 1));
    CHECK(three.coordinates[2] ==
          std::vector<std::pair<long, long>>{{0, 0}, {0, 1}, {1, 0}, {1, 1}});
    // (2,1) keeps (0,0), (0,1), (1,0) of the top object.
    CHECK(s.bond(0, 2) == int_matrix({{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}}));

    const auto anti = truncated_A({2, {{2, 0}, {0, 2}}, Ring::integers()});
    CHECK(anti.system.index().relations().size() == 2);
    CHECK_THROWS_AS(truncated_A({2, {}, Ring::integers()}), ValidationError);
  }

  TEST_CASE("truncated_A is valid, surjective, and domination matches grid containment") {
    std::mt19937_64 rng(testing::suite_seed() + 21);
    for (int trial = 0; trial < 40; ++trial) {
      const Index m = testing::uniform(rng, 1, 3);
      TruncationSpec spec{m, {}, Ring::integers()};
      const Index count = testing::uniform(rng, 1, 4);
      for (Index k = 0; k < count; ++k) {
        std::vector<long> f(static_cast<std::size_t>(m));
        for (auto& v : f) v = testing::uniform(rng, 0, 3);
        spec.family.push_back(f);
      }
      const auto t = truncated_A(spec);
      const auto report = validate_system(t.system);
      CHECK(report.valid);
      CHECK(report.surjective);
      for (Index a = 0; a < count; ++a)
        for (Index b = 0; b < count; ++b) {
          const auto& ca = t.coordinates[a];
          const auto& cb = t.coordinates[b];
          const bool contained = std::includes(cb.begin(), cb.end(), ca.begin(), ca.end());
          CHECK(t.system.index().leq(a, b) == contained);
        }
    }
  }

  TEST_CASE("validate_ses examples") {
    const QuasiOrder q = cospan();
    const Ring z = Ring::integers();
    SystemSES e;
    e.left = InverseSystem::constant(q, z, 1);
    e.middle = InverseSystem::constant(q, z, 2);
    e.right = InverseSystem::constant(q, z, 1);
    for (Index x = 0; x < 3; ++x) {
      e.f.push_back(int_matrix({{1}, {0}}));
      e.g.push_back(int_matrix({{0, 1}}));
    }
    CHECK(validate_ses(e).valid);

    SystemSES zero = e;
    for (auto& g : zero.g) g = int_matrix({{0, 0}});
    CHECK_FALSE(validate_ses(zero).valid);

    const Ring z2 = Ring::modular(Integer(2));
    SystemSES m2;
    m2.left = InverseSystem::constant(QuasiOrder::chain(1), z2, 1);
    m2.middle = InverseSystem::constant(QuasiOrder::chain(1), z2, 2);
    m2.right = InverseSystem::constant(QuasiOrder::chain(1), z2, 1);
    m2.f = {int_matrix({{1}, {1}})};
    m2.g = {int_matrix({{1, 1}})};
    CHECK(validate_ses(m2).valid);

    const Ring z4 = Ring::modular(Integer(4));
    SystemSES m4;
    m4.left = InverseSystem::constant(QuasiOrder::chain(1), z4, 1);
    m4.middle = InverseSystem::constant(QuasiOrder::chain(1), z4, 1);
    m4.right = InverseSystem::constant(QuasiOrder::chain(1), z4, 1);
    m4.f = {int_matrix({{2}})};
    m4.g = {int_matrix({{2}})};
    CHECK_FALSE(validate_ses(m4).valid);
  }

  TEST_CASE("generated sequences are exact") {
    std::mt19937_64 rng(testing::suite_seed() + 22);
    for (int trial = 0; trial < 20; ++trial) {
      const QuasiOrder q = testing::random_partial_order(rng, 4);
      CHECK(validate_ses(testing::random_split_ses(rng, q, 2)).valid);
      CHECK(validate_ses(testing::random_upset_ses(rng, q, 2)).valid);
    }
  }
}
