#include "doctest.h"

#include "rooslab/errors.hpp"
#include "rooslab/les.hpp"
#include "rooslab/roos.hpp"
#include "support/generators.hpp"

using namespace rooslab;

namespace {

QuasiOrder cospan() { return QuasiOrder({"x", "y", "z"}, {{0, 1}, {0, 2}}); }

SystemSES direct_sum(const InverseSystem& l, const InverseSystem& r) {
  const QuasiOrder& q = l.index();
  SystemSES e;
  e.left = l;
  e.right = r;
  std::vector<Index> ranks;
  for (Index x = 0; x < q.size(); ++x) {
    const Index a = l.rank(x), b = r.rank(x);
    ranks.push_back(a + b);
    IntMatrix inc = IntMatrix::Zero(a + b, a);
    inc.topRows(a) = IntMatrix::Identity(a, a);
    IntMatrix proj = IntMatrix::Zero(b, a + b);
    proj.rightCols(b) = IntMatrix::Identity(b, b);
    e.f.push_back(inc);
    e.g.push_back(proj);
  }
  BondTable bonds;
  for (const auto& [x, y] : q.relations())
    if (x != y) bonds[{x, y}] = testing::block_diagonal(l.bond(x, y), r.bond(x, y));
  e.middle = InverseSystem(q, l.ring(), ranks, bonds);
  return e;
}

void check_against_derived_limit(const SystemSES& e, const LesReport& r, Index n_max) {
  for (Index n = 0; n <= n_max; ++n) {
    CHECK(r.left[n] == derived_limit(e.left, n));
    CHECK(r.middle[n] == derived_limit(e.middle, n));
    CHECK(r.right[n] == derived_limit(e.right, n));
  }
}

}  // namespace

TEST_SUITE("roos-complex") {
  TEST_CASE("split constant sequence") {
    const InverseSystem g = InverseSystem::constant(cospan(), Ring::integers(), 1);
    const SystemSES e = direct_sum(g, g);
    const LesReport r = les_of_ses(e, 2);
    CHECK(r.all_exact);
    CHECK_FALSE(r.note.empty());
    check_against_derived_limit(e, r, 2);
    REQUIRE_FALSE(r.fields.empty());
    CHECK(r.fields.front().field == "Q");
    for (const auto& field : r.fields) {
      CHECK(field.positions.size() == 9);
      // Connecting maps vanish: every R -> L map has rank zero.
      for (const auto& p : field.positions)
        if (p.system == 'L' && p.degree > 0) CHECK(p.rank_in == 0);
    }
  }

  TEST_CASE("non-free cokernel is rejected") {
    const Ring z4 = Ring::modular(Integer(4));
    SystemSES e;
    e.left = InverseSystem::constant(QuasiOrder::chain(1), z4, 1);
    e.middle = e.left;
    e.right = e.left;
    e.f = {int_matrix({{2}})};
    e.g = {int_matrix({{2}})};
    CHECK_THROWS_AS(les_of_ses(e, 1), ValidationError);
  }

  TEST_CASE("Z/2 cospan with zero and identity bonds") {
    const Ring z2 = Ring::modular(Integer(2));
    const InverseSystem zero(cospan(), z2, {1, 1, 1},
                             {{{0, 1}, int_matrix({{0}})}, {{0, 2}, int_matrix({{0}})}});
    const InverseSystem ident = InverseSystem::constant(cospan(), z2, 1);
    const SystemSES e = direct_sum(zero, ident);
    REQUIRE(validate_ses(e).valid);
    const LesReport r = les_of_ses(e, 1);
    CHECK(r.all_exact);
    check_against_derived_limit(e, r, 1);
    CHECK(r.left[0] == GroupInvariants{0, {Integer(2), Integer(2)}});
    CHECK(r.left[1] == GroupInvariants{0, {Integer(2)}});
    CHECK(r.right[0] == GroupInvariants{0, {Integer(2)}});
    REQUIRE(r.fields.size() == 1);
    CHECK(r.fields[0].field == "Z/2");
    CHECK(r.fields[0].positions.size() == 6);
  }

  TEST_CASE("random split and non-split sequences are exact") {
    std::mt19937_64 rng(testing::suite_seed() + 50);
    for (int trial = 0; trial < 16; ++trial) {
      const QuasiOrder q = testing::random_partial_order(rng, 4);
      const SystemSES e = (trial % 2 == 0) ? testing::random_split_ses(rng, q, 2)
                                           : testing::random_upset_ses(rng, q, 2);
      const LesReport r = les_of_ses(e, 2);
      CHECK(r.all_exact);
      check_against_derived_limit(e, r, 2);
    }
  }

  TEST_CASE("an inexact sequence is caught") {
    // g is not surjective at x.
    const QuasiOrder q = cospan();
    const InverseSystem g = InverseSystem::constant(q, Ring::integers(), 1);
    SystemSES e = direct_sum(g, g);
    e.g[0] = int_matrix({{0, 2}});
    CHECK_THROWS_AS(les_of_ses(e, 1), ValidationError);
  }
}
