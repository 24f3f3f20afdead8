#include <gtest/gtest.h>

#include <set>

#include "support/random_specs.hpp"
#include "ulmext/error.hpp"
#include "ulmext/oracle/cocycle.hpp"

using namespace ulmext;
using namespace ulmext::oracle;

namespace {

// Counts symmetric normalized cocycles and coboundaries by listing every
// table, with no linear algebra involved.
std::pair<std::size_t, std::size_t> brute_force_counts(const FgGroup& c, const FgGroup& a) {
  const auto C = FiniteAbelian::of(c);
  const auto A = FiniteAbelian::of(a);
  const std::size_t n = C.order(), m = A.order();
  std::vector<std::pair<std::size_t, std::size_t>> slots;  // x <= y, both nonzero
  for (std::size_t x = 1; x < n; ++x)
    for (std::size_t y = x; y < n; ++y) slots.push_back({x, y});
  std::size_t cocycles = 0;
  std::vector<std::size_t> digits(slots.size(), 0);
  for (;;) {
    Cocycle co = Cocycle::zero(c, a);
    for (std::size_t i = 0; i < slots.size(); ++i) {
      co.table[slots[i].first * n + slots[i].second] = digits[i];
      co.table[slots[i].second * n + slots[i].first] = digits[i];
    }
    if (is_cocycle(co)) ++cocycles;
    std::size_t i = 0;
    while (i < digits.size() && ++digits[i] == m) digits[i++] = 0;
    if (i == digits.size()) break;
  }
  std::set<std::vector<std::size_t>> boundaries;
  std::vector<std::size_t> phi(n, 0);
  for (;;) {
    boundaries.insert(coboundary(c, a, phi).table);
    std::size_t i = 1;
    while (i < n && ++phi[i] == m) phi[i++] = 0;
    if (i == n) break;
  }
  return {cocycles, boundaries.size()};
}

const FgGroup Z2 = FgGroup::cyclic(2), Z3 = FgGroup::cyclic(3), Z4 = FgGroup::cyclic(4);

}  // namespace

TEST(CocycleGroup, WorkedExamples) {
  const CocycleGroup z22(Z2, Z2);
  EXPECT_EQ(z22.cocycle_order(), 2);
  EXPECT_EQ(z22.coboundary_order(), 1);
  EXPECT_EQ(z22.quotient(), Z2);
  EXPECT_TRUE(CocycleGroup(Z2, Z3).quotient().is_trivial());
  EXPECT_EQ(CocycleGroup(Z4, Z2).quotient(), Z2);
}

TEST(CocycleGroup, CountsMatchBruteForce) {
  const auto groups = finite_abelian_groups_up_to(4);
  for (const auto& c : groups)
    for (const auto& a : groups) {
      if (c.order() > 4 || a.order() > 3) continue;
      const auto [z, b] = brute_force_counts(c, a);
      const CocycleGroup g(c, a);
      EXPECT_EQ(g.cocycle_order(), BigInt(z)) << c.to_string() << " by " << a.to_string();
      EXPECT_EQ(g.coboundary_order(), BigInt(b)) << c.to_string() << " by " << a.to_string();
      EXPECT_EQ(g.quotient(), fg_ext(c, a));
    }
}

TEST(CocycleGroup, ClassesAndRepresentativesAreInverse) {
  const FgGroup c = FgGroup::from_cyclics({2, 4}), a = FgGroup::cyclic(4);
  const CocycleGroup g(c, a);
  const auto& q = g.class_group();
  for (std::size_t i = 0; i < q.order(); ++i) {
    const auto cls = q.element(i);
    const Cocycle rep = g.representative(cls);
    ASSERT_TRUE(is_cocycle(rep));
    EXPECT_EQ(q.index(g.class_of(rep)), i);
  }
  for (const auto& gen : g.cocycle_generators()) EXPECT_TRUE(is_cocycle(gen));
}

TEST(CocycleGroup, CoboundariesAreSolved) {
  const FgGroup c = FgGroup::cyclic(6), a = FgGroup::from_cyclics({2, 3});
  const CocycleGroup g(c, a);
  std::mt19937_64 rng(51);
  const auto A = FiniteAbelian::of(a);
  for (int t = 0; t < 20; ++t) {
    std::vector<std::size_t> phi(6, 0);
    for (std::size_t x = 1; x < 6; ++x) phi[x] = ulmext::testing::draw_below(rng, A.order());
    const Cocycle target = coboundary(c, a, phi);
    const auto sol = g.solve_coboundary(target);
    ASSERT_TRUE(sol);
    EXPECT_EQ(coboundary(c, a, *sol), target);
    EXPECT_TRUE(g.class_group().is_zero(g.class_of(target)));
  }
}

TEST(Cocycle, RejectsNonCocycles) {
  Cocycle bad = Cocycle::zero(Z3, Z3);
  bad.table[1 * 3 + 1] = 1;  // c(1,1) = 1 and everything else 0
  EXPECT_FALSE(is_cocycle(bad));
  EXPECT_THROW(extension_from_cocycle(bad), PreconditionError);
  Cocycle unnormalized = Cocycle::zero(Z2, Z2);
  unnormalized.table[1 * 2 + 0] = 1;
  EXPECT_FALSE(is_cocycle(unnormalized));
}

TEST(Extension, SplitAndTwisted) {
  const auto split = extension_from_cocycle(Cocycle::zero(Z2, Z2));
  validate_extension(split);
  EXPECT_EQ(abelian_invariants_from_table(split.x.n, split.x.add, split.x.zero), FgGroup::from_cyclics({2, 2}));
  Cocycle c = Cocycle::zero(Z2, Z2);
  c.table[3] = 1;
  const auto twisted = extension_from_cocycle(c);
  EXPECT_EQ(abelian_invariants_from_table(twisted.x.n, twisted.x.add, twisted.x.zero), Z4);
  EXPECT_FALSE(extensions_equivalent(split, twisted));
  EXPECT_TRUE(extensions_equivalent(twisted, twisted));
  EXPECT_FALSE(extensions_equivalent_exhaustive(split, twisted));
  // Twice the Z/4 class is split.
  EXPECT_TRUE(extensions_equivalent(baer_sum(twisted, twisted), split));
}

TEST(Extension, SectionsDifferByACoboundary) {
  // Z/8 as an extension of Z/4 by Z/2, with the lift of 2 moved.
  const CocycleGroup g(Z4, Z2);
  const auto e = extension_from_cocycle(g.representative(g.class_group().element(1)));
  EXPECT_EQ(abelian_invariants_from_table(e.x.n, e.x.add, e.x.zero), FgGroup::cyclic(8));
  const auto t1 = canonical_section(e);
  std::vector<std::size_t> t2 = t1;
  for (std::size_t x = 0; x < e.x.n; ++x)
    if (e.h[x] == 2 && x != t1[2]) t2[2] = x;
  ASSERT_NE(t1[2], t2[2]);
  const Cocycle c1 = cocycle_from_extension(e, t1), c2 = cocycle_from_extension(e, t2);
  EXPECT_NE(c1, c2);
  EXPECT_TRUE(g.solve_coboundary(cocycle_add(c1, cocycle_neg(c2))).has_value());
  EXPECT_EQ(g.class_of(c1), g.class_of(c2));
}

TEST(Extension, CoboundaryTwistsAreEquivalent) {
  const FgGroup c = FgGroup::cyclic(4), a = FgGroup::cyclic(2);
  const CocycleGroup g(c, a);
  std::mt19937_64 rng(52);
  for (int t = 0; t < 10; ++t) {
    const auto cls = g.class_group().element(ulmext::testing::draw_below(rng, g.class_group().order()));
    const Cocycle base = g.representative(cls);
    std::vector<std::size_t> phi(4, 0);
    for (std::size_t x = 1; x < 4; ++x) phi[x] = ulmext::testing::draw_below(rng, 2);
    const Cocycle twisted = cocycle_add(base, coboundary(c, a, phi));
    const auto e1 = extension_from_cocycle(base), e2 = extension_from_cocycle(twisted);
    EXPECT_TRUE(equivalence_witness(e1, e2).has_value());
    EXPECT_TRUE(extensions_equivalent_exhaustive(e1, e2));
  }
}

TEST(Extension, BaerSumFollowsCocycleAddition) {
  const FgGroup c = FgGroup::from_cyclics({2, 2}), a = FgGroup::cyclic(2);
  const CocycleGroup g(c, a);
  const auto& q = g.class_group();
  for (std::size_t i = 0; i < q.order(); ++i)
    for (std::size_t j = 0; j < q.order(); ++j) {
      const Cocycle x = g.representative(q.element(i)), y = g.representative(q.element(j));
      const auto sum = baer_sum(extension_from_cocycle(x), extension_from_cocycle(y));
      validate_extension(sum);
      EXPECT_TRUE(extensions_equivalent(sum, extension_from_cocycle(cocycle_add(x, y))));
    }
  const auto e = extension_from_cocycle(g.representative(q.element(q.order() - 1)));
  EXPECT_TRUE(extensions_equivalent(baer_sum(e, baer_negative(e)), split_extension(c, a)));
}

TEST(Extension, ExhaustiveSearchRefusesLargeGroups) {
  const auto e = split_extension(FgGroup::cyclic(6), FgGroup::cyclic(3));
  EXPECT_THROW(extensions_equivalent_exhaustive(e, e), PreconditionError);
}
