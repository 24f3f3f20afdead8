#include <gtest/gtest.h>

#include "support/random_specs.hpp"
#include "ulmext/error.hpp"
#include "ulmext/oracle/realize.hpp"
#include "ulmext/pgroup.hpp"

using namespace ulmext;
using namespace ulmext::testing;

namespace {

const Ordinal w = Ordinal::omega();

PGroupDesc g2(std::vector<Segment> segs) { return reduced_group(2, UlmProfile(std::move(segs))); }

// Indices where layers can change: every segment start and the step after it.
std::vector<Ordinal> probe_points(const std::vector<const UlmProfile*>& profiles) {
  std::vector<Ordinal> pts{Ordinal(0)};
  for (const auto* p : profiles)
    for (const auto& s : p->segments()) {
      pts.push_back(s.start);
      pts.push_back(s.start.successor());
      if (s.end.is_successor()) pts.push_back(s.end.predecessor());
      pts.push_back(s.end);
    }
  return pts;
}

CyclicLayer layer_or_zero(const UlmProfile& p, const Ordinal& a) {
  const CyclicLayer* l = p.layer_at(a);
  return l ? *l : CyclicLayer();
}

}  // namespace

TEST(CyclicLayer, CanonicalFormFoldsExplicitCountsIntoTheTail) {
  const CyclicLayer l({{1, ExtendedCount(1)}, {2, ExtendedCount(1)}}, TailRun{3, ExtendedCount(1)});
  EXPECT_EQ(l, CyclicLayer::tail(1));
  const CyclicLayer m({{5, ExtendedCount(2)}}, TailRun{2, ExtendedCount(1)});
  EXPECT_EQ(m.count_at(5), ExtendedCount(3));
  EXPECT_EQ(m.count_at(6), ExtendedCount(1));
  EXPECT_EQ(m.count_at(1), ExtendedCount(0));
  EXPECT_THROW(CyclicLayer::cyclic(0), PreconditionError);
  EXPECT_THROW(CyclicLayer::tail(0), PreconditionError);
}

TEST(CyclicLayer, AdditionAndOmegaMultiples) {
  const auto sum = layer_add(CyclicLayer::cyclic(2, 3), CyclicLayer::tail(1));
  EXPECT_EQ(sum.count_at(2), ExtendedCount(4));
  EXPECT_EQ(sum.count_at(7), ExtendedCount(1));
  EXPECT_FALSE(sum.is_bounded());
  const auto inf = layer_times_omega(CyclicLayer::cyclic(3));
  EXPECT_EQ(inf.count_at(3), ExtendedCount::infinite());
  EXPECT_TRUE(inf.is_bounded());
  EXPECT_FALSE(inf.is_finite());
  EXPECT_EQ(CyclicLayer::cyclic(3, 2).cardinality(2), ExtendedCount(64));
}

TEST(PGroupDesc, ValidationReportsEachViolation) {
  EXPECT_TRUE(validate(g2({{0, w, CyclicLayer::tail(1)}, {w, w + 1, CyclicLayer::cyclic(1)}})).ok());
  // A bounded layer below the top.
  auto r = validate(g2({{0, 1, CyclicLayer::cyclic(1)}, {1, 2, CyclicLayer::tail(1)}}));
  ASSERT_EQ(r.violations.size(), 1u);
  EXPECT_EQ(r.violations[0].segment, 0);
  // A gap.
  r = validate(g2({{0, 1, CyclicLayer::tail(1)}, {2, 3, CyclicLayer::cyclic(1)}}));
  EXPECT_FALSE(r.ok());
  // A bounded run over a limit length.
  EXPECT_FALSE(validate(g2({{0, w, CyclicLayer::cyclic(1)}})).ok());
  // A zero layer.
  EXPECT_FALSE(validate(g2({{0, 1, CyclicLayer()}})).ok());
}

TEST(PGroupDesc, UlmSubgroupsAndPredicates) {
  const auto g = g2({{0, w, CyclicLayer::tail(1)}, {w, w + 1, CyclicLayer::cyclic(2, 3)}});
  EXPECT_EQ(ulm_length(g), w + 1);
  EXPECT_FALSE(is_bounded(g));
  EXPECT_EQ(cardinality(g), ExtendedCount::infinite());
  const auto top = ulm_subgroup(g, w);
  EXPECT_TRUE(is_bounded(top));
  EXPECT_TRUE(is_finite(top));
  EXPECT_EQ(cardinality(top), ExtendedCount(64));
  EXPECT_TRUE(is_zero(ulm_subgroup(g, w + 1)));
  EXPECT_EQ(ulm_subgroup(g, 3), g);  // 3 + w = w
  EXPECT_EQ(vanishing_index(g), w + 1);
  EXPECT_EQ(vanishing_index(prufer(2)), std::nullopt);
  EXPECT_FALSE(is_zero(ulm_subgroup(prufer(2), w)));
}

TEST(PGroupDesc, DirectSumRejectsMixedPrimes) {
  EXPECT_THROW(direct_sum(prufer(2), prufer(3)), PreconditionError);
}

TEST(PGroupDesc, ShiftLaw) {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 300; ++i) {
    const auto g = random_torsion(rng, 3);
    const Ordinal a = omega_times(draw_below(rng, 3)) + Ordinal(draw_below(rng, 4));
    const Ordinal b = omega_times(draw_below(rng, 3)) + Ordinal(draw_below(rng, 4));
    EXPECT_EQ(ulm_subgroup(ulm_subgroup(g, b), a), ulm_subgroup(g, b + a));
    EXPECT_TRUE(validate(ulm_subgroup(g, a)).ok());
  }
}

TEST(PGroupDesc, DirectSumIsLayerwise) {
  std::mt19937_64 rng(22);
  const auto zero = reduced_group(5, UlmProfile());
  for (int i = 0; i < 300; ++i) {
    const auto a = random_torsion(rng, 5), b = random_torsion(rng, 5), c = random_torsion(rng, 5);
    const auto ab = direct_sum(a, b);
    EXPECT_EQ(ab, direct_sum(b, a));
    EXPECT_EQ(direct_sum(ab, c), direct_sum(a, direct_sum(b, c)));
    EXPECT_EQ(direct_sum(a, zero), a);
    EXPECT_EQ(ab.divisible_rank, a.divisible_rank + b.divisible_rank);
    EXPECT_EQ(ulm_length(ab), std::max(ulm_length(a), ulm_length(b)));
    for (const auto& x : probe_points({&a.reduced, &b.reduced}))
      EXPECT_EQ(layer_or_zero(ab.reduced, x), layer_add(layer_or_zero(a.reduced, x), layer_or_zero(b.reduced, x)));
  }
}

TEST(SplitOmega, SucceedsExactlyWithoutAFiniteTopLayer) {
  std::mt19937_64 rng(23);
  int split = 0, refused = 0;
  for (int i = 0; i < 300; ++i) {
    const auto g = reduced_group(3, random_profile(rng));
    const Ordinal s = ulm_length(g);
    const bool finite_top = s.is_successor() && g.reduced.layer_at(s.predecessor())->is_finite();
    const auto fam = split_omega(g);
    ASSERT_EQ(fam.has_value(), !finite_top) << g.reduced.segments().size();
    if (!fam) {
      ++refused;
      continue;
    }
    ++split;
    EXPECT_EQ(fam->layerwise_sum(), g.reduced);
    EXPECT_EQ(fam->member_length(), s);
    if (s.is_successor()) {
      EXPECT_TRUE(fam->member_top_finite());
    }
  }
  EXPECT_GT(split, 0);
  EXPECT_GT(refused, 0);
}

TEST(SplitOmega, MembersOfAnInfiniteCyclicLayer) {
  const auto g = reduced_group(2, UlmProfile::from_layers({CyclicLayer::tail(1)}));
  const auto fam = split_omega(g);
  ASSERT_TRUE(fam);
  ASSERT_EQ(fam->segments.size(), 1u);
  const auto& split = fam->segments[0].split;
  // Every member must itself be unbounded, so no member may be empty.
  for (std::uint64_t k = 0; k < 6; ++k) {
    bool any = false;
    for (Exponent n = 1; n < 64; ++n) any = any || !split.member_count_at(k, n).is_zero();
    EXPECT_TRUE(any) << "member " << k;
  }
  // Summing the members back gives one copy of Z/p^n for each n.
  for (Exponent n = 1; n < 12; ++n) {
    std::uint64_t total = 0;
    for (std::uint64_t k = 0; k < 64; ++k) {
      const auto c = split.member_count_at(k, n);
      ASSERT_TRUE(c.is_finite());
      total += static_cast<std::uint64_t>(c.value());
    }
    EXPECT_EQ(total, 1u) << "exponent " << n;
  }
  using Pair = std::pair<std::uint64_t, std::uint64_t>;
  EXPECT_EQ(cantor_unpair(0), Pair(0, 0));
  EXPECT_EQ(cantor_unpair(4), Pair(1, 1));
}

TEST(Realization, FiniteDescriptionsMatchConcreteGroups) {
  // Z/2 + Z/8 + Z/8: the socle chain sees one summand of order 2 and two of order 8.
  const auto g = reduced_group(2, UlmProfile::from_layers({layer_add(CyclicLayer::cyclic(1), CyclicLayer::cyclic(3, 2))}));
  const auto group = oracle::realize_finite(g);
  EXPECT_EQ(group.to_string(), "Z/2 + Z/8 + Z/8");
  EXPECT_TRUE(oracle::check_realization(g).ok());
  EXPECT_THROW(oracle::realize_finite(prufer(2)), PreconditionError);
  EXPECT_THROW(oracle::realize_finite(reduced_group(2, UlmProfile::from_layers({CyclicLayer::tail(1)}))), PreconditionError);
}
