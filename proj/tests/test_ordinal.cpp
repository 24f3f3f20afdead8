#include <gtest/gtest.h>

#include <map>

#include "support/random_specs.hpp"
#include "ulmext/error.hpp"
#include "ulmext/ordinal.hpp"

using namespace ulmext;
using ulmext::testing::random_ordinal;

namespace {

// Ordinals below w^w as exponent -> coefficient, used as an independent model.
using Poly = std::map<std::uint64_t, BigInt, std::greater<>>;

std::optional<Poly> to_poly(const Ordinal& a) {
  Poly p;
  for (const auto& t : a.terms()) {
    if (!t.exponent.is_finite()) return std::nullopt;
    p[static_cast<std::uint64_t>(t.exponent.finite_value())] = t.coefficient;
  }
  return p;
}

// a + b: terms of a below the leading exponent of b are absorbed.
Poly poly_add(const Poly& a, const Poly& b) {
  if (b.empty()) return a;
  const auto lead = b.begin()->first;
  Poly r;
  for (const auto& [e, c] : a)
    if (e > lead) r[e] = c;
  for (const auto& [e, c] : b) r[e] += c;
  if (auto it = a.find(lead); it != a.end()) r[lead] += it->second;
  return r;
}

int poly_cmp(const Poly& a, const Poly& b) {
  auto i = a.begin();
  auto j = b.begin();
  for (; i != a.end() && j != b.end(); ++i, ++j) {
    if (i->first != j->first) return i->first > j->first ? 1 : -1;
    if (i->second != j->second) return i->second > j->second ? 1 : -1;
  }
  if (i == a.end() && j == b.end()) return 0;
  return i == a.end() ? -1 : 1;
}

Ordinal small_ordinal(std::mt19937_64& rng) { return random_ordinal(rng, 0); }

}  // namespace

TEST(Ordinal, ParsesAndPrintsCanonically) {
  EXPECT_EQ(parse_ordinal("w^2 + w*3 + 5").to_string(), "w^2 + w*3 + 5");
  EXPECT_EQ(parse_ordinal("w^(w+1)*2").to_string(), "w^(w + 1)*2");
  EXPECT_EQ(parse_ordinal("7"), Ordinal(7));
  EXPECT_EQ(parse_ordinal("0"), Ordinal(0));
  EXPECT_EQ(parse_ordinal("w"), Ordinal::omega());
  EXPECT_EQ(parse_ordinal("w^w").to_string(), "w^w");
}

TEST(Ordinal, MalformedInputReportsColumn) {
  try {
    parse_ordinal("w^");
    FAIL() << "no error";
  } catch (const InputError& e) {
    EXPECT_EQ(e.column(), 3);
  }
  EXPECT_THROW(parse_ordinal("w + w^2"), InputError);  // exponents must decrease
  EXPECT_THROW(parse_ordinal(""), InputError);
  EXPECT_THROW(parse_ordinal("w*0"), InputError);
}

TEST(Ordinal, AdditionAbsorbsSmallerTerms) {
  const Ordinal w = Ordinal::omega();
  EXPECT_EQ(Ordinal(1) + w, w);
  EXPECT_EQ(w + Ordinal(1), parse_ordinal("w + 1"));
  EXPECT_EQ(parse_ordinal("w*2 + 3") + parse_ordinal("w^2"), parse_ordinal("w^2"));
  EXPECT_EQ(parse_ordinal("w^2 + w") + parse_ordinal("w*2 + 1"), parse_ordinal("w^2 + w*3 + 1"));
}

TEST(Ordinal, LeftSubtraction) {
  EXPECT_EQ(ord_left_subtract(Ordinal(1), Ordinal::omega()), Ordinal::omega());
  EXPECT_EQ(ord_left_subtract(parse_ordinal("w + 2"), parse_ordinal("w*2")), parse_ordinal("w"));
  EXPECT_THROW(ord_left_subtract(Ordinal(3), Ordinal(2)), PreconditionError);
}

TEST(Ordinal, KindsAndNeighbours) {
  EXPECT_EQ(ord_kind(Ordinal(0)), OrdinalKind::Zero);
  EXPECT_EQ(ord_kind(parse_ordinal("w + 4")), OrdinalKind::Successor);
  EXPECT_EQ(ord_kind(parse_ordinal("w^2*3")), OrdinalKind::Limit);
  EXPECT_EQ(parse_ordinal("w + 4").predecessor(), parse_ordinal("w + 3"));
  EXPECT_THROW(Ordinal::omega().predecessor(), PreconditionError);
}

TEST(Ordinal, DecomposeOneLambdaN) {
  auto d = decompose_one_lambda_n(Ordinal(3));
  EXPECT_TRUE(d.lambda.is_zero());
  EXPECT_EQ(d.n, 2u);
  d = decompose_one_lambda_n(parse_ordinal("w*2 + 5"));
  EXPECT_EQ(d.lambda, parse_ordinal("w*2"));
  EXPECT_EQ(d.n, 5u);
  d = decompose_one_lambda_n(Ordinal::omega());
  EXPECT_EQ(d.lambda, Ordinal::omega());
  EXPECT_EQ(d.n, 0u);
  EXPECT_THROW(decompose_one_lambda_n(Ordinal(0)), PreconditionError);
}

TEST(Ordinal, AgreesWithPolynomialModelBelowOmegaToTheOmega) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 2000; ++i) {
    const Ordinal a = small_ordinal(rng), b = small_ordinal(rng);
    const auto pa = to_poly(a), pb = to_poly(b);
    ASSERT_TRUE(pa && pb);
    EXPECT_EQ(to_poly(a + b), poly_add(*pa, *pb)) << a.to_string() << " + " << b.to_string();
    const int c = poly_cmp(*pa, *pb);
    EXPECT_EQ(a < b, c < 0);
    EXPECT_EQ(a == b, c == 0);
  }
}

TEST(Ordinal, RandomValuesRoundTripThroughText) {
  std::mt19937_64 rng(12);
  for (int i = 0; i < 500; ++i) {
    const Ordinal a = random_ordinal(rng);
    EXPECT_EQ(parse_ordinal(a.to_string()), a) << a.to_string();
  }
}

TEST(Ordinal, AlgebraLaws) {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 1000; ++i) {
    const Ordinal a = random_ordinal(rng), b = random_ordinal(rng), c = random_ordinal(rng);
    EXPECT_EQ((a + b) + c, a + (b + c));
    EXPECT_EQ(ord_left_subtract(a, a + b), b);
    EXPECT_GE(a + b, a);
    if (!b.is_zero()) {
      EXPECT_GT(a + b, a);  // strictly increasing in the right argument
      const auto d = decompose_one_lambda_n(b);
      EXPECT_TRUE(d.lambda.is_zero() || d.lambda.is_limit());
      EXPECT_EQ(Ordinal(1) + d.lambda + Ordinal(d.n), b);
    }
  }
}

TEST(Count, ArithmeticAndAbsorption) {
  const auto inf = ExtendedCount::infinite();
  EXPECT_EQ(ExtendedCount(2) + ExtendedCount(3), ExtendedCount(5));
  EXPECT_EQ(ExtendedCount(2) + inf, inf);
  EXPECT_EQ(count_mul(ExtendedCount(0), inf), ExtendedCount(0));
  EXPECT_EQ(count_mul(ExtendedCount(2), inf), inf);
  const std::vector<ExtendedCount> items{1, 2, 3};
  EXPECT_EQ(count_sum(items), ExtendedCount(6));
  const std::vector<InfiniteCountFamily> zeros{{ExtendedCount(0)}};
  EXPECT_EQ(count_sum(items, zeros), ExtendedCount(6));
  const std::vector<InfiniteCountFamily> ones{{ExtendedCount(1)}};
  EXPECT_EQ(count_sum(items, ones), inf);
  EXPECT_LT(ExtendedCount(1000000), inf);
  EXPECT_EQ(parse_count("inf"), inf);
  EXPECT_THROW(parse_count("-1"), InputError);
}
