#include <gtest/gtest.h>

#include <functional>

#include "support/random_specs.hpp"
#include "ulmext/error.hpp"
#include "ulmext/oracle/fg_group.hpp"
#include "ulmext/oracle/int_matrix.hpp"

using namespace ulmext;
using namespace ulmext::oracle;

namespace {

// gcd of all k x k minors, by brute force over row and column subsets.
BigInt determinantal_divisor(const IntMatrix& m, std::size_t k) {
  BigInt g = 0;
  std::vector<std::size_t> rows, cols;
  std::function<void(std::size_t)> pick_cols;
  std::function<void(std::size_t)> pick_rows = [&](std::size_t from) {
    if (rows.size() == k) return pick_cols(0);
    for (std::size_t r = from; r < m.rows(); ++r) {
      rows.push_back(r);
      pick_rows(r + 1);
      rows.pop_back();
    }
  };
  pick_cols = [&](std::size_t from) {
    if (cols.size() == k) {
      IntMatrix sub(k, k);
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) sub(i, j) = m(rows[i], cols[j]);
      g = gcd(g, determinant(sub));
      return;
    }
    for (std::size_t c = from; c < m.cols(); ++c) {
      cols.push_back(c);
      pick_cols(c + 1);
      cols.pop_back();
    }
  };
  pick_rows(0);
  return g;
}

IntMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c) {
  IntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = static_cast<long long>(ulmext::testing::draw_below(rng, 13)) - 6;
  return m;
}

}  // namespace

TEST(Smith, WorkedExamples) {
  const IntMatrix m{{2, 4}, {6, 8}};
  const auto s = smith_normal_form(m);
  EXPECT_EQ(s.d, (IntMatrix{{2, 0}, {0, 4}}));
  EXPECT_EQ(s.u * m * s.v, s.d);
  EXPECT_EQ(smith_normal_form(IntMatrix::identity(3)).d, IntMatrix::identity(3));
  EXPECT_EQ(smith_normal_form(IntMatrix(2, 3)).d, IntMatrix(2, 3));
  EXPECT_EQ(smith_normal_form(IntMatrix(2, 3)).rank, 0u);
}

TEST(Smith, MatchesDeterminantalDivisors) {
  std::mt19937_64 rng(41);
  for (int t = 0; t < 150; ++t) {
    const std::size_t r = 1 + ulmext::testing::draw_below(rng, 4), c = 1 + ulmext::testing::draw_below(rng, 4);
    const IntMatrix m = random_matrix(rng, r, c);
    const auto s = smith_normal_form(m);
    ASSERT_TRUE(s.d.is_diagonal());
    EXPECT_EQ(s.u * m * s.v, s.d);
    EXPECT_EQ(s.u * s.u_inv, IntMatrix::identity(r));
    EXPECT_EQ(s.v * s.v_inv, IntMatrix::identity(c));
    const auto d = s.diagonal();
    BigInt prefix = 1;
    for (std::size_t k = 1; k <= std::min(r, c); ++k) {
      prefix *= d[k - 1];
      EXPECT_EQ(prefix, determinantal_divisor(m, k)) << m.to_string();
      if (k >= 2 && d[k - 1] != 0) {
        EXPECT_EQ(d[k - 1] % d[k - 2], 0);
      }
    }
  }
}

IntMatrix reduced(const IntMatrix& m, const BigInt& mod) {
  IntMatrix out = m;
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) = ulmext::mod_floor(m(r, c), mod);
  return out;
}

// Over Z/M the invariants are the gcds of the integer ones with M.
TEST(Smith, ModularFormAgreesWithIntegerForm) {
  std::mt19937_64 rng(43);
  for (int t = 0; t < 150; ++t) {
    const std::size_t r = 1 + ulmext::testing::draw_below(rng, 5), c = 1 + ulmext::testing::draw_below(rng, 5);
    const BigInt mod = 2 + ulmext::testing::draw_below(rng, 30);
    const IntMatrix m = random_matrix(rng, r, c);
    const auto s = smith_normal_form_mod(m, mod);
    const auto exact = smith_normal_form(m).diagonal();
    const auto d = s.diagonal();
    for (std::size_t k = 0; k < d.size(); ++k)
      EXPECT_EQ(ulmext::gcd(d[k], mod), ulmext::gcd(exact[k], mod)) << m.to_string() << " mod " << mod;
    EXPECT_TRUE(s.d.is_diagonal());
    EXPECT_EQ(reduced(s.u * m * s.v, mod), s.d);
    EXPECT_EQ(reduced(s.u * s.u_inv, mod), reduced(IntMatrix::identity(r), mod));
    EXPECT_EQ(reduced(s.v * s.v_inv, mod), reduced(IntMatrix::identity(c), mod));
  }
}

TEST(Smith, KernelIsExact) {
  std::mt19937_64 rng(42);
  for (int t = 0; t < 100; ++t) {
    const IntMatrix m = random_matrix(rng, 2, 4);
    const IntMatrix k = integer_kernel(m);
    EXPECT_TRUE((m * k).is_zero());
    EXPECT_EQ(k.cols(), 4 - smith_normal_form(m).rank);
  }
}

TEST(FgGroup, CanonicalForms) {
  EXPECT_EQ(FgGroup::from_cyclics({6, 4}).to_string(), "Z/2 + Z/12");
  EXPECT_EQ(FgGroup::from_cyclics({1, 0, 3}).to_string(), "Z/3 + Z");
  EXPECT_EQ(FgGroup::from_cyclics({}).to_string(), "0");
  EXPECT_EQ(FgGroup::free(2).to_string(), "Z^2");
  EXPECT_EQ(FgGroup::from_presentation(IntMatrix{{2, 4}, {6, 8}}), FgGroup::from_cyclics({2, 4}));
  EXPECT_EQ(FgGroup::from_cyclics({2, 3}), FgGroup::cyclic(6));
}

TEST(FgGroup, HomAndExtClosedForms) {
  EXPECT_EQ(fg_ext(FgGroup::cyclic(4), FgGroup::cyclic(6)), FgGroup::cyclic(2));
  EXPECT_TRUE(fg_ext(FgGroup::cyclic(2), FgGroup::cyclic(3)).is_trivial());
  EXPECT_TRUE(fg_ext(FgGroup::free(1), FgGroup::cyclic(5)).is_trivial());
  EXPECT_EQ(fg_ext(FgGroup::cyclic(3), FgGroup::free(1)), FgGroup::cyclic(3));
  EXPECT_EQ(fg_hom(FgGroup::free(1), FgGroup::cyclic(6)), FgGroup::cyclic(6));
  EXPECT_TRUE(fg_hom(FgGroup::cyclic(6), FgGroup::free(2)).is_trivial());
  EXPECT_EQ(fg_hom(FgGroup::cyclic(4), FgGroup::cyclic(6)), FgGroup::cyclic(2));
}

TEST(FgGroup, ExtFromPresentations) {
  EXPECT_EQ(ext_via_presentation(FgGroup::from_presentation(IntMatrix{{4}}), FgGroup::cyclic(6)), FgGroup::cyclic(2));
  EXPECT_TRUE(ext_via_presentation(FgGroup::from_presentation(IntMatrix(2, 0)), FgGroup::cyclic(6)).is_trivial());
  EXPECT_EQ(ext_via_presentation(FgGroup::from_presentation(IntMatrix{{2, 0}, {0, 2}}), FgGroup::cyclic(2)),
            FgGroup::from_cyclics({2, 2}));
  EXPECT_THROW(ext_via_presentation(FgGroup::cyclic(4), FgGroup::cyclic(2)), PreconditionError);
}

TEST(FgGroup, HomCountMatchesEnumeration) {
  for (const auto& a : finite_abelian_groups_up_to(8))
    for (const auto& b : finite_abelian_groups_up_to(8)) {
      const auto homs = enumerate_homs(FiniteAbelian::of(a), FiniteAbelian::of(b));
      EXPECT_EQ(BigInt(homs.size()), fg_hom(a, b).order()) << a.to_string() << " -> " << b.to_string();
    }
}

TEST(FiniteAbelian, InvariantsFromTables) {
  for (const auto& g : finite_abelian_groups_up_to(24)) {
    const auto fa = FiniteAbelian::of(g);
    EXPECT_EQ(abelian_invariants_from_table(fa.order(), fa.addition_table(), 0), g);
  }
  const FiniteAbelian z2z4({2, 4});
  EXPECT_EQ(z2z4.element_order(z2z4.basis(1)), 4u);
  EXPECT_EQ(quotient_by(z2z4, {z2z4.basis(1)}).canonical, FgGroup::cyclic(2));
  EXPECT_EQ(subgroup_generated(z2z4, {z2z4.add(z2z4.basis(0), z2z4.basis(1))}).canonical, FgGroup::cyclic(4));
}
