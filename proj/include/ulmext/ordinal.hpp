#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "ulmext/bigint.hpp"

namespace ulmext {

/// A countable ordinal below epsilon_0 in hereditary Cantor normal form.
///
/// The value is the sum over terms of w^exponent * coefficient, with the
/// exponents strictly decreasing and every coefficient positive. The empty
/// term list is 0. Every constructor and arithmetic result is normalized, so
/// structural equality coincides with ordinal equality.
class Ordinal {
 public:
  struct Term;

  Ordinal() = default;
  Ordinal(std::uint64_t n);  // NOLINT: finite ordinals convert implicitly
  explicit Ordinal(const BigInt& n);

  static Ordinal omega();
  /// w^exponent * coefficient; coefficient 0 yields 0.
  static Ordinal omega_power(Ordinal exponent, BigInt coefficient = 1);
  /// Builds from arbitrary terms (any order, zero coefficients allowed) by
  /// left-to-right ordinal addition.
  static Ordinal from_terms(std::vector<Term> terms);

  const std::vector<Term>& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  bool is_finite() const;
  bool is_successor() const;
  bool is_limit() const;
  /// The finite value; requires is_finite().
  const BigInt& finite_value() const;
  /// Trailing finite part (coefficient of w^0).
  BigInt finite_part() const;
  /// The ordinal with its finite part removed (zero or a limit).
  Ordinal limit_part() const;
  /// a - 1 for a successor; requires is_successor().
  Ordinal predecessor() const;
  Ordinal successor() const;

  std::string to_string() const;

  friend bool operator==(const Ordinal&, const Ordinal&);
  friend std::strong_ordering operator<=>(const Ordinal&, const Ordinal&);

 private:
  friend Ordinal ord_add(const Ordinal&, const Ordinal&);
  friend Ordinal ord_left_subtract(const Ordinal&, const Ordinal&);
  // Terms must already be in canonical order.
  static Ordinal from_terms_unchecked(std::vector<Term> terms);

  std::vector<Term> terms_;
};

struct Ordinal::Term {
  Ordinal exponent;
  BigInt coefficient;

  friend bool operator==(const Term&, const Term&) = default;
};

enum class OrdinalKind { Zero, Successor, Limit };

std::strong_ordering ord_compare(const Ordinal& a, const Ordinal& b);
Ordinal ord_add(const Ordinal& a, const Ordinal& b);
/// The unique g with a + g = b. Throws PreconditionError when a > b.
Ordinal ord_left_subtract(const Ordinal& a, const Ordinal& b);
OrdinalKind ord_kind(const Ordinal& a);

inline Ordinal operator+(const Ordinal& a, const Ordinal& b) { return ord_add(a, b); }

struct OneLambdaN {
  Ordinal lambda;
  std::uint64_t n;
};

/// Writes mu = 1 + lambda + n with lambda zero or limit and n finite.
/// Throws PreconditionError for mu = 0.
OneLambdaN decompose_one_lambda_n(const Ordinal& mu);

/// Parses `w^2 + w*3 + 5`, `w^(w+1)*2`, `7`. Throws InputError with the
/// character offset (column) of the problem.
Ordinal parse_ordinal(std::string_view text);

/// A finite natural number or countably infinite.
class ExtendedCount {
 public:
  ExtendedCount() = default;
  ExtendedCount(std::uint64_t n) : value_(BigInt(n)) {}  // NOLINT
  explicit ExtendedCount(BigInt n);

  static ExtendedCount infinite();

  bool is_infinite() const { return std::holds_alternative<Infinite>(value_); }
  bool is_finite() const { return !is_infinite(); }
  bool is_zero() const;
  /// Requires is_finite().
  const BigInt& value() const;

  std::string to_string() const;  // decimal or "inf"

  friend bool operator==(const ExtendedCount&, const ExtendedCount&) = default;
  friend std::strong_ordering operator<=>(const ExtendedCount& a, const ExtendedCount& b);

 private:
  struct Infinite {
    friend bool operator==(Infinite, Infinite) = default;
  };
  std::variant<BigInt, Infinite> value_{BigInt(0)};
};

ExtendedCount count_add(const ExtendedCount& a, const ExtendedCount& b);
inline ExtendedCount operator+(const ExtendedCount& a, const ExtendedCount& b) {
  return count_add(a, b);
}
ExtendedCount count_mul(const ExtendedCount& a, const ExtendedCount& b);

/// A family of counts indexed by an infinite set, all equal to `item`.
struct InfiniteCountFamily {
  ExtendedCount item;
};

ExtendedCount count_sum(std::span<const ExtendedCount> finite_items,
                        std::span<const InfiniteCountFamily> infinite_families = {});

/// Parses a nonnegative decimal or `inf`.
ExtendedCount parse_count(std::string_view text);

}  // namespace ulmext
