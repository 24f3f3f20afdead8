#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "ulmext/bigint.hpp"

namespace ulmext::oracle {

/// Dense row-major matrix of arbitrary-precision integers.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  IntMatrix(std::initializer_list<std::initializer_list<long long>> rows);

  static IntMatrix identity(std::size_t n);
  static IntMatrix diagonal(const std::vector<BigInt>& entries, std::size_t rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  BigInt& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const BigInt& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  IntMatrix transpose() const;
  IntMatrix column_block(std::size_t first, std::size_t count) const;
  /// Columns of `*this` followed by columns of `rhs`.
  IntMatrix hconcat(const IntMatrix& rhs) const;
  bool is_zero() const;
  bool is_diagonal() const;
  std::string to_string() const;

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<BigInt> data_;
};

/// Determinant by fraction-free elimination; requires a square matrix.
BigInt determinant(const IntMatrix& m);

/// U * M * V = D with U, V unimodular and D diagonal in divisor-chain form
/// (d_1 | d_2 | ..., nonnegative, zeros last). The inverses are tracked
/// alongside so callers never invert a unimodular matrix themselves.
struct SmithForm {
  IntMatrix u, d, v;
  IntMatrix u_inv, v_inv;
  std::size_t rank = 0;

  std::vector<BigInt> diagonal() const;
};

enum SmithParts : unsigned {
  kSmithU = 1u << 0,
  kSmithV = 1u << 1,
  kSmithUInv = 1u << 2,
  kSmithVInv = 1u << 3,
  kSmithAll = kSmithU | kSmithV | kSmithUInv | kSmithVInv,
};

/// Transforms not requested in `parts` are left as 0x0 matrices; skipping the
/// row transforms of a tall matrix saves most of the work.
SmithForm smith_normal_form(const IntMatrix& m, unsigned parts = kSmithAll);

/// The same decomposition over Z/modulus: U * M * V = D modulo `modulus`,
/// with every entry kept in [0, modulus). Diagonal entries are only fixed up
/// to units, so the cokernel is the sum of Z/gcd(d_i, modulus). Avoids the
/// entry growth of the integer version when only that cokernel matters.
SmithForm smith_normal_form_mod(const IntMatrix& m, const BigInt& modulus, unsigned parts = kSmithAll);

/// A basis of {x in Z^cols : M x = 0}, one vector per column.
IntMatrix integer_kernel(const IntMatrix& m);

}  // namespace ulmext::oracle
