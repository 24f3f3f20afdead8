#include "ulmext/oracle/int_matrix.hpp"

#include <sstream>
#include <utility>

#include "ulmext/error.hpp"

namespace ulmext::oracle {

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long long>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw PreconditionError("IntMatrix: ragged initializer");
    for (long long v : r) data_.emplace_back(v);
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::diagonal(const std::vector<BigInt>& entries, std::size_t rows, std::size_t cols) {
  IntMatrix m(rows, cols);
  for (std::size_t i = 0; i < entries.size() && i < rows && i < cols; ++i) m(i, i) = entries[i];
  return m;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

IntMatrix IntMatrix::column_block(std::size_t first, std::size_t count) const {
  if (first + count > cols_) throw PreconditionError("IntMatrix::column_block out of range");
  IntMatrix out(rows_, count);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < count; ++c) out(r, c) = (*this)(r, first + c);
  return out;
}

IntMatrix IntMatrix::hconcat(const IntMatrix& rhs) const {
  if (rows_ != rhs.rows_) throw PreconditionError("IntMatrix::hconcat row mismatch");
  IntMatrix out(rows_, cols_ + rhs.cols_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) out(r, c) = (*this)(r, c);
    for (std::size_t c = 0; c < rhs.cols_; ++c) out(r, cols_ + c) = rhs(r, c);
  }
  return out;
}

bool IntMatrix::is_zero() const {
  for (const auto& v : data_)
    if (v != 0) return false;
  return true;
}

bool IntMatrix::is_diagonal() const {
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c)
      if (r != c && (*this)(r, c) != 0) return false;
  return true;
}

std::string IntMatrix::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t r = 0; r < rows_; ++r) {
    os << (r ? ",[" : "[");
    for (std::size_t c = 0; c < cols_; ++c) os << (c ? "," : "") << (*this)(r, c);
    os << ']';
  }
  os << ']';
  return os.str();
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols_ != b.rows_) throw PreconditionError("IntMatrix product dimension mismatch");
  IntMatrix out(a.rows_, b.cols_);
  for (std::size_t r = 0; r < a.rows_; ++r)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const BigInt& x = a(r, k);
      if (x == 0) continue;
      for (std::size_t c = 0; c < b.cols_; ++c) out(r, c) += x * b(k, c);
    }
  return out;
}

BigInt determinant(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw PreconditionError("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  // Bareiss elimination keeps every intermediate integral.
  IntMatrix a = m;
  BigInt sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t swap = k + 1;
      while (swap < n && a(swap, k) == 0) ++swap;
      if (swap == n) return 0;
      for (std::size_t c = 0; c < n; ++c) std::swap(a(k, c), a(swap, c));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

std::vector<BigInt> SmithForm::diagonal() const {
  std::vector<BigInt> out;
  for (std::size_t i = 0; i < d.rows() && i < d.cols(); ++i) out.push_back(d(i, i));
  return out;
}

namespace {

// Elementary operations applied simultaneously to D and the requested
// transforms. Row operations on D act on U from the left and on U^-1 from
// the right; column operations mirror that for V.
class SmithWorker {
 public:
  SmithWorker(const IntMatrix& m, unsigned parts, BigInt modulus = 0) : parts_(parts), mod_(std::move(modulus)) {
    f_.d = m;
    if (mod_ != 0)
      for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) f_.d(r, c) = mod_floor(m(r, c), mod_);
    const std::size_t r = m.rows(), c = m.cols();
    if (parts & kSmithU) f_.u = IntMatrix::identity(r);
    if (parts & kSmithUInv) f_.u_inv = IntMatrix::identity(r);
    if (parts & kSmithV) f_.v = IntMatrix::identity(c);
    if (parts & kSmithVInv) f_.v_inv = IntMatrix::identity(c);
  }

  SmithForm run() {
    IntMatrix& d = f_.d;
    const std::size_t rows = d.rows(), cols = d.cols();
    std::size_t t = 0;
    for (; t < rows && t < cols; ++t) {
      if (!place_smallest(t)) break;
      for (;;) {
        bool clean = clear_column(t);
        clean = clear_row(t) && clean;
        if (!clean) continue;
        // Enforce divisibility of the remaining block by the pivot.
        std::size_t bad_row = rows;
        for (std::size_t i = t + 1; i < rows && bad_row == rows; ++i)
          for (std::size_t j = t + 1; j < cols; ++j)
            if (d(i, j) % d(t, t) != 0) {
              bad_row = i;
              break;
            }
        if (bad_row == rows) break;
        row_add(t, bad_row, 1);
      }
      if (d(t, t) < 0) row_negate(t);
    }
    f_.rank = t;
    return std::move(f_);
  }

 private:
  // Moves the entry of least absolute value in the block [t.., t..] to (t,t).
  bool place_smallest(std::size_t t) {
    const IntMatrix& d = f_.d;
    std::size_t br = 0, bc = 0;
    bool found = false;
    BigInt best;
    for (std::size_t i = t; i < d.rows(); ++i)
      for (std::size_t j = t; j < d.cols(); ++j) {
        if (d(i, j) == 0) continue;
        BigInt a = abs(d(i, j));
        if (!found || a < best) {
          best = std::move(a);
          br = i;
          bc = j;
          found = true;
          if (best == 1) goto done;
        }
      }
  done:
    if (!found) return false;
    if (br != t) row_swap(t, br);
    if (bc != t) col_swap(t, bc);
    return true;
  }

  // Reduces column t below the pivot; returns true when it is already zero.
  bool clear_column(std::size_t t) {
    IntMatrix& d = f_.d;
    bool clean = true;
    for (std::size_t i = t + 1; i < d.rows(); ++i) {
      if (d(i, t) == 0) continue;
      BigInt q = d(i, t) / d(t, t);
      if (q != 0) row_add(i, t, -q);
      if (d(i, t) != 0) {
        row_swap(t, i);
        clean = false;
      }
    }
    return clean;
  }

  bool clear_row(std::size_t t) {
    IntMatrix& d = f_.d;
    bool clean = true;
    for (std::size_t j = t + 1; j < d.cols(); ++j) {
      if (d(t, j) == 0) continue;
      BigInt q = d(t, j) / d(t, t);
      if (q != 0) col_add(j, t, -q);
      if (d(t, j) != 0) {
        col_swap(t, j);
        clean = false;
      }
    }
    return clean;
  }

  // row_dst += k * row_src
  void row_add(std::size_t dst, std::size_t src, const BigInt& k) {
    add_rows(f_.d, dst, src, k, mod_);
    if (parts_ & kSmithU) add_rows(f_.u, dst, src, k, mod_);
    if (parts_ & kSmithUInv) add_cols(f_.u_inv, src, dst, -k, mod_);
  }
  void row_swap(std::size_t a, std::size_t b) {
    swap_rows(f_.d, a, b);
    if (parts_ & kSmithU) swap_rows(f_.u, a, b);
    if (parts_ & kSmithUInv) swap_cols(f_.u_inv, a, b);
  }
  void row_negate(std::size_t a) {
    negate_row(f_.d, a);
    if (parts_ & kSmithU) negate_row(f_.u, a);
    if (parts_ & kSmithUInv) negate_col(f_.u_inv, a);
  }
  // col_dst += k * col_src
  void col_add(std::size_t dst, std::size_t src, const BigInt& k) {
    add_cols(f_.d, dst, src, k, mod_);
    if (parts_ & kSmithV) add_cols(f_.v, dst, src, k, mod_);
    if (parts_ & kSmithVInv) add_rows(f_.v_inv, src, dst, -k, mod_);
  }
  void col_swap(std::size_t a, std::size_t b) {
    swap_cols(f_.d, a, b);
    if (parts_ & kSmithV) swap_cols(f_.v, a, b);
    if (parts_ & kSmithVInv) swap_rows(f_.v_inv, a, b);
  }

  static void add_rows(IntMatrix& m, std::size_t dst, std::size_t src, const BigInt& k, const BigInt& mod) {
    for (std::size_t c = 0; c < m.cols(); ++c)
      if (m(src, c) != 0) {
        m(dst, c) += k * m(src, c);
        if (mod != 0) m(dst, c) = mod_floor(m(dst, c), mod);
      }
  }
  static void add_cols(IntMatrix& m, std::size_t dst, std::size_t src, const BigInt& k, const BigInt& mod) {
    for (std::size_t r = 0; r < m.rows(); ++r)
      if (m(r, src) != 0) {
        m(r, dst) += k * m(r, src);
        if (mod != 0) m(r, dst) = mod_floor(m(r, dst), mod);
      }
  }
  static void swap_rows(IntMatrix& m, std::size_t a, std::size_t b) {
    for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(a, c), m(b, c));
  }
  static void swap_cols(IntMatrix& m, std::size_t a, std::size_t b) {
    for (std::size_t r = 0; r < m.rows(); ++r) std::swap(m(r, a), m(r, b));
  }
  static void negate_row(IntMatrix& m, std::size_t a) {
    for (std::size_t c = 0; c < m.cols(); ++c) m(a, c) = -m(a, c);
  }
  static void negate_col(IntMatrix& m, std::size_t a) {
    for (std::size_t r = 0; r < m.rows(); ++r) m(r, a) = -m(r, a);
  }

  unsigned parts_;
  // Nonzero when working in Z/mod_: every entry stays in [0, mod_), so the
  // truncated remainders of the Euclidean steps never change sign and the
  // pivot still strictly decreases.
  BigInt mod_;
  SmithForm f_;
};

}  // namespace

SmithForm smith_normal_form(const IntMatrix& m, unsigned parts) { return SmithWorker(m, parts).run(); }

SmithForm smith_normal_form_mod(const IntMatrix& m, const BigInt& modulus, unsigned parts) {
  if (modulus <= 0) throw PreconditionError("smith_normal_form_mod needs a positive modulus");
  return SmithWorker(m, parts, modulus).run();
}

IntMatrix integer_kernel(const IntMatrix& m) {
  SmithForm f = smith_normal_form(m, kSmithV);
  return f.v.column_block(f.rank, m.cols() - f.rank);
}

}  // namespace ulmext::oracle
