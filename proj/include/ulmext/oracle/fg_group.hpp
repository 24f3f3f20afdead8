#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ulmext/bigint.hpp"
#include "ulmext/oracle/int_matrix.hpp"

namespace ulmext::oracle {

/// A finitely generated abelian group Z/d_1 + ... + Z/d_k + Z^r with
/// d_1 | d_2 | ... | d_k and every d_i >= 2.
///
/// When built from a presentation the relation matrix is kept: the group is
/// Z^n / (column span of `presentation`).
class FgGroup {
 public:
  FgGroup() = default;

  /// Any list of cyclic orders (0 means Z, 1 is dropped) in any order.
  static FgGroup from_cyclics(const std::vector<BigInt>& orders, std::uint64_t free_rank = 0);
  static FgGroup cyclic(const BigInt& order) { return from_cyclics({order}); }
  static FgGroup free(std::uint64_t rank) { return from_cyclics({}, rank); }
  /// Cokernel of the relation matrix (generators are rows).
  static FgGroup from_presentation(const IntMatrix& relations);

  const std::vector<BigInt>& invariants() const { return invariants_; }
  std::uint64_t free_rank() const { return free_rank_; }
  const std::optional<IntMatrix>& presentation() const { return presentation_; }

  bool is_finite() const { return free_rank_ == 0; }
  bool is_trivial() const { return invariants_.empty() && free_rank_ == 0; }
  /// Requires a finite group.
  BigInt order() const;
  /// Diagonal relation matrix realizing the canonical form.
  IntMatrix canonical_presentation() const;

  std::string to_string() const;  // "0", "Z/2 + Z/4", "Z/6 + Z^2"

  /// Compares canonical forms only; presentations are ignored.
  friend bool operator==(const FgGroup& a, const FgGroup& b) {
    return a.invariants_ == b.invariants_ && a.free_rank_ == b.free_rank_;
  }

 private:
  std::vector<BigInt> invariants_;
  std::uint64_t free_rank_ = 0;
  std::optional<IntMatrix> presentation_;
};

/// Hom(A, B) from Hom(Z/a, Z/b) = Z/gcd(a,b), Hom(Z/a, Z) = 0,
/// Hom(Z, B) = B and additivity in both arguments.
FgGroup fg_hom(const FgGroup& a, const FgGroup& b);

/// Ext(A, B) from Ext(Z/a, B) = B/aB, Ext(Z, -) = 0 and additivity.
FgGroup fg_ext(const FgGroup& a, const FgGroup& b);

/// Ext(A, B) as the cokernel of restriction Hom(F, B) -> Hom(R, B) for the
/// presentation A = F / R carried by `a`. Throws PreconditionError when `a`
/// has no presentation or the presentation disagrees with its canonical form.
FgGroup ext_via_presentation(const FgGroup& a, const FgGroup& b);

// ---------------------------------------------------------------------------
// Concrete finite groups.

/// Elements of Z/m_1 x ... x Z/m_k, indexed in mixed radix with the first
/// coordinate varying slowest. The moduli need not form a divisor chain.
class FiniteAbelian {
 public:
  using Element = std::vector<std::uint64_t>;

  FiniteAbelian() = default;
  explicit FiniteAbelian(std::vector<std::uint64_t> moduli);
  /// Requires a finite group whose order fits comfortably in memory.
  static FiniteAbelian of(const FgGroup& g);

  const std::vector<std::uint64_t>& moduli() const { return moduli_; }
  std::size_t rank() const { return moduli_.size(); }
  std::size_t order() const { return order_; }

  Element zero() const { return Element(moduli_.size(), 0); }
  Element add(const Element& x, const Element& y) const;
  Element neg(const Element& x) const;
  Element sub(const Element& x, const Element& y) const { return add(x, neg(y)); }
  Element scale(const Element& x, const BigInt& k) const;
  Element basis(std::size_t i) const;
  bool is_zero(const Element& x) const;

  std::size_t index(const Element& x) const;
  Element element(std::size_t index) const;
  /// Coordinate i of the element with the given index, without decoding it.
  std::uint64_t coordinate(std::size_t index, std::size_t i) const { return index / strides_[i] % moduli_[i]; }
  /// Row-major table of index sums, for hot loops over small groups.
  std::vector<std::size_t> addition_table() const;
  /// Reduces an integer vector coordinatewise.
  Element reduce(const std::vector<BigInt>& coords) const;

  /// Additive order of x.
  std::uint64_t element_order(const Element& x) const;

 private:
  std::vector<std::uint64_t> moduli_;
  std::vector<std::size_t> strides_;
  std::size_t order_ = 1;
};

/// Canonical form of a finite abelian group given only by its addition on
/// indices 0..n-1 (with `zero` the identity), read off from the sizes of the
/// p^k-torsion subgroups.
FgGroup abelian_invariants_from_table(std::size_t n, const std::vector<std::size_t>& add_table, std::size_t zero);

/// A homomorphism of finite abelian groups, stored by its values on the
/// basis vectors of the source.
struct FiniteHom {
  std::vector<FiniteAbelian::Element> images;
};

FiniteAbelian::Element apply(const FiniteAbelian& src, const FiniteAbelian& dst, const FiniteHom& f,
                             const FiniteAbelian::Element& x);

/// All homomorphisms src -> dst, in a fixed order.
std::vector<FiniteHom> enumerate_homs(const FiniteAbelian& src, const FiniteAbelian& dst);

/// A subgroup A of a finite group B given by generators, in canonical form
/// together with the embedding of its canonical basis.
struct SubgroupData {
  FgGroup canonical;
  FiniteAbelian group;
  FiniteHom embedding;  // group -> ambient
};

SubgroupData subgroup_generated(const FiniteAbelian& ambient, const std::vector<FiniteAbelian::Element>& gens);

/// B / <gens> in canonical form with the projection.
struct QuotientData {
  FgGroup canonical;
  FiniteAbelian group;
  FiniteHom projection;  // ambient -> group
};

QuotientData quotient_by(const FiniteAbelian& ambient, const std::vector<FiniteAbelian::Element>& gens);

}  // namespace ulmext::oracle
