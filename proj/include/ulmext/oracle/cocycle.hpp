#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ulmext/oracle/fg_group.hpp"

namespace ulmext::oracle {

/// A function c : C x C -> A for finite C, A, stored as element indices
/// (see FiniteAbelian::index) in row-major order over C x C.
struct Cocycle {
  FgGroup c;
  FgGroup a;
  std::vector<std::size_t> table;

  static Cocycle zero(const FgGroup& c, const FgGroup& a);
  std::size_t at(std::size_t x, std::size_t y) const;

  friend bool operator==(const Cocycle&, const Cocycle&) = default;
};

/// c(x,0) = 0, c(x,y) = c(y,x) and c(y,z) - c(x+y,z) + c(x,y+z) - c(x,y) = 0.
bool is_cocycle(const Cocycle& c);
/// (x,y) -> phi(y) - phi(x+y) + phi(x); phi given by A-indices with phi(0) = 0.
Cocycle coboundary(const FgGroup& c, const FgGroup& a, const std::vector<std::size_t>& phi);
Cocycle cocycle_add(const Cocycle& x, const Cocycle& y);
Cocycle cocycle_neg(const Cocycle& x);

/// A finite abelian group on indices 0..n-1 given by its addition table.
struct GroupTable {
  std::size_t n = 0;
  std::vector<std::size_t> add;  // n * n
  std::size_t zero = 0;
  std::vector<std::size_t> negation;

  std::size_t sum(std::size_t x, std::size_t y) const { return add[x * n + y]; }
  std::size_t neg(std::size_t x) const { return negation[x]; }
  std::size_t sub(std::size_t x, std::size_t y) const { return sum(x, neg(y)); }

  /// Fills zero and negation; throws PreconditionError unless the table is
  /// an abelian group (associativity checked exhaustively).
  static GroupTable from_addition(std::size_t n, std::vector<std::size_t> add);
};

/// 0 -> A --g--> X --h--> C -> 0 with every map given as an index table.
struct ExtensionTable {
  FgGroup a;
  FgGroup c;
  GroupTable x;
  std::vector<std::size_t> g;  // A-index -> X-index
  std::vector<std::size_t> h;  // X-index -> C-index
};

/// Throws PreconditionError naming the first violated condition.
void validate_extension(const ExtensionTable& e);

/// X = A x C with (a,x) + (b,y) = (a + b + c(x,y), x + y), X-index
/// a * |C| + x. Throws PreconditionError when the twisted table is not an
/// abelian group, which happens exactly when c is not a cocycle.
ExtensionTable extension_from_cocycle(const Cocycle& c);

/// t(0) = 0 and h(t(x)) = x, or PreconditionError.
Cocycle cocycle_from_extension(const ExtensionTable& e, const std::vector<std::size_t>& section);
/// Least X-index over each element of C, with t(0) = 0.
std::vector<std::size_t> canonical_section(const ExtensionTable& e);

/// Z(C, A), its coboundary subgroup B and Ext = Z / B, computed from the
/// solution module of the cocycle constraints. Never enumerates tables.
class CocycleGroup {
 public:
  CocycleGroup(const FgGroup& c, const FgGroup& a);
  ~CocycleGroup();
  CocycleGroup(CocycleGroup&&) noexcept;
  CocycleGroup& operator=(CocycleGroup&&) noexcept;

  const FgGroup& c() const;
  const FgGroup& a() const;

  BigInt cocycle_order() const;
  BigInt coboundary_order() const;
  /// Canonical form of Z / B.
  const FgGroup& quotient() const;

  /// Z / B as a product of cyclic groups with these (not necessarily
  /// canonical) moduli, the coordinates used by class_of / representative.
  const FiniteAbelian& class_group() const;
  FiniteAbelian::Element class_of(const Cocycle& c) const;
  Cocycle representative(const FiniteAbelian::Element& cls) const;

  /// Generators of Z as a group.
  std::vector<Cocycle> cocycle_generators() const;

  /// phi with coboundary(phi) = target, if target is a coboundary.
  std::optional<std::vector<std::size_t>> solve_coboundary(const Cocycle& target) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// phi (as A-indices over C) realizing psi(a + t1(x)) = a + phi(x) + t2(x).
std::optional<std::vector<std::size_t>> equivalence_witness(const ExtensionTable& e1, const ExtensionTable& e2);
/// Whether some isomorphism X1 -> X2 commutes with g and h; decided by a
/// linear solve in normalized coordinates.
bool extensions_equivalent(const ExtensionTable& e1, const ExtensionTable& e2);
/// The same question answered by backtracking over all bijections X1 -> X2,
/// with no normal form assumed. Throws PreconditionError for |X| > 16.
bool extensions_equivalent_exhaustive(const ExtensionTable& e1, const ExtensionTable& e2);

/// Pullback over C modulo the antidiagonal copy of A.
ExtensionTable baer_sum(const ExtensionTable& e1, const ExtensionTable& e2);
/// Same middle group with g replaced by g o (-1).
ExtensionTable baer_negative(const ExtensionTable& e);
ExtensionTable split_extension(const FgGroup& c, const FgGroup& a);

}  // namespace ulmext::oracle
