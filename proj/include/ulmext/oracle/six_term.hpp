#pragma once

#include <string>
#include <vector>

#include "ulmext/oracle/fg_group.hpp"

namespace ulmext::oracle {

/// 0 -> A --iota--> B --pi--> C -> 0 over concrete finite groups whose
/// coordinates are the canonical ones of the accompanying FgGroup.
struct ShortExactSequence {
  FgGroup a_group, b_group, c_group;
  FiniteAbelian a, b, c;
  FiniteHom iota, pi;
};

/// A = <gens> inside B and C = B / A, both in canonical coordinates.
ShortExactSequence ses_from_subgroup(const FgGroup& b, const std::vector<FiniteAbelian::Element>& gens);

/// Throws PreconditionError unless iota is injective, pi surjective and
/// image(iota) = kernel(pi).
void validate_ses(const ShortExactSequence& s);

struct NodeCheck {
  std::string node;
  bool ok = false;
  std::string detail;
};

struct SixTermReport {
  // Orders of Hom(C,G), Hom(B,G), Hom(A,G), Ext(C,G), Ext(B,G), Ext(A,G).
  std::vector<std::size_t> orders;
  std::vector<NodeCheck> nodes;
  bool delta_zero = false;

  bool exact() const;
};

/// Builds the six groups and five maps of
///   0 -> Hom(C,G) -> Hom(B,G) -> Hom(A,G) -> Ext(C,G) -> Ext(B,G) -> Ext(A,G) -> 0
/// with the connecting map phi -> class of (x,y) -> phi(t(y) - t(x+y) + t(x)),
/// and checks exactness at every node.
SixTermReport six_term_check(const ShortExactSequence& s, const FgGroup& g);

}  // namespace ulmext::oracle
