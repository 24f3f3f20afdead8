#pragma once

#include <string>
#include <vector>

#include "ulmext/oracle/fg_group.hpp"
#include "ulmext/pgroup.hpp"

namespace ulmext::oracle {

/// The finite p-group with the given bounded, finite Ulm data.
/// Throws PreconditionError for the symbolic prime, a divisible part, an
/// infinite layer or Ulm length above 1.
FgGroup realize_finite(const PGroupDesc& desc);

struct RealizationReport {
  FgGroup group;
  std::vector<std::string> mismatches;

  bool ok() const { return mismatches.empty(); }
};

/// Walks the chain p^j G of the realized group element by element and
/// compares each quotient p^(n-1)G[p] / p^n G[p] with the declared number of
/// Z/p^n summands; also checks that the chain reaches 0, i.e. u_1 = 0.
RealizationReport check_realization(const PGroupDesc& desc, std::size_t max_elements = 1u << 16);

}  // namespace ulmext::oracle
