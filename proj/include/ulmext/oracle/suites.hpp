#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "ulmext/oracle/fg_group.hpp"

namespace ulmext::oracle {

/// Every finite abelian group of order <= max_order, by order and then by
/// invariant factors.
std::vector<FgGroup> finite_abelian_groups_up_to(std::uint64_t max_order);

/// Uniform integer in [0, n) drawn as rng() % n, which keeps seeded runs
/// identical across standard libraries.
std::uint64_t draw_below(std::mt19937_64& rng, std::uint64_t n);

struct CheckOutcome {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct SuiteReport {
  std::string suite;
  std::vector<CheckOutcome> checks;

  std::size_t failures() const;
  bool passed() const { return failures() == 0; }
};

struct SuiteOptions {
  std::uint64_t seed = 0;
  std::uint64_t max_order = 0;  // 0 picks the suite's default
  std::uint64_t trials = 0;     // 0 picks the suite's default
  std::uint64_t p = 2;
  std::size_t depth = 4;
  std::size_t width = 4;
};

/// snf, ext3way, equivclasses, sixterm, gadget, profile-realization.
const std::vector<std::string>& suite_names();

/// Throws PreconditionError for an unknown suite or out-of-range options.
SuiteReport run_suite(const std::string& name, const SuiteOptions& opts);

}  // namespace ulmext::oracle
