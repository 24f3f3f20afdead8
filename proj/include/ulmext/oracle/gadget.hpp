#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace ulmext::oracle {

/// Finite truncation of the reduction of E0^omega: blocks
/// A_k = (Z/p^(l_k))^2 for k < width, rows i < depth, and a pattern
/// eps[i][k] in {0, ..., p-1}.
struct GadgetConfig {
  std::uint64_t p = 2;
  std::size_t depth = 0;  // I
  std::size_t width = 0;  // K
  std::vector<std::uint64_t> exponents;  // l_k; empty means l_k = 2k + 1
  std::vector<std::vector<std::uint64_t>> pattern;  // depth x width

  /// p^(l_k).
  std::uint64_t modulus(std::size_t k) const;
  std::uint64_t exponent(std::size_t k) const;
};

using GadgetElement = std::array<std::uint64_t, 2>;

/// Throws PreconditionError for p < 2, depth > width, l_k < 2k + 1,
/// pattern entries outside [0, p) or moduli that overflow 64 bits.
void validate_gadget(const GadgetConfig& cfg);

/// a_{i,k}(eps) = p^(2k - i) * (1, eps) in A_k, for i <= 2k.
GadgetElement gadget_a(const GadgetConfig& cfg, std::size_t i, std::size_t k, std::uint64_t eps);

/// b[i][k] = sum_{j <= i} a_{j,k}(eps[i-j][k]) for k >= i, and 0 for k < i.
std::vector<std::vector<GadgetElement>> gadget_build(const GadgetConfig& cfg);

/// Violations of the element laws (membership in p^(2k-i) A_k, order
/// p^(i+1), p * a_{i+1,k} = a_{i,k}, pairwise distinct over eps).
std::vector<std::string> gadget_element_failures(const GadgetConfig& cfg);

/// Positions (i, k), k >= i + 1, where p * b[i+1][k] != b[i][k].
std::vector<std::string> gadget_tower_failures(const GadgetConfig& cfg, const std::vector<std::vector<GadgetElement>>& b);

struct GadgetAgreement {
  bool pattern_agree = false;
  bool b_agree = false;
};

/// Compares eps and eps2 (and their b tables) on {(i, k) : k >= k(i)}.
/// Thresholds must be nondecreasing with i <= k(i) <= width.
GadgetAgreement gadget_equiv_check(const GadgetConfig& cfg, const std::vector<std::vector<std::uint64_t>>& eps,
                                   const std::vector<std::vector<std::uint64_t>>& eps2,
                                   const std::vector<std::size_t>& thresholds);

}  // namespace ulmext::oracle
