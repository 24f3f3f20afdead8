#include "ulmext/oracle/gadget.hpp"

#include <limits>
#include <set>

#include "ulmext/error.hpp"

namespace ulmext::oracle {

namespace {

std::uint64_t checked_pow(std::uint64_t p, std::uint64_t e) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < e; ++i) {
    if (r > std::numeric_limits<std::uint64_t>::max() / (2 * p)) throw PreconditionError("gadget modulus overflows 64 bits");
    r *= p;
  }
  return r;
}

GadgetElement add(const GadgetElement& x, const GadgetElement& y, std::uint64_t m) {
  return {(x[0] + y[0]) % m, (x[1] + y[1]) % m};
}

GadgetElement times(const GadgetElement& x, std::uint64_t k, std::uint64_t m) {
  return {static_cast<std::uint64_t>((static_cast<unsigned __int128>(x[0]) * k) % m),
          static_cast<std::uint64_t>((static_cast<unsigned __int128>(x[1]) * k) % m)};
}

void check_pattern(const GadgetConfig& cfg, const std::vector<std::vector<std::uint64_t>>& eps) {
  if (eps.size() != cfg.depth) throw PreconditionError("gadget pattern must have depth rows");
  for (const auto& row : eps) {
    if (row.size() != cfg.width) throw PreconditionError("gadget pattern rows must have width entries");
    for (auto v : row)
      if (v >= cfg.p) throw PreconditionError("gadget pattern entries must lie in [0, p)");
  }
}

}  // namespace

std::uint64_t GadgetConfig::exponent(std::size_t k) const { return exponents.empty() ? 2 * k + 1 : exponents.at(k); }

std::uint64_t GadgetConfig::modulus(std::size_t k) const { return checked_pow(p, exponent(k)); }

void validate_gadget(const GadgetConfig& cfg) {
  if (cfg.p < 2) throw PreconditionError("gadget prime must be at least 2");
  if (cfg.depth > cfg.width) throw PreconditionError("gadget depth must not exceed width");
  if (!cfg.exponents.empty() && cfg.exponents.size() != cfg.width)
    throw PreconditionError("gadget exponents must list one value per block");
  for (std::size_t k = 0; k < cfg.width; ++k) {
    if (cfg.exponent(k) < 2 * k + 1) throw PreconditionError("gadget block " + std::to_string(k) + " needs l_k >= 2k+1");
    cfg.modulus(k);
  }
  check_pattern(cfg, cfg.pattern);
}

GadgetElement gadget_a(const GadgetConfig& cfg, std::size_t i, std::size_t k, std::uint64_t eps) {
  if (i > 2 * k) throw PreconditionError("a_{i,k} needs i <= 2k");
  const std::uint64_t m = cfg.modulus(k);
  const std::uint64_t s = checked_pow(cfg.p, 2 * k - i) % m;
  return times({1, eps}, s, m);
}

std::vector<std::vector<GadgetElement>> gadget_build(const GadgetConfig& cfg) {
  validate_gadget(cfg);
  std::vector<std::vector<GadgetElement>> b(cfg.depth, std::vector<GadgetElement>(cfg.width, GadgetElement{0, 0}));
  for (std::size_t i = 0; i < cfg.depth; ++i)
    for (std::size_t k = i; k < cfg.width; ++k) {
      const std::uint64_t m = cfg.modulus(k);
      for (std::size_t j = 0; j <= i; ++j) b[i][k] = add(b[i][k], gadget_a(cfg, j, k, cfg.pattern[i - j][k]), m);
    }
  return b;
}

std::vector<std::string> gadget_element_failures(const GadgetConfig& cfg) {
  validate_gadget(cfg);
  std::vector<std::string> out;
  for (std::size_t k = 0; k < cfg.width; ++k) {
    const std::uint64_t m = cfg.modulus(k);
    for (std::size_t i = 0; i < cfg.depth && i <= 2 * k; ++i) {
      const std::string at = "(i=" + std::to_string(i) + ",k=" + std::to_string(k) + ")";
      const std::uint64_t height = checked_pow(cfg.p, 2 * k - i);
      const std::uint64_t order = checked_pow(cfg.p, i + 1);
      std::set<GadgetElement> seen;
      for (std::uint64_t e = 0; e < cfg.p; ++e) {
        const GadgetElement a = gadget_a(cfg, i, k, e);
        seen.insert(a);
        if (a[0] % height != 0 || a[1] % height != 0) out.push_back("a" + at + " not in p^(2k-i) A_k");
        if (times(a, order, m) != GadgetElement{0, 0} || times(a, order / cfg.p, m) == GadgetElement{0, 0})
          out.push_back("a" + at + " does not have order p^(i+1)");
        if (i + 1 < cfg.depth && i + 1 <= 2 * k && times(gadget_a(cfg, i + 1, k, e), cfg.p, m) != a)
          out.push_back("p * a_{i+1,k} != a_{i,k} at " + at);
      }
      if (seen.size() != cfg.p) out.push_back("a" + at + "(eps) not pairwise distinct");
    }
  }
  return out;
}

std::vector<std::string> gadget_tower_failures(const GadgetConfig& cfg, const std::vector<std::vector<GadgetElement>>& b) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i + 1 < cfg.depth; ++i)
    for (std::size_t k = i + 1; k < cfg.width; ++k)
      if (times(b[i + 1][k], cfg.p, cfg.modulus(k)) != b[i][k])
        out.push_back("p * b[" + std::to_string(i + 1) + "][" + std::to_string(k) + "] != b[" + std::to_string(i) + "][" +
                      std::to_string(k) + "]");
  return out;
}

GadgetAgreement gadget_equiv_check(const GadgetConfig& cfg, const std::vector<std::vector<std::uint64_t>>& eps,
                                   const std::vector<std::vector<std::uint64_t>>& eps2,
                                   const std::vector<std::size_t>& thresholds) {
  if (thresholds.size() != cfg.depth) throw PreconditionError("one threshold per row is required");
  for (std::size_t i = 0; i < thresholds.size(); ++i) {
    if (thresholds[i] < i || thresholds[i] > cfg.width) throw PreconditionError("threshold k(i) must lie in [i, width]");
    if (i > 0 && thresholds[i] < thresholds[i - 1]) throw PreconditionError("thresholds must be nondecreasing");
  }
  GadgetConfig c1 = cfg, c2 = cfg;
  c1.pattern = eps;
  c2.pattern = eps2;
  const auto b1 = gadget_build(c1), b2 = gadget_build(c2);
  GadgetAgreement r{true, true};
  for (std::size_t i = 0; i < cfg.depth; ++i)
    for (std::size_t k = thresholds[i]; k < cfg.width; ++k) {
      r.pattern_agree = r.pattern_agree && eps[i][k] == eps2[i][k];
      r.b_agree = r.b_agree && b1[i][k] == b2[i][k];
    }
  return r;
}

}  // namespace ulmext::oracle
