#include "ulmext/complexity.hpp"

#include "ulmext/error.hpp"

namespace ulmext {

namespace {

std::string level_string(const Ordinal& a) {
  std::string s = a.to_string();
  return a.is_finite() || a == Ordinal::omega() ? s : "(" + s + ")";
}

// Levels of the form 1 + l + n + 2 with l zero or limit: >= 3 when finite,
// otherwise l + m with m >= 2.
bool has_two_successor_steps(const Ordinal& a) {
  if (a.is_finite()) return a.finite_value() >= 3;
  return a.finite_part() >= 2;
}

}  // namespace

std::string shape_name(ClassShape s) {
  switch (s) {
    case ClassShape::Pi: return "Pi";
    case ClassShape::Sigma: return "Sigma";
    case ClassShape::DPi: return "DPi";
  }
  return "?";
}

ClassShape parse_shape(const std::string& s) {
  if (s == "Pi") return ClassShape::Pi;
  if (s == "Sigma") return ClassShape::Sigma;
  if (s == "DPi") return ClassShape::DPi;
  throw InputError("unknown class shape '" + s + "'");
}

std::string ComplexityClass::to_string() const {
  const std::string lv = level_string(level);
  switch (shape) {
    case ClassShape::Pi: return "Pi^0_" + lv;
    case ClassShape::Sigma: return "Sigma^0_" + lv;
    case ClassShape::DPi: return "D(Pi^0_" + lv + ")";
  }
  return "?";
}

std::string ComplexityClass::pretty() const {
  static const char* const digits[] = {"₀", "₁", "₂", "₃", "₄", "₅", "₆", "₇", "₈", "₉"};
  std::string lv;
  if (level.is_finite() && level.finite_value() < 1000) {
    for (char c : level.finite_value().str()) lv += digits[c - '0'];
  } else {
    lv = "_" + level_string(level);
  }
  switch (shape) {
    case ClassShape::Pi: return "Π⁰" + lv;
    case ClassShape::Sigma: return "Σ⁰" + lv;
    case ClassShape::DPi: return "D(Π⁰" + lv + ")";
  }
  return "?";
}

bool class_leq(const ComplexityClass& a, const ComplexityClass& b) {
  // Pi_a, Sigma_a  ⊆  D(Pi_a)  ⊆  Delta_{a+1}; Pi_a and Sigma_a incomparable.
  const auto& x = a.level;
  const auto& y = b.level;
  if (x < y) return true;
  if (y < x) return false;
  if (a.shape == b.shape) return true;
  return b.shape == ClassShape::DPi;
}

bool is_legal(const ComplexityClass& c) {
  const Ordinal& a = c.level;
  if (a.is_zero()) return false;
  switch (c.shape) {
    case ClassShape::Pi:
      // 1 + l (a = 1 or a limit) or 1 + l + n + 2.
      return a == Ordinal(1) || a.is_limit() || has_two_successor_steps(a);
    case ClassShape::Sigma:
      // 1 + l + 1: 2 or (limit + 1).
      return a == Ordinal(2) || (!a.is_finite() && a.finite_part() == 1);
    case ClassShape::DPi:
      return has_two_successor_steps(a);
  }
  return false;
}

Ordinal pi_ceiling(const ComplexityClass& c) {
  return c.shape == ClassShape::Pi ? c.level : c.level.successor();
}

Ordinal solecki_rank(const ComplexityClass& c) {
  if (!is_legal(c)) throw PreconditionError("solecki_rank of illegal class " + c.to_string());
  // Pi_{1+l} <-> l;  Sigma_{1+l+1}, D(Pi_{1+l+n}) <-> l+n;  Pi_{1+l+n+1} <-> l+n.
  const Ordinal& a = c.level;
  auto minus_one_left = [](const Ordinal& x) { return x.is_finite() ? Ordinal(x.finite_value() - 1) : x; };
  if (c.shape == ClassShape::Pi) {
    if (a == Ordinal(1) || a.is_limit()) return minus_one_left(a);
    return minus_one_left(a.predecessor());
  }
  return minus_one_left(a);
}

std::string BenchmarkLevel::name() const {
  switch (level) {
    case Benchmark::Smooth: return "smooth";
    case Benchmark::BireducibleE0: return "bireducible with E0";
    case Benchmark::ReducibleE0OmegaNotE0: return "reducible to E0^omega, not to E0";
    case Benchmark::AboveE0Omega: return "not reducible to E0^omega";
  }
  return "?";
}

std::string BenchmarkLevel::tag() const {
  switch (level) {
    case Benchmark::Smooth: return "Smooth";
    case Benchmark::BireducibleE0: return "BireducibleE0";
    case Benchmark::ReducibleE0OmegaNotE0: return "ReducibleE0OmegaNotE0";
    case Benchmark::AboveE0Omega: return "AboveE0Omega";
  }
  return "?";
}

BenchmarkLevel make_benchmark(bool smooth, bool reducible_to_e0, bool reducible_to_e0_omega) {
  if ((smooth && !reducible_to_e0) || (reducible_to_e0 && !reducible_to_e0_omega))
    throw PreconditionError("benchmark ladder must be monotone");
  Benchmark b = smooth ? Benchmark::Smooth
                : reducible_to_e0 ? Benchmark::BireducibleE0
                : reducible_to_e0_omega ? Benchmark::ReducibleE0OmegaNotE0
                : Benchmark::AboveE0Omega;
  return BenchmarkLevel{b, reducible_to_e0, reducible_to_e0_omega};
}

BenchmarkLevel benchmark_from_class(const ComplexityClass& c) {
  if (!is_legal(c)) throw PreconditionError("benchmark_from_class of illegal class " + c.to_string());
  return make_benchmark(class_leq(c, ComplexityClass::pi(2)), class_leq(c, ComplexityClass::sigma(2)),
                        class_leq(c, ComplexityClass::pi(3)));
}

}  // namespace ulmext
