#pragma once

#include <optional>
#include <string>

#include "ulmext/ordinal.hpp"

namespace ulmext {

enum class ClassShape { Pi, Sigma, DPi };

/// A Borel pointclass Pi^0_a, Sigma^0_a or D(Pi^0_a), a >= 1.
struct ComplexityClass {
  ClassShape shape = ClassShape::Pi;
  Ordinal level = Ordinal(1);

  static ComplexityClass pi(Ordinal a) { return {ClassShape::Pi, std::move(a)}; }
  static ComplexityClass sigma(Ordinal a) { return {ClassShape::Sigma, std::move(a)}; }
  static ComplexityClass d_pi(Ordinal a) { return {ClassShape::DPi, std::move(a)}; }

  std::string to_string() const;  // "Pi^0_3", "Sigma^0_(w+1)", "D(Pi^0_3)"
  std::string pretty() const;     // with Unicode sub/superscripts

  friend bool operator==(const ComplexityClass&, const ComplexityClass&) = default;
};

std::string shape_name(ClassShape s);  // "Pi", "Sigma", "DPi"
ClassShape parse_shape(const std::string& s);

/// Containment of pointclasses on uncountable Polish spaces.
bool class_leq(const ComplexityClass& a, const ComplexityClass& b);

/// Membership in the list of possible potential classes of orbit
/// equivalence relations of non-Archimedean Polish group actions:
/// Pi_{1+l}, Sigma_{1+l+1}, D(Pi_{1+l+n+2}), Pi_{1+l+n+2}.
bool is_legal(const ComplexityClass& c);

/// Least a such that c is contained in Pi^0_a.
Ordinal pi_ceiling(const ComplexityClass& c);

/// Solecki rank of a group whose {0} has exactly this legal class.
Ordinal solecki_rank(const ComplexityClass& c);

enum class Benchmark { Smooth, BireducibleE0, ReducibleE0OmegaNotE0, AboveE0Omega };

struct BenchmarkLevel {
  Benchmark level = Benchmark::Smooth;
  bool reducible_to_e0 = true;
  bool reducible_to_e0_omega = true;

  std::string name() const;         // "smooth", "bireducible with E0", ...
  std::string tag() const;           // "Smooth", "BireducibleE0", ...

  friend bool operator==(const BenchmarkLevel&, const BenchmarkLevel&) = default;
};

BenchmarkLevel make_benchmark(bool smooth, bool reducible_to_e0, bool reducible_to_e0_omega);

/// Smooth iff c in Pi^0_1, reducible to E0 iff c in Sigma^0_2, reducible to
/// E0^omega iff c in Pi^0_3. Throws PreconditionError for illegal classes.
BenchmarkLevel benchmark_from_class(const ComplexityClass& c);

}  // namespace ulmext
