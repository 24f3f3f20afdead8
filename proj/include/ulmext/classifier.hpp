#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ulmext/complexity.hpp"
#include "ulmext/pgroup.hpp"

namespace ulmext {

/// The p-primary data (C_p, A_p) after stripping D(A) and non-torsion parts.
struct PrimePair {
  PGroupDesc c;  // torsion p-group
  PGroupDesc a;  // reduced p-group

  friend bool operator==(const PrimePair&, const PrimePair&) = default;
};

/// Every prime strictly above `primes_above` carries the same template pair.
struct PrimeFamily {
  std::uint64_t primes_above = 0;
  PrimePair pair;  // descriptions carry kSymbolicPrime

  friend bool operator==(const PrimeFamily&, const PrimeFamily&) = default;
};

struct ProblemSpec {
  std::map<Prime, PrimePair> explicit_primes;
  std::vector<PrimeFamily> families;

  friend bool operator==(const ProblemSpec&, const ProblemSpec&) = default;
};

/// Returns human-readable problems; empty when the spec is valid.
std::vector<std::string> validate_spec(const ProblemSpec& spec);

bool is_prime(std::uint64_t n);
/// Least prime strictly greater than k.
std::uint64_t next_prime_above(std::uint64_t k);

/// Per-prime evaluation data recorded in the trace.
struct PrimeTrace {
  std::string prime;  // decimal or "p>k" for a family
  bool active = false;
  std::optional<Ordinal> mu_p;  // set for active primes
  std::string tag;              // per-prime case tag
  ComplexityClass klass;
};

struct ClassificationTrace {
  std::vector<PrimeTrace> primes;
  std::optional<Ordinal> mu;
  std::optional<Ordinal> lambda;
  std::optional<std::uint64_t> n;
  std::vector<std::string> p_mu;   // members of P_mu
  std::optional<ExtendedCount> W;  // set when mu is a successor
  std::optional<ExtendedCount> w;  // set when mu - 1 is a successor too
  std::string fired;               // exactly one case tag
};

struct ClassificationResult {
  ComplexityClass klass;
  BenchmarkLevel benchmark;
  ClassificationTrace trace;
};

/// min(L_C, L_A + 1), L_C infinite when C has a divisible part.
/// Throws PreconditionError when A is not reduced.
Ordinal mu_p(const PGroupDesc& c, const PGroupDesc& a);

/// Complexity class of {0} in Ext(C_p, A_p).
ClassificationResult per_prime_class(const PGroupDesc& c, const PGroupDesc& a);

/// Potential complexity class of the extension relation for the whole spec.
ClassificationResult classify(const ProblemSpec& spec);

/// Evaluates the three benchmark conditions directly on Ulm data.
struct E0Evaluation {
  bool smooth = false;
  bool hyperfinite = false;
  bool below_e0_omega = false;
  bool literal_c_agrees = true;  // the stricter printed clause (c) gives the same answer
  BenchmarkLevel benchmark;
};

E0Evaluation evaluate_e0(const ProblemSpec& spec);
BenchmarkLevel e0_conditions(const ProblemSpec& spec);

/// One factor of a countable product, repeated `multiplicity` times.
struct ProductFactor {
  ComplexityClass klass;
  ExtendedCount multiplicity = 1;
};

/// Combines per-factor classes where a proven combination rule applies;
/// nullopt means "deferred" (use classify).
std::optional<ComplexityClass> product_class(const std::vector<ProductFactor>& factors);

/// The rule a case tag stands for, used by --explain.
std::string case_rule(const std::string& tag);

}  // namespace ulmext
