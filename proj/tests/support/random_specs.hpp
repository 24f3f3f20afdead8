#pragma once

// Seeded generators for ordinals, Ulm profiles and problem specs shared by
// the property tests and the acceptance runner.

#include <algorithm>
#include <random>
#include <vector>

#include "ulmext/classifier.hpp"
#include "ulmext/oracle/suites.hpp"

namespace ulmext::testing {

using oracle::draw_below;

inline Ordinal omega_times(std::uint64_t k) { return k == 0 ? Ordinal(0) : Ordinal::omega_power(Ordinal(1), k); }

/// Random CNF value with up to four terms and exponents nested `depth` deep.
inline Ordinal random_ordinal(std::mt19937_64& rng, int depth = 2) {
  const std::uint64_t nterms = draw_below(rng, 5);
  std::vector<Ordinal> exps;
  for (std::uint64_t i = 0; i < nterms; ++i)
    exps.push_back(depth > 0 ? random_ordinal(rng, depth - 1) : Ordinal(draw_below(rng, 4)));
  std::sort(exps.begin(), exps.end(), std::greater<>());
  exps.erase(std::unique(exps.begin(), exps.end()), exps.end());
  Ordinal out;
  for (const auto& e : exps) out = out + Ordinal::omega_power(e, 1 + draw_below(rng, 5));
  return out;
}

inline ExtendedCount random_count(std::mt19937_64& rng, bool allow_zero = false) {
  const std::uint64_t r = draw_below(rng, 5);
  if (r == 0) return ExtendedCount::infinite();
  if (allow_zero && r == 1) return ExtendedCount(0);
  return ExtendedCount(1 + draw_below(rng, 3));
}

inline CyclicLayer random_unbounded_layer(std::mt19937_64& rng) {
  std::map<Exponent, ExtendedCount> counts;
  const std::uint64_t extra = draw_below(rng, 3);
  for (std::uint64_t i = 0; i < extra; ++i) counts[1 + draw_below(rng, 4)] = random_count(rng);
  return CyclicLayer(std::move(counts), TailRun{1 + draw_below(rng, 3), random_count(rng)});
}

inline CyclicLayer random_bounded_layer(std::mt19937_64& rng, bool finite_only = false) {
  std::map<Exponent, ExtendedCount> counts;
  const std::uint64_t n = 1 + draw_below(rng, 2);
  for (std::uint64_t i = 0; i < n; ++i)
    counts[1 + draw_below(rng, 4)] = finite_only ? ExtendedCount(1 + draw_below(rng, 3)) : random_count(rng);
  return CyclicLayer(std::move(counts), std::nullopt);
}

/// A length in {1..5, w, w+1..w+5, w*2, w*2+1..w*2+5}.
inline Ordinal random_length(std::mt19937_64& rng) {
  const Ordinal base = omega_times(draw_below(rng, 3));
  const std::uint64_t fin = draw_below(rng, 6);
  if (base.is_zero() && fin == 0) return Ordinal(1);
  return base + Ordinal(fin);
}

/// A valid reduced profile: unbounded layers below the top, and a top point
/// segment of any kind when the length is a successor.
inline UlmProfile random_profile(std::mt19937_64& rng) {
  const Ordinal len = random_length(rng);
  const Ordinal body_end = len.is_successor() ? len.predecessor() : len;
  std::vector<Ordinal> cuts{Ordinal(0)};
  for (std::uint64_t i = 0, n = draw_below(rng, 4); i < n; ++i) {
    const Ordinal c = omega_times(draw_below(rng, 3)) + Ordinal(draw_below(rng, 4));
    if (c < body_end) cuts.push_back(c);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  std::vector<Segment> segs;
  if (!body_end.is_zero())
    for (std::size_t i = 0; i < cuts.size(); ++i)
      segs.push_back(Segment{cuts[i], i + 1 < cuts.size() ? cuts[i + 1] : body_end, random_unbounded_layer(rng)});
  if (len.is_successor()) {
    const bool bounded = draw_below(rng, 3) != 0;
    segs.push_back(Segment{body_end, len, bounded ? random_bounded_layer(rng) : random_unbounded_layer(rng)});
  }
  return UlmProfile(std::move(segs));
}

inline PGroupDesc random_reduced(std::mt19937_64& rng, Prime p) {
  if (draw_below(rng, 6) == 0) return PGroupDesc{p, ExtendedCount(0), UlmProfile()};
  return reduced_group(p, random_profile(rng));
}

inline PGroupDesc random_torsion(std::mt19937_64& rng, Prime p) {
  PGroupDesc g = random_reduced(rng, p);
  if (draw_below(rng, 4) == 0) g.divisible_rank = draw_below(rng, 2) ? ExtendedCount::infinite() : ExtendedCount(1);
  return g;
}

/// Up to four explicit primes among 2, 3, 5, 7 and, half the time, one
/// family over the primes above 7.
inline ProblemSpec random_spec(std::mt19937_64& rng) {
  static const Prime primes[] = {2, 3, 5, 7};
  ProblemSpec spec;
  for (Prime p : primes)
    if (draw_below(rng, 2)) spec.explicit_primes[p] = PrimePair{random_torsion(rng, p), random_reduced(rng, p)};
  if (draw_below(rng, 2))
    spec.families.push_back(
        PrimeFamily{7, PrimePair{random_torsion(rng, kSymbolicPrime), random_reduced(rng, kSymbolicPrime)}});
  return spec;
}

}  // namespace ulmext::testing
