#include "ulmext/classifier.hpp"

#include <algorithm>

#include "ulmext/error.hpp"

namespace ulmext {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::uint64_t next_prime_above(std::uint64_t k) {
  std::uint64_t q = k + 1;
  while (!is_prime(q)) ++q;
  return q;
}

namespace {

void check_desc(std::vector<std::string>& out, const std::string& where, const PGroupDesc& d, Prime expected) {
  if (d.prime != expected)
    out.push_back(where + ": description for prime " + std::to_string(d.prime) + ", expected " +
                  (expected == kSymbolicPrime ? std::string("symbolic p") : std::to_string(expected)));
  if (auto r = validate(d); !r.ok()) out.push_back(where + ": " + r.to_string());
}

// 1 + l + k.
Ordinal one_lambda_plus(const Ordinal& lambda, std::uint64_t k) { return ord_add(ord_add(Ordinal(1), lambda), Ordinal(k)); }

bool vanishes_at(const PGroupDesc& g, const Ordinal& a) { return is_zero(ulm_subgroup(g, a)); }

bool bounded_at(const PGroupDesc& g, const Ordinal& a) { return is_bounded(ulm_subgroup(g, a)); }

bool finite_at(const PGroupDesc& g, const Ordinal& a) { return is_finite(ulm_subgroup(g, a)); }

bool is_active(const PrimePair& pp) { return !vanishes_at(pp.c, Ordinal(1)) && !is_bounded(pp.a); }

// A prime (or a whole family) as seen by the global rules.
struct Entry {
  std::string label;
  PrimePair pair;  // instantiated at a concrete prime
  bool infinite = false;
};

std::vector<Entry> entries_of(const ProblemSpec& spec) {
  std::vector<Entry> out;
  for (const auto& [p, pair] : spec.explicit_primes) out.push_back({std::to_string(p), pair, false});
  for (const auto& f : spec.families) {
    PrimePair inst = f.pair;
    inst.c.prime = inst.a.prime = next_prime_above(f.primes_above);
    out.push_back({"p>" + std::to_string(f.primes_above), std::move(inst), true});
  }
  return out;
}

ExtendedCount sum_over(const std::vector<const Entry*>& entries, const auto& count_of) {
  std::vector<ExtendedCount> finite;
  std::vector<InfiniteCountFamily> infinite;
  for (const Entry* e : entries) {
    if (e->infinite)
      infinite.push_back({count_of(*e)});
    else
      finite.push_back(count_of(*e));
  }
  return count_sum(finite, infinite);
}

}  // namespace

std::vector<std::string> validate_spec(const ProblemSpec& spec) {
  std::vector<std::string> out;
  for (const auto& [p, pair] : spec.explicit_primes) {
    const std::string where = "prime " + std::to_string(p);
    if (!is_prime(p)) out.push_back(where + ": not a prime");
    check_desc(out, where + " C", pair.c, p);
    check_desc(out, where + " A", pair.a, p);
    if (!pair.a.is_reduced()) out.push_back(where + " A: must be reduced (divisible rank 0)");
  }
  if (spec.families.size() > 1) out.push_back("at most one 'primes > k' family is allowed (such families overlap)");
  for (const auto& f : spec.families) {
    const std::string where = "family primes > " + std::to_string(f.primes_above);
    check_desc(out, where + " C", f.pair.c, kSymbolicPrime);
    check_desc(out, where + " A", f.pair.a, kSymbolicPrime);
    if (!f.pair.a.is_reduced()) out.push_back(where + " A: must be reduced (divisible rank 0)");
    for (const auto& [p, pair] : spec.explicit_primes)
      if (p > f.primes_above) out.push_back("prime " + std::to_string(p) + " is also covered by " + where);
  }
  return out;
}

Ordinal mu_p(const PGroupDesc& c, const PGroupDesc& a) {
  if (!a.is_reduced()) throw PreconditionError("mu_p requires a reduced A_p");
  Ordinal bound_from_a = ulm_length(a).successor();
  auto lc = vanishing_index(c);
  if (!lc) return bound_from_a;
  return std::min(*lc, bound_from_a);
}

ClassificationResult per_prime_class(const PGroupDesc& c, const PGroupDesc& a) {
  if (!a.is_reduced()) throw PreconditionError("per_prime_class requires a reduced A_p");
  for (const auto* d : {&c, &a})
    if (auto r = validate(*d); !r.ok()) throw PreconditionError("per_prime_class on invalid description:\n" + r.to_string());

  ClassificationResult res;
  PrimeTrace pt;
  pt.prime = c.prime == kSymbolicPrime ? "p" : std::to_string(c.prime);
  auto finish = [&](ComplexityClass k, std::string tag) {
    res.klass = std::move(k);
    res.benchmark = benchmark_from_class(res.klass);
    res.trace.fired = tag;
    pt.tag = std::move(tag);
    pt.klass = res.klass;
    res.trace.primes.push_back(pt);
    return res;
  };

  if (vanishes_at(c, Ordinal(1)) || is_bounded(a)) return finish(ComplexityClass::pi(1), "per-prime-polish");

  pt.active = true;
  const Ordinal mu = mu_p(c, a);
  pt.mu_p = mu;
  res.trace.mu = mu;
  if (mu.is_limit()) return finish(ComplexityClass::pi(mu), "per-prime-1");

  const auto [lambda, n] = decompose_one_lambda_n(mu);
  res.trace.lambda = lambda;
  res.trace.n = n;
  if (n == 1) {
    if (finite_at(c, one_lambda_plus(lambda, 0))) return finish(ComplexityClass::sigma(mu), "per-prime-2");
    return finish(ComplexityClass::pi(mu.successor()), "per-prime-5");
  }
  // n >= 2 here: mu >= 2 for active primes and mu is not a limit.
  if (bounded_at(a, one_lambda_plus(lambda, n - 2))) return finish(ComplexityClass::pi(mu), "per-prime-3");
  if (finite_at(c, one_lambda_plus(lambda, n - 1))) return finish(ComplexityClass::d_pi(mu), "per-prime-4");
  return finish(ComplexityClass::pi(mu.successor()), "per-prime-5");
}

ClassificationResult classify(const ProblemSpec& spec) {
  if (auto problems = validate_spec(spec); !problems.empty()) {
    std::string msg = "invalid problem spec:";
    for (const auto& p : problems) msg += "\n  " + p;
    throw PreconditionError(msg);
  }

  const std::vector<Entry> entries = entries_of(spec);
  ClassificationResult res;
  std::vector<const Entry*> active;
  for (const auto& e : entries) {
    ClassificationResult local = per_prime_class(e.pair.c, e.pair.a);
    PrimeTrace pt = local.trace.primes.front();
    pt.prime = e.label;
    res.trace.primes.push_back(std::move(pt));
    if (is_active(e.pair)) active.push_back(&e);
  }

  auto finish = [&](ComplexityClass k, std::string tag) {
    res.klass = std::move(k);
    res.benchmark = benchmark_from_class(res.klass);
    res.trace.fired = std::move(tag);
    return res;
  };

  if (active.empty()) return finish(ComplexityClass::pi(1), "E0-smooth");

  // Finitely many entries, so the supremum is attained.
  Ordinal mu;
  for (const Entry* e : active) mu = std::max(mu, mu_p(e->pair.c, e->pair.a));
  res.trace.mu = mu;
  if (mu.is_limit()) return finish(ComplexityClass::pi(mu), "main-1a");

  const auto [lambda, n] = decompose_one_lambda_n(mu);
  res.trace.lambda = lambda;
  res.trace.n = n;
  const Ordinal top = mu.predecessor();
  std::vector<const Entry*> p_mu;
  for (const Entry* e : active)
    if (mu_p(e->pair.c, e->pair.a) == mu) {
      p_mu.push_back(e);
      res.trace.p_mu.push_back(e->label);
    }
  auto top_size = [&](const Entry& e) { return cardinality(ulm_subgroup(e.pair.c, top)); };
  const ExtendedCount W = sum_over(p_mu, top_size);
  res.trace.W = W;
  if (top.is_successor()) {
    const Ordinal below = top.predecessor();
    std::vector<const Entry*> unbounded;
    for (const Entry* e : p_mu)
      if (!bounded_at(e->pair.a, below)) unbounded.push_back(e);
    res.trace.w = sum_over(unbounded, top_size);
  }

  if (n == 1) {
    if (W.is_finite()) return finish(ComplexityClass::sigma(mu), "main-2");
    return finish(ComplexityClass::pi(mu.successor()), "main-4a");
  }
  const ExtendedCount& w = *res.trace.w;
  if (w.is_zero()) return finish(ComplexityClass::pi(mu), "main-1b");
  if (w.is_finite()) return finish(ComplexityClass::d_pi(mu), "main-3");
  return finish(ComplexityClass::pi(mu.successor()), "main-4b");
}

E0Evaluation evaluate_e0(const ProblemSpec& spec) {
  if (auto problems = validate_spec(spec); !problems.empty()) throw PreconditionError("invalid problem spec: " + problems.front());
  const std::vector<Entry> entries = entries_of(spec);
  E0Evaluation ev;
  ev.smooth = ev.hyperfinite = ev.below_e0_omega = true;
  std::vector<const Entry*> unbounded_a;
  bool literal_below = true;
  for (const auto& e : entries) {
    const auto& [c, a] = e.pair;
    const bool c1 = vanishes_at(c, Ordinal(1));
    const bool c2 = vanishes_at(c, Ordinal(2));
    const bool c3 = vanishes_at(c, Ordinal(3));
    const bool a1 = vanishes_at(a, Ordinal(1));
    const bool a1_bounded = bounded_at(a, Ordinal(1));
    ev.smooth = ev.smooth && (c1 || is_bounded(a));
    ev.hyperfinite = ev.hyperfinite && (c2 || a1);
    ev.below_e0_omega = ev.below_e0_omega && (c2 || a1 || a1_bounded);
    literal_below = literal_below && (c2 || a1 || (c3 && a1_bounded));
    // Trivial u_1(C_p) adds nothing; counting it as 1 would make every
    // infinite family of such primes look non-hyperfinite.
    if (!is_bounded(a) && !c1) unbounded_a.push_back(&e);
  }
  const ExtendedCount sum = sum_over(unbounded_a, [](const Entry& e) { return cardinality(ulm_subgroup(e.pair.c, Ordinal(1))); });
  ev.hyperfinite = ev.hyperfinite && sum.is_finite();
  ev.literal_c_agrees = literal_below == ev.below_e0_omega;
  ev.benchmark = make_benchmark(ev.smooth, ev.hyperfinite, ev.below_e0_omega);
  return ev;
}

BenchmarkLevel e0_conditions(const ProblemSpec& spec) { return evaluate_e0(spec).benchmark; }

std::optional<ComplexityClass> product_class(const std::vector<ProductFactor>& factors) {
  std::vector<ProductFactor> live;
  for (const auto& f : factors) {
    if (!is_legal(f.klass)) throw PreconditionError("product_class factor has illegal class " + f.klass.to_string());
    if (!f.multiplicity.is_zero()) live.push_back(f);
  }
  const ComplexityClass polish = ComplexityClass::pi(1);
  bool all_polish = true;
  bool heavy_finite = true;  // finitely many non-Polish factors
  for (const auto& f : live) {
    if (f.klass == polish) continue;
    all_polish = false;
    if (f.multiplicity.is_infinite()) heavy_finite = false;
  }
  if (all_polish) return polish;

  if (heavy_finite) {
    // Legal classes are totally ordered by containment, so the max exists.
    ComplexityClass best = polish;
    for (const auto& f : live)
      if (class_leq(best, f.klass)) best = f.klass;
    for (const auto& f : live)
      if (!class_leq(f.klass, best)) return std::nullopt;
    return best;
  }

  // Every factor in Pi_a and, for each b < a, infinitely many outside Pi_b.
  Ordinal a(1);
  for (const auto& f : live) a = std::max(a, pi_ceiling(f.klass));
  for (const auto& f : live)
    if (f.multiplicity.is_infinite() && pi_ceiling(f.klass) == a) return ComplexityClass::pi(a);

  // Countably many factors of one common Solecki rank.
  ExtendedCount total(0);
  for (const auto& f : live) total = count_add(total, f.multiplicity);
  if (total.is_infinite()) {
    const Ordinal r = solecki_rank(live.front().klass);
    if (std::all_of(live.begin(), live.end(), [&](const ProductFactor& f) { return solecki_rank(f.klass) == r; })) {
      const Ordinal one_r = ord_add(Ordinal(1), r);
      return ComplexityClass::pi(r.is_successor() ? one_r.successor() : one_r);
    }
  }
  return std::nullopt;
}

std::string case_rule(const std::string& tag) {
  if (tag == "E0-smooth") return "every prime has u_1(C_p) = 0 or A_p bounded: Ext(C,A) is Polish, class Pi^0_1 (smooth)";
  if (tag == "main-1a") return "mu is a limit ordinal: class Pi^0_mu";
  if (tag == "main-1b") return "mu = 1+lambda+n with n >= 2 and w = 0: class Pi^0_mu";
  if (tag == "main-2") return "mu = 1+lambda+1 and W finite: class Sigma^0_mu";
  if (tag == "main-3") return "mu = 1+lambda+n with n >= 2 and 0 < w < inf: class D(Pi^0_mu)";
  if (tag == "main-4a") return "mu = 1+lambda+1 and W infinite: class Pi^0_(mu+1)";
  if (tag == "main-4b") return "mu = 1+lambda+n with n >= 2 and w infinite: class Pi^0_(mu+1)";
  if (tag == "per-prime-polish") return "u_1(C_p) = 0 or A_p bounded: Ext(C_p,A_p) is Polish, class Pi^0_1";
  if (tag == "per-prime-1") return "mu_p limit: class Pi^0_mu";
  if (tag == "per-prime-2") return "mu_p = 1+lambda+1 and C_p^(1+lambda) finite: class Sigma^0_mu";
  if (tag == "per-prime-3") return "mu_p = 1+lambda+n, n >= 2, A_p^(1+lambda+n-2) bounded: class Pi^0_mu";
  if (tag == "per-prime-4")
    return "mu_p = 1+lambda+n, n >= 2, C_p^(1+lambda+n-1) finite, A_p^(1+lambda+n-2) unbounded: class D(Pi^0_mu)";
  if (tag == "per-prime-5") return "C_p^(1+lambda+n-1) infinite (A_p^(1+lambda+n-2) unbounded when n >= 2): class Pi^0_(mu+1)";
  return "unknown case";
}

}  // namespace ulmext
