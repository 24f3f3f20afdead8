#include "ulmext/oracle/suites.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>

#include "ulmext/error.hpp"
#include "ulmext/oracle/cocycle.hpp"
#include "ulmext/oracle/gadget.hpp"
#include "ulmext/oracle/int_matrix.hpp"
#include "ulmext/oracle/realize.hpp"
#include "ulmext/oracle/six_term.hpp"

namespace ulmext::oracle {

std::uint64_t draw_below(std::mt19937_64& rng, std::uint64_t n) {
  if (n == 0) throw PreconditionError("draw_below(0)");
  return rng() % n;
}

std::size_t SuiteReport::failures() const {
  return static_cast<std::size_t>(std::count_if(checks.begin(), checks.end(), [](const CheckOutcome& c) { return !c.passed; }));
}

namespace {

void partitions(std::uint64_t n, std::uint64_t max_part, std::vector<std::uint64_t>& cur,
                std::vector<std::vector<std::uint64_t>>& out) {
  if (n == 0) {
    out.push_back(cur);
    return;
  }
  for (std::uint64_t k = std::min(n, max_part); k >= 1; --k) {
    cur.push_back(k);
    partitions(n - k, k, cur, out);
    cur.pop_back();
  }
}

}  // namespace

std::vector<FgGroup> finite_abelian_groups_up_to(std::uint64_t max_order) {
  std::vector<FgGroup> out;
  for (std::uint64_t n = 1; n <= max_order; ++n) {
    // Choices of a partition of the exponent for every prime power in n.
    std::vector<std::vector<std::vector<BigInt>>> per_prime;
    std::uint64_t m = n;
    for (std::uint64_t p = 2; m > 1; ++p) {
      std::uint64_t e = 0;
      while (m % p == 0) {
        m /= p;
        ++e;
      }
      if (e == 0) continue;
      std::vector<std::vector<std::uint64_t>> parts;
      std::vector<std::uint64_t> cur;
      partitions(e, e, cur, parts);
      std::vector<std::vector<BigInt>> choices;
      for (const auto& part : parts) {
        std::vector<BigInt> cyc;
        for (auto k : part) {
          BigInt q = 1;
          for (std::uint64_t i = 0; i < k; ++i) q *= p;
          cyc.push_back(q);
        }
        choices.push_back(cyc);
      }
      per_prime.push_back(choices);
    }
    std::vector<FgGroup> groups;
    std::vector<BigInt> acc;
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
      if (i == per_prime.size()) {
        groups.push_back(FgGroup::from_cyclics(acc));
        return;
      }
      for (const auto& choice : per_prime[i]) {
        const std::size_t mark = acc.size();
        acc.insert(acc.end(), choice.begin(), choice.end());
        rec(i + 1);
        acc.resize(mark);
      }
    };
    rec(0);
    std::sort(groups.begin(), groups.end(), [](const FgGroup& a, const FgGroup& b) { return a.invariants() < b.invariants(); });
    out.insert(out.end(), groups.begin(), groups.end());
  }
  return out;
}

namespace {

std::uint64_t pick(std::uint64_t given, std::uint64_t fallback) { return given == 0 ? fallback : given; }

// gcd of all k x k minors of m.
BigInt determinantal_divisor(const IntMatrix& m, std::size_t k) {
  std::vector<std::size_t> rows(k), cols(k);
  BigInt g = 0;
  std::function<void(std::size_t, std::size_t, std::vector<std::size_t>&, std::size_t, const std::function<void()>&)> choose =
      [&](std::size_t start, std::size_t depth, std::vector<std::size_t>& pick_into, std::size_t limit,
          const std::function<void()>& body) {
        if (depth == k) {
          body();
          return;
        }
        for (std::size_t i = start; i < limit; ++i) {
          pick_into[depth] = i;
          choose(i + 1, depth + 1, pick_into, limit, body);
        }
      };
  choose(0, 0, rows, m.rows(), [&] {
    choose(0, 0, cols, m.cols(), [&] {
      IntMatrix minor(k, k);
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) minor(i, j) = m(rows[i], cols[j]);
      g = gcd(g, determinant(minor));
    });
  });
  return g;
}

SuiteReport run_snf(const SuiteOptions& o) {
  SuiteReport rep{"snf", {}};
  std::mt19937_64 rng(o.seed);
  const std::uint64_t trials = pick(o.trials, 1000);
  for (std::uint64_t t = 0; t < trials; ++t) {
    const std::size_t r = 1 + draw_below(rng, 4), c = 1 + draw_below(rng, 4);
    IntMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) m(i, j) = static_cast<long>(draw_below(rng, 19)) - 9;
    const SmithForm f = smith_normal_form(m);
    std::vector<std::string> bad;
    if (f.u * m * f.v != f.d) bad.push_back("U*M*V != D");
    if (abs(determinant(f.u)) != 1 || abs(determinant(f.v)) != 1) bad.push_back("U or V not unimodular");
    if (f.u * f.u_inv != IntMatrix::identity(r) || f.v * f.v_inv != IntMatrix::identity(c)) bad.push_back("tracked inverse wrong");
    if (!f.d.is_diagonal()) bad.push_back("D not diagonal");
    const auto d = f.diagonal();
    BigInt prod = 1;
    for (std::size_t k = 0; k < d.size(); ++k) {
      if (d[k] < 0) bad.push_back("negative diagonal entry");
      if (k > 0 && (d[k - 1] == 0 ? d[k] != 0 : d[k] % d[k - 1] != 0)) bad.push_back("divisor chain broken");
      prod *= d[k];
      if (determinantal_divisor(m, k + 1) != prod) bad.push_back("determinantal divisor " + std::to_string(k + 1) + " differs");
    }
    std::string detail = bad.empty() ? "D = diag(" : bad.front();
    if (bad.empty())
      for (std::size_t k = 0; k < d.size(); ++k) detail += (k ? "," : "") + d[k].str();
    if (bad.empty()) detail += ")";
    rep.checks.push_back({"snf#" + std::to_string(t) + " " + m.to_string(), bad.empty(), detail});
  }
  return rep;
}

// A random unimodular n x n matrix: a short product of elementary operations.
IntMatrix random_unimodular(std::mt19937_64& rng, std::size_t n) {
  IntMatrix u = IntMatrix::identity(n);
  if (n < 2) return u;
  for (int step = 0; step < 6; ++step) {
    const std::size_t i = draw_below(rng, n), j = draw_below(rng, n);
    if (i == j) continue;
    const long k = static_cast<long>(draw_below(rng, 5)) - 2;
    for (std::size_t c = 0; c < n; ++c) u(i, c) += k * u(j, c);
  }
  return u;
}

// The canonical relation matrix disguised by unimodular changes of basis
// plus one redundant relation.
FgGroup scrambled(std::mt19937_64& rng, const FgGroup& g) {
  const IntMatrix base = g.canonical_presentation();
  const std::size_t n = base.rows(), k = base.cols();
  IntMatrix rel = random_unimodular(rng, n) * base * random_unimodular(rng, k);
  IntMatrix extra(n, 1);
  for (std::size_t c = 0; c < k; ++c) {
    const long w = static_cast<long>(draw_below(rng, 3)) - 1;
    for (std::size_t r = 0; r < n; ++r) extra(r, 0) += w * rel(r, c);
  }
  return FgGroup::from_presentation(rel.hconcat(extra));
}

SuiteReport run_ext3way(const SuiteOptions& o) {
  SuiteReport rep{"ext3way", {}};
  std::mt19937_64 rng(o.seed);
  const auto groups = finite_abelian_groups_up_to(pick(o.max_order, 12));
  for (const auto& c : groups)
    for (const auto& a : groups) {
      const FgGroup closed = fg_ext(c, a);
      const FgGroup via_pres = ext_via_presentation(scrambled(rng, c), a);
      const CocycleGroup z(c, a);
      const FgGroup via_cocycles = z.quotient();
      const bool ok = closed == via_pres && closed == via_cocycles && z.cocycle_order() == z.coboundary_order() * closed.order();
      std::string detail = "closed " + closed.to_string() + "; presentation " + via_pres.to_string() + "; cocycles " +
                           via_cocycles.to_string() + " (|Z| = " + z.cocycle_order().str() +
                           ", |B| = " + z.coboundary_order().str() + ")";
      rep.checks.push_back({"Ext(" + c.to_string() + ", " + a.to_string() + ")", ok, detail});
    }
  return rep;
}

SuiteReport run_equivclasses(const SuiteOptions& o) {
  SuiteReport rep{"equivclasses", {}};
  const auto groups = finite_abelian_groups_up_to(pick(o.max_order, 6));
  for (const auto& c : groups)
    for (const auto& a : groups) {
      const CocycleGroup z(c, a);
      std::vector<ExtensionTable> gens;
      for (const auto& co : z.cocycle_generators()) gens.push_back(extension_from_cocycle(co));

      // Close {split} under Baer sum with the generators of Z. Every
      // extension class is a sum of generator classes, so the closure meets
      // every class, and each new member is inequivalent to the old ones.
      std::vector<ExtensionTable> reps{split_extension(c, a)};
      auto find = [&](const ExtensionTable& e) -> std::size_t {
        for (std::size_t i = 0; i < reps.size(); ++i)
          if (extensions_equivalent(reps[i], e)) return i;
        return reps.size();
      };
      for (std::size_t i = 0; i < reps.size(); ++i)
        for (const auto& g : gens) {
          ExtensionTable s = baer_sum(reps[i], g);
          if (find(s) == reps.size()) reps.push_back(std::move(s));
        }
      const std::size_t n = reps.size();
      std::vector<std::size_t> table(n * n);
      bool closed = true;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
          table[i * n + j] = find(baer_sum(reps[i], reps[j]));
          closed = closed && table[i * n + j] < n;
        }
      const FgGroup expected = fg_ext(c, a);
      std::string detail = std::to_string(n) + " classes, |Ext| = " + expected.order().str();
      bool ok = closed && BigInt(n) == expected.order();
      if (closed) {
        try {
          const FgGroup baer = abelian_invariants_from_table(n, table, 0);
          GroupTable::from_addition(n, table);
          detail += ", Baer group " + baer.to_string();
          ok = ok && baer == expected;
        } catch (const PreconditionError& e) {
          ok = false;
          detail += std::string(", Baer table: ") + e.what();
        }
      }
      // Inverse law on representatives.
      for (std::size_t i = 0; i < n && ok; ++i)
        ok = find(baer_sum(reps[i], baer_negative(reps[i]))) == 0;
      // Cross-check the linear decision with the unrestricted search.
      if (ok && c.order() * a.order() <= 16) {
        std::size_t compared = 0;
        for (std::size_t i = 0; i < n; ++i) {
          for (std::size_t j = 0; j < n; ++j, ++compared)
            ok = ok && extensions_equivalent_exhaustive(reps[i], reps[j]) == (i == j);
          for (const auto& g : gens)
            ok = ok && extensions_equivalent_exhaustive(reps[i], g) == extensions_equivalent(reps[i], g);
        }
        detail += ", exhaustive search agrees on " + std::to_string(compared) + " pairs";
      }
      rep.checks.push_back({"classes(" + c.to_string() + ", " + a.to_string() + ")", ok, detail});
    }
  return rep;
}

SuiteReport run_sixterm(const SuiteOptions& o) {
  SuiteReport rep{"sixterm", {}};
  std::mt19937_64 rng(o.seed);
  const auto b_groups = finite_abelian_groups_up_to(pick(o.max_order, 16));
  const auto g_groups = finite_abelian_groups_up_to(9);
  const std::uint64_t trials = pick(o.trials, 200);
  for (std::uint64_t t = 0; t < trials; ++t) {
    const FgGroup& b = b_groups[draw_below(rng, b_groups.size())];
    const FiniteAbelian bf = FiniteAbelian::of(b);
    std::vector<FiniteAbelian::Element> gens;
    for (std::uint64_t k = draw_below(rng, 4); k > 0; --k) gens.push_back(bf.element(draw_below(rng, bf.order())));
    const FgGroup& g = g_groups[draw_below(rng, g_groups.size())];
    const ShortExactSequence s = ses_from_subgroup(b, gens);
    const SixTermReport r = six_term_check(s, g);
    std::ostringstream detail;
    detail << "orders";
    for (auto k : r.orders) detail << ' ' << k;
    for (const auto& node : r.nodes)
      if (!node.ok) detail << "; not exact at " << node.node << " (" << node.detail << ")";
    rep.checks.push_back({"sixterm#" + std::to_string(t) + " 0 -> " + s.a_group.to_string() + " -> " + b.to_string() + " -> " +
                              s.c_group.to_string() + " -> 0, G = " + g.to_string(),
                          r.exact(), detail.str()});
  }
  return rep;
}

std::vector<std::vector<std::uint64_t>> random_pattern(std::mt19937_64& rng, const GadgetConfig& cfg) {
  std::vector<std::vector<std::uint64_t>> eps(cfg.depth, std::vector<std::uint64_t>(cfg.width));
  for (auto& row : eps)
    for (auto& v : row) v = draw_below(rng, cfg.p);
  return eps;
}

SuiteReport run_gadget(const SuiteOptions& o) {
  SuiteReport rep{"gadget", {}};
  std::mt19937_64 rng(o.seed);
  GadgetConfig cfg;
  cfg.p = o.p;
  cfg.depth = o.depth;
  cfg.width = o.width;
  cfg.pattern.assign(cfg.depth, std::vector<std::uint64_t>(cfg.width, 0));
  validate_gadget(cfg);
  {
    const auto bad = gadget_element_failures(cfg);
    rep.checks.push_back({"elements a_{i,k}", bad.empty(), bad.empty() ? "membership, order, tower, distinctness" : bad.front()});
  }
  const std::uint64_t trials = pick(o.trials, 500);
  for (std::uint64_t t = 0; t < trials; ++t) {
    cfg.pattern = random_pattern(rng, cfg);
    const auto bad = gadget_tower_failures(cfg, gadget_build(cfg));
    rep.checks.push_back({"tower#" + std::to_string(t), bad.empty(), bad.empty() ? "p*b[i+1][k] = b[i][k] for k > i" : bad.front()});
  }
  std::map<std::pair<bool, bool>, std::size_t> seen;
  for (std::uint64_t t = 0; t < trials; ++t) {
    const auto eps = random_pattern(rng, cfg);
    auto eps2 = eps;
    std::vector<std::size_t> thresholds(cfg.depth);
    for (std::size_t i = 0; i < cfg.depth; ++i) {
      const std::size_t lo = std::max(i, i ? thresholds[i - 1] : 0);
      thresholds[i] = lo + draw_below(rng, cfg.width - lo + 1);
    }
    // Mode 0 perturbs anywhere, mode 1 only below the thresholds.
    const std::uint64_t mode = draw_below(rng, 3);
    for (std::uint64_t changes = draw_below(rng, 3); changes > 0 && mode < 2; --changes) {
      const std::size_t i = draw_below(rng, cfg.depth);
      if (mode == 1 && thresholds[i] == 0) continue;
      const std::size_t k = mode == 1 ? draw_below(rng, thresholds[i]) : draw_below(rng, cfg.width);
      eps2[i][k] = draw_below(rng, cfg.p);
    }
    const GadgetAgreement g = gadget_equiv_check(cfg, eps, eps2, thresholds);
    ++seen[{g.pattern_agree, g.b_agree}];
    rep.checks.push_back({"equiv#" + std::to_string(t), g.pattern_agree == g.b_agree,
                          std::string("pattern_agree=") + (g.pattern_agree ? "true" : "false") +
                              " b_agree=" + (g.b_agree ? "true" : "false")});
  }
  const std::size_t both_true = seen[{true, true}], both_false = seen[{false, false}];
  rep.checks.push_back({"equiv coverage", both_true > 0 && both_false > 0,
                        std::to_string(both_true) + " agreeing and " + std::to_string(both_false) + " disagreeing triples"});
  return rep;
}

SuiteReport run_profile_realization(const SuiteOptions& o) {
  SuiteReport rep{"profile-realization", {}};
  std::mt19937_64 rng(o.seed);
  const std::uint64_t trials = pick(o.trials, 300);
  const std::uint64_t primes[] = {2, 3, 5};
  for (std::uint64_t t = 0; t < trials; ++t) {
    const std::uint64_t p = primes[draw_below(rng, 3)];
    std::map<Exponent, ExtendedCount> counts;
    double log_order = 0;
    for (std::uint64_t k = draw_below(rng, 4); k > 0; --k) {
      const Exponent n = 1 + draw_below(rng, 4);
      const std::uint64_t c = 1 + draw_below(rng, 2);
      if (log_order + static_cast<double>(n * c) * std::log2(static_cast<double>(p)) > 14) continue;
      log_order += static_cast<double>(n * c) * std::log2(static_cast<double>(p));
      counts[n] = count_add(counts.count(n) ? counts[n] : ExtendedCount(0), ExtendedCount(c));
    }
    PGroupDesc d;
    d.prime = p;
    if (!counts.empty()) d.reduced = UlmProfile({Segment{Ordinal(0), Ordinal(1), CyclicLayer(counts, std::nullopt)}});
    const RealizationReport r = check_realization(d);
    std::string layer;
    for (const auto& [n, c] : counts) layer += (layer.empty() ? "" : " + ") + c.to_string() + "*Z/" + std::to_string(p) + "^" + std::to_string(n);
    rep.checks.push_back({"realize#" + std::to_string(t) + " " + (layer.empty() ? "0" : layer), r.ok(),
                          r.ok() ? "realized " + r.group.to_string() : r.mismatches.front()});
  }
  return rep;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"snf", "ext3way", "equivclasses", "sixterm", "gadget", "profile-realization"};
  return names;
}

SuiteReport run_suite(const std::string& name, const SuiteOptions& opts) {
  if (name == "snf") return run_snf(opts);
  if (name == "ext3way") {
    if (opts.max_order > 16) throw PreconditionError("ext3way supports --max-order up to 16");
    return run_ext3way(opts);
  }
  if (name == "equivclasses") {
    if (opts.max_order > 8) throw PreconditionError("equivclasses supports --max-order up to 8");
    return run_equivclasses(opts);
  }
  if (name == "sixterm") {
    if (opts.max_order > 16) throw PreconditionError("sixterm supports --max-order up to 16");
    return run_sixterm(opts);
  }
  if (name == "gadget") {
    if (opts.p < 2 || opts.p > 7 || opts.depth > opts.width || opts.width > 8)
      throw PreconditionError("gadget needs 2 <= p <= 7 and depth <= width <= 8");
    return run_gadget(opts);
  }
  if (name == "profile-realization") return run_profile_realization(opts);
  throw PreconditionError("unknown suite '" + name + "'");
}

}  // namespace ulmext::oracle
