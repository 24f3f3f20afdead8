#include "ulmext/cli/app.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "ulmext/cli/dsl.hpp"
#include "ulmext/cli/json_io.hpp"
#include "ulmext/error.hpp"
#include "ulmext/oracle/suites.hpp"

namespace ulmext::cli {

namespace {

std::string read_input(const std::string& path, std::istream& in) {
  if (path == "-") {
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }
  std::ifstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

SpecDocument load(const std::string& path, std::istream& in) {
  try {
    return parse_document(read_input(path, in));
  } catch (const InputError& e) {
    throw InputError(path + ":" + e.what());
  }
}

std::string class_line(const ClassificationResult& r) {
  return r.klass.pretty() + " (" + r.benchmark.name() + ")";
}

std::string opt_text(const std::optional<Ordinal>& o) { return o ? o->to_string() : "-"; }
std::string opt_text(const std::optional<ExtendedCount>& c) { return c ? c->to_string() : "-"; }

void print_explain(std::ostream& out, const ClassificationResult& r) {
  out << "class      " << r.klass.pretty() << "  [" << r.klass.to_string() << "]\n";
  out << "benchmark  " << r.benchmark.name() << "\n\n";
  out << std::left << std::setw(8) << "prime" << std::setw(8) << "active" << std::setw(14) << "mu_p" << std::setw(16)
      << "case"
      << "class\n";
  for (const auto& p : r.trace.primes)
    out << std::setw(8) << p.prime << std::setw(8) << (p.active ? "yes" : "no") << std::setw(14) << opt_text(p.mu_p)
        << std::setw(16) << p.tag << p.klass.to_string() << "\n";
  out << "\nmu = " << opt_text(r.trace.mu) << ", lambda = " << opt_text(r.trace.lambda)
      << ", n = " << (r.trace.n ? std::to_string(*r.trace.n) : "-") << "\n";
  out << "P_mu = {";
  for (std::size_t i = 0; i < r.trace.p_mu.size(); ++i) out << (i ? ", " : "") << r.trace.p_mu[i];
  out << "}\n";
  out << "W = " << opt_text(r.trace.W) << ", w = " << opt_text(r.trace.w) << "\n";
  out << "case " << r.trace.fired << ": " << case_rule(r.trace.fired) << "\n";
}

std::vector<std::string> split_list(const std::vector<std::string>& items) {
  std::vector<std::string> out;
  for (const auto& item : items) {
    std::stringstream ss(item);
    std::string part;
    while (std::getline(ss, part, ','))
      if (!part.empty()) out.push_back(part);
  }
  return out;
}

std::uint64_t env_seed() {
  const char* s = std::getenv("ULMEXT_SEED");
  if (!s || !*s) return 0;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(s, &end, 10);
  if (*end) throw InputError(std::string("ULMEXT_SEED must be a non-negative integer, got '") + s + "'");
  return v;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err, std::istream& in) {
  CLI::App app{"Borel complexity of extension relations between countable abelian groups", "ulmext"};
  app.require_subcommand(1);

  std::string input = "-";
  bool json = false, explain = false;

  auto* classify_cmd = app.add_subcommand("classify", "Print the complexity class of {0} in Ext(C, A)");
  classify_cmd->add_option("input", input, "Spec file in the DSL or JSON ('-' reads stdin)");
  classify_cmd->add_flag("--json", json, "Machine-readable output");
  classify_cmd->add_flag("--explain", explain, "Show the per-prime table and the case that fired");

  auto* explain_cmd = app.add_subcommand("explain", "Same as classify --explain");
  explain_cmd->add_option("input", input, "Spec file ('-' reads stdin)");
  explain_cmd->add_flag("--json", json, "Machine-readable output");

  auto* bench_cmd = app.add_subcommand("benchmark", "Place the relation among smooth, E0 and E0^omega");
  bench_cmd->add_option("input", input, "Spec file ('-' reads stdin)");
  bench_cmd->add_flag("--json", json, "Machine-readable output");

  bool canonical = false;
  auto* validate_cmd = app.add_subcommand("validate", "Check a spec file and optionally print it in canonical form");
  validate_cmd->add_option("input", input, "Spec file ('-' reads stdin)");
  validate_cmd->add_flag("--json", json, "Print the spec as JSON");
  validate_cmd->add_flag("--canonical", canonical, "Print the canonical DSL");

  std::vector<std::string> suites_raw;
  std::optional<std::uint64_t> seed, max_order, trials;
  std::uint64_t gadget_p = 2;
  std::size_t depth = 4, width = 4;
  bool timing = false;
  std::string spec_path;
  auto* oracle_cmd = app.add_subcommand("oracle", "Run the finite cross-check suites");
  oracle_cmd->add_option("--suite", suites_raw, "Comma-separated suite names (default: all)");
  oracle_cmd->add_option("--seed", seed, "RNG seed (default: $ULMEXT_SEED or 0)");
  oracle_cmd->add_option("--max-order", max_order, "Largest group order to enumerate");
  oracle_cmd->add_option("--trials", trials, "Random trials per suite");
  oracle_cmd->add_option("-p", gadget_p, "Prime for the gadget suite")->capture_default_str();
  oracle_cmd->add_option("-I", depth, "Gadget depth")->capture_default_str();
  oracle_cmd->add_option("-K", width, "Gadget width")->capture_default_str();
  oracle_cmd->add_option("--spec", spec_path, "Take defaults from the options block of a spec file");
  oracle_cmd->add_flag("--json", json, "Machine-readable output");
  oracle_cmd->add_flag("--timing", timing, "Report wall time per suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInputError;
  }

  try {
    if (*classify_cmd || *explain_cmd) {
      const auto doc = load(input, in);
      const auto r = classify(doc.problem);
      const bool show = explain || *explain_cmd;
      if (json) {
        auto j = result_to_json(r, show ? "explain" : "classify");
        if (!show) j.erase("trace");
        out << j.dump(2) << "\n";
      } else if (show) {
        print_explain(out, r);
      } else {
        out << class_line(r) << "\n";
      }
      return kExitOk;
    }

    if (*bench_cmd) {
      const auto doc = load(input, in);
      const auto r = classify(doc.problem);
      const auto e0 = evaluate_e0(doc.problem);
      const bool agree = e0.benchmark == r.benchmark;
      if (json) {
        Json j;
        j["schema_version"] = kSchemaVersion;
        j["command"] = "benchmark";
        j["benchmark"] = {{"tag", r.benchmark.tag()}, {"name", r.benchmark.name()}};
        j["class"] = class_to_json(r.klass);
        j["conditions"] = {{"smooth", e0.smooth},
                           {"reducible_to_e0", e0.hyperfinite},
                           {"reducible_to_e0_omega", e0.below_e0_omega},
                           {"agrees_with_class", agree}};
        out << j.dump(2) << "\n";
      } else {
        out << r.benchmark.name() << "\n";
        if (!agree) err << "direct conditions give '" << e0.benchmark.name() << "' instead\n";
      }
      return agree ? kExitOk : kExitCheckFailed;
    }

    if (*validate_cmd) {
      const auto doc = load(input, in);
      if (json)
        out << document_to_json(doc).dump(2) << "\n";
      else if (canonical)
        out << serialize_document(doc);
      else
        out << "ok: " << doc.problem.explicit_primes.size() << " explicit prime(s), " << doc.problem.families.size()
            << " family block(s)\n";
      return kExitOk;
    }

    // oracle
    DocumentOptions defaults;
    if (!spec_path.empty()) defaults = load(spec_path, in).options;
    oracle::SuiteOptions opts;
    opts.seed = seed ? *seed : defaults.seed ? *defaults.seed : env_seed();
    opts.max_order = max_order ? *max_order : defaults.max_order.value_or(0);
    opts.trials = trials ? *trials : defaults.trials.value_or(0);
    opts.p = gadget_p;
    opts.depth = depth;
    opts.width = width;
    std::vector<std::string> names = split_list(suites_raw);
    if (names.empty()) names = defaults.suites;
    if (names.empty()) names = oracle::suite_names();
    for (const auto& n : names)
      if (std::find(oracle::suite_names().begin(), oracle::suite_names().end(), n) == oracle::suite_names().end())
        throw InputError("unknown suite '" + n + "'");

    bool all_ok = true;
    Json reports = Json::array();
    for (const auto& n : names) {
      const auto t0 = std::chrono::steady_clock::now();
      const auto report = oracle::run_suite(n, opts);
      const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      all_ok = all_ok && report.passed();
      if (json) {
        reports.push_back(suite_report_to_json(report, secs, timing));
        continue;
      }
      out << n << ": " << (report.passed() ? "ok" : "FAILED") << " (" << report.checks.size() << " checks, "
          << report.failures() << " failures";
      if (timing) out << ", " << std::fixed << std::setprecision(3) << secs << " s" << std::defaultfloat;
      out << ")\n";
      for (const auto& c : report.checks)
        if (!c.passed) out << "  " << c.name << ": " << c.detail << "\n";
    }
    if (json) {
      Json j;
      j["schema_version"] = kSchemaVersion;
      j["command"] = "oracle";
      j["seed"] = opts.seed;
      j["suites"] = reports;
      j["passed"] = all_ok;
      out << j.dump(2) << "\n";
    }
    return all_ok ? kExitOk : kExitCheckFailed;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }
}

}  // namespace ulmext::cli
