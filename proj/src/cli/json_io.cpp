#include "ulmext/cli/json_io.hpp"

#include <algorithm>

#include "ulmext/error.hpp"

namespace ulmext::cli {

namespace {

[[noreturn]] void bad(const std::string& path, const std::string& msg) { throw InputError(path + ": " + msg); }

std::string count_text(const ExtendedCount& c) { return c.to_string(); }

ExtendedCount count_from(const Json& j, const std::string& path) {
  if (j.is_number_unsigned()) return ExtendedCount(j.get<std::uint64_t>());
  if (j.is_string()) {
    try {
      return parse_count(j.get<std::string>());
    } catch (const InputError& e) {
      bad(path, e.bare_message());
    }
  }
  bad(path, "expected a count (non-negative integer or \"inf\")");
}

std::uint64_t uint_from(const Json& j, const std::string& path) {
  if (!j.is_number_unsigned()) bad(path, "expected a non-negative integer");
  return j.get<std::uint64_t>();
}

Ordinal ordinal_from(const Json& j, const std::string& path) {
  if (j.is_number_unsigned()) return Ordinal(j.get<std::uint64_t>());
  if (!j.is_string()) bad(path, "expected an ordinal string such as \"w*2 + 1\"");
  try {
    return parse_ordinal(j.get<std::string>());
  } catch (const InputError& e) {
    bad(path, e.bare_message());
  }
}

void reject_unknown(const Json& j, std::initializer_list<const char*> keys, const std::string& path) {
  for (const auto& [k, v] : j.items())
    if (std::none_of(keys.begin(), keys.end(), [&](const char* s) { return k == s; })) bad(path, "unknown key '" + k + "'");
}

Json layer_to_json(const CyclicLayer& l) {
  Json j = Json::object();
  Json counts = Json::object();
  for (const auto& [n, c] : l.explicit_counts()) counts[std::to_string(n)] = count_text(c);
  j["counts"] = counts;
  if (l.tail()) j["tail"] = {{"start", l.tail()->start}, {"per_exponent", count_text(l.tail()->per_exponent)}};
  return j;
}

CyclicLayer layer_from_json(const Json& j, const std::string& path) {
  if (!j.is_object()) bad(path, "expected a layer object");
  reject_unknown(j, {"counts", "tail"}, path);
  std::map<Exponent, ExtendedCount> counts;
  if (j.contains("counts")) {
    const Json& c = j["counts"];
    if (!c.is_object()) bad(path + ".counts", "expected an object from exponent to count");
    for (const auto& [k, v] : c.items()) {
      const std::string kp = path + ".counts." + k;
      if (k.empty() || !std::all_of(k.begin(), k.end(), [](char ch) { return ch >= '0' && ch <= '9'; }) || k.size() > 18)
        bad(kp, "exponent keys must be positive integers");
      const Exponent n = std::stoull(k);
      if (n == 0) bad(kp, "exponent keys must be positive integers");
      counts[n] = count_from(v, kp);
    }
  }
  std::optional<TailRun> tail;
  if (j.contains("tail")) {
    const Json& t = j["tail"];
    const std::string tp = path + ".tail";
    if (!t.is_object()) bad(tp, "expected {\"start\": k, \"per_exponent\": c}");
    reject_unknown(t, {"start", "per_exponent"}, tp);
    if (!t.contains("start")) bad(tp, "missing 'start'");
    const Exponent start = uint_from(t["start"], tp + ".start");
    if (start == 0) bad(tp + ".start", "tails start at exponent 1 or more");
    tail = TailRun{start, t.contains("per_exponent") ? count_from(t["per_exponent"], tp + ".per_exponent") : ExtendedCount(1)};
  }
  return CyclicLayer(std::move(counts), std::move(tail));
}

PrimePair pair_from_json(const Json& j, Prime p, const std::string& path, bool family) {
  if (!j.is_object()) bad(path, "expected an object with C and A");
  if (family)
    reject_unknown(j, {"primes_above", "C", "A"}, path);
  else
    reject_unknown(j, {"C", "A"}, path);
  if (!j.contains("C") || !j.contains("A")) bad(path, "needs both C and A");
  PrimePair pair{group_from_json(j["C"], p, path + ".C"), group_from_json(j["A"], p, path + ".A")};
  if (!pair.a.is_reduced()) bad(path + ".A", "A must be reduced");
  return pair;
}

}  // namespace

Json group_to_json(const PGroupDesc& desc) {
  Json segs = Json::array();
  for (const auto& s : desc.reduced.segments())
    segs.push_back({{"start", s.start.to_string()}, {"end", s.end.to_string()}, {"layer", layer_to_json(s.layer)}});
  return {{"divisible_rank", count_text(desc.divisible_rank)}, {"segments", segs}};
}

PGroupDesc group_from_json(const Json& j, Prime p, const std::string& path) {
  if (j.is_string()) {
    try {
      return parse_group(j.get<std::string>(), p);
    } catch (const InputError& e) {
      bad(path, e.what());
    }
  }
  if (!j.is_object()) bad(path, "expected a group object or a group expression string");
  reject_unknown(j, {"divisible_rank", "segments"}, path);
  PGroupDesc g{p, ExtendedCount(0), UlmProfile()};
  if (j.contains("divisible_rank")) g.divisible_rank = count_from(j["divisible_rank"], path + ".divisible_rank");
  if (j.contains("segments")) {
    const Json& arr = j["segments"];
    if (!arr.is_array()) bad(path + ".segments", "expected an array");
    std::vector<Segment> segs;
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const std::string sp = path + ".segments[" + std::to_string(i) + "]";
      const Json& s = arr[i];
      if (!s.is_object()) bad(sp, "expected {start, end, layer}");
      reject_unknown(s, {"start", "end", "layer"}, sp);
      if (!s.contains("start") || !s.contains("end") || !s.contains("layer")) bad(sp, "needs start, end and layer");
      segs.push_back(Segment{ordinal_from(s["start"], sp + ".start"), ordinal_from(s["end"], sp + ".end"),
                             layer_from_json(s["layer"], sp + ".layer")});
    }
    try {
      g.reduced = UlmProfile(std::move(segs));
    } catch (const PreconditionError& e) {
      bad(path + ".segments", e.what());
    }
  }
  if (auto r = validate(g); !r.ok()) bad(path, r.to_string());
  return g;
}

Json document_to_json(const SpecDocument& doc) {
  Json j;
  j["version"] = doc.version;
  Json primes = Json::object();
  for (const auto& [p, pair] : doc.problem.explicit_primes)
    primes[std::to_string(p)] = {{"C", group_to_json(pair.c)}, {"A", group_to_json(pair.a)}};
  j["primes"] = primes;
  if (!doc.problem.families.empty()) {
    const auto& f = doc.problem.families.front();
    j["family"] = {{"primes_above", f.primes_above}, {"C", group_to_json(f.pair.c)}, {"A", group_to_json(f.pair.a)}};
  }
  const auto& o = doc.options;
  if (o.seed || o.max_order || o.trials || !o.suites.empty()) {
    Json opt = Json::object();
    if (o.seed) opt["seed"] = *o.seed;
    if (o.max_order) opt["max_order"] = *o.max_order;
    if (o.trials) opt["trials"] = *o.trials;
    if (!o.suites.empty()) opt["suites"] = o.suites;
    j["options"] = opt;
  }
  return j;
}

SpecDocument document_from_json(const Json& j) {
  if (!j.is_object()) bad("$", "expected an object");
  reject_unknown(j, {"version", "primes", "family", "options"}, "$");
  SpecDocument doc;
  if (j.contains("version")) {
    doc.version = uint_from(j["version"], "$.version");
    if (doc.version != kDocumentVersion) bad("$.version", "unsupported document version " + std::to_string(doc.version));
  }
  if (j.contains("primes")) {
    const Json& ps = j["primes"];
    if (!ps.is_object()) bad("$.primes", "expected an object keyed by prime");
    for (const auto& [k, v] : ps.items()) {
      const std::string path = "$.primes." + k;
      if (k.empty() || k.size() > 18 || !std::all_of(k.begin(), k.end(), [](char ch) { return ch >= '0' && ch <= '9'; }))
        bad(path, "keys must be primes");
      const Prime p = std::stoull(k);
      if (!is_prime(p)) bad(path, k + " is not a prime");
      if (doc.problem.explicit_primes.count(p)) bad(path, "prime given twice");
      doc.problem.explicit_primes[p] = pair_from_json(v, p, path, false);
    }
  }
  if (j.contains("family")) {
    const Json& f = j["family"];
    if (!f.is_object() || !f.contains("primes_above")) bad("$.family", "expected {primes_above, C, A}");
    const std::uint64_t k = uint_from(f["primes_above"], "$.family.primes_above");
    doc.problem.families.push_back(PrimeFamily{k, pair_from_json(f, kSymbolicPrime, "$.family", true)});
  }
  if (j.contains("options")) {
    const Json& o = j["options"];
    if (!o.is_object()) bad("$.options", "expected an object");
    reject_unknown(o, {"seed", "max_order", "trials", "suites"}, "$.options");
    if (o.contains("seed")) doc.options.seed = uint_from(o["seed"], "$.options.seed");
    if (o.contains("max_order")) doc.options.max_order = uint_from(o["max_order"], "$.options.max_order");
    if (o.contains("trials")) doc.options.trials = uint_from(o["trials"], "$.options.trials");
    if (o.contains("suites")) {
      const Json& s = o["suites"];
      if (!s.is_array() || !std::all_of(s.begin(), s.end(), [](const Json& x) { return x.is_string(); }))
        bad("$.options.suites", "expected an array of suite names");
      for (const auto& x : s) doc.options.suites.push_back(x.get<std::string>());
    }
  }
  if (auto problems = validate_spec(doc.problem); !problems.empty()) throw InputError(problems.front());
  return doc;
}

SpecDocument document_from_json_text(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    // Translate the byte offset into a line and column.
    const std::size_t upto = std::min<std::size_t>(e.byte > 0 ? e.byte - 1 : 0, text.size());
    int line = 1, col = 1;
    for (std::size_t i = 0; i < upto; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    std::string msg = e.what();
    if (auto pos = msg.find("; "); pos != std::string::npos) msg = msg.substr(pos + 2);
    throw InputError("invalid JSON: " + msg, line, col);
  }
  return document_from_json(j);
}

Json class_to_json(const ComplexityClass& c) {
  return {{"shape", shape_name(c.shape)}, {"level", c.level.to_string()}, {"text", c.to_string()}};
}

Json result_to_json(const ClassificationResult& r, const std::string& command) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["command"] = command;
  j["class"] = class_to_json(r.klass);
  j["benchmark"] = {{"tag", r.benchmark.tag()}, {"name", r.benchmark.name()}};
  j["case"] = r.trace.fired;
  j["rule"] = case_rule(r.trace.fired);
  Json trace;
  Json primes = Json::array();
  for (const auto& pt : r.trace.primes) {
    Json e = {{"prime", pt.prime}, {"active", pt.active}};
    e["mu_p"] = pt.mu_p ? Json(pt.mu_p->to_string()) : Json(nullptr);
    e["case"] = pt.tag;
    e["class"] = class_to_json(pt.klass);
    primes.push_back(e);
  }
  trace["primes"] = primes;
  trace["mu"] = r.trace.mu ? Json(r.trace.mu->to_string()) : Json(nullptr);
  trace["lambda"] = r.trace.lambda ? Json(r.trace.lambda->to_string()) : Json(nullptr);
  trace["n"] = r.trace.n ? Json(*r.trace.n) : Json(nullptr);
  trace["p_mu"] = r.trace.p_mu;
  trace["W"] = r.trace.W ? Json(r.trace.W->to_string()) : Json(nullptr);
  trace["w"] = r.trace.w ? Json(r.trace.w->to_string()) : Json(nullptr);
  j["trace"] = trace;
  return j;
}

Json suite_report_to_json(const oracle::SuiteReport& r, double seconds, bool with_timing) {
  Json j;
  j["suite"] = r.suite;
  j["checks"] = r.checks.size();
  j["failures"] = r.failures();
  j["passed"] = r.passed();
  Json failed = Json::array();
  for (const auto& c : r.checks)
    if (!c.passed) failed.push_back({{"name", c.name}, {"detail", c.detail}});
  j["failed_checks"] = failed;
  if (with_timing) j["seconds"] = seconds;
  return j;
}

}  // namespace ulmext::cli
