#include "ulmext/cli/dsl.hpp"

#include <cctype>
#include <sstream>

#include "ulmext/cli/json_io.hpp"
#include "ulmext/error.hpp"

namespace ulmext::cli {

namespace {

struct Loc {
  int line = 1;
  int col = 1;
};

bool is_word(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

PGroupDesc zero_group(Prime p) { return PGroupDesc{p, ExtendedCount(0), UlmProfile()}; }

CyclicLayer scale_layer(const CyclicLayer& l, const ExtendedCount& m) {
  std::map<Exponent, ExtendedCount> counts;
  for (const auto& [n, c] : l.explicit_counts()) counts[n] = count_mul(c, m);
  std::optional<TailRun> tail;
  if (l.tail()) tail = TailRun{l.tail()->start, count_mul(l.tail()->per_exponent, m)};
  return CyclicLayer(std::move(counts), std::move(tail));
}

// m copies of g, m possibly infinite.
PGroupDesc scale_group(const PGroupDesc& g, const ExtendedCount& m) {
  if (m.is_zero()) return zero_group(g.prime);
  std::vector<Segment> segs;
  for (const auto& s : g.reduced.segments()) segs.push_back(Segment{s.start, s.end, scale_layer(s.layer, m)});
  return PGroupDesc{g.prime, count_mul(g.divisible_rank, m), UlmProfile(std::move(segs))};
}

class Parser {
 public:
  explicit Parser(std::string_view src) : src_(src) {}

  SpecDocument document() {
    SpecDocument doc;
    bool saw_version = false, saw_options = false;
    std::optional<Loc> family_at;
    while (!at_end()) {
      const Loc at = here();
      if (accept("version")) {
        if (saw_version) fail("version given twice", at);
        saw_version = true;
        const Loc vl = (skip(), here());
        doc.version = small_number("version");
        if (doc.version != kDocumentVersion) fail("unsupported document version " + std::to_string(doc.version), vl);
        expect(";");
      } else if (accept("options")) {
        if (saw_options) fail("options given twice", at);
        saw_options = true;
        doc.options = options();
      } else if (accept("prime")) {
        const Loc pl = (skip(), here());
        const std::uint64_t p = small_number("prime");
        if (!is_prime(p)) fail(std::to_string(p) + " is not a prime", pl);
        if (doc.problem.explicit_primes.count(p)) fail("prime " + std::to_string(p) + " given twice", pl);
        for (const auto& f : doc.problem.families)
          if (p > f.primes_above)
            fail("prime " + std::to_string(p) + " is already covered by 'family primes > " + std::to_string(f.primes_above) + "'", pl);
        doc.problem.explicit_primes[p] = body(p, at);
      } else if (accept("family")) {
        if (family_at) fail("only one 'family primes > k' block is allowed", at);
        family_at = at;
        expect("primes");
        expect(">");
        const std::uint64_t k = small_number("family bound");
        for (const auto& [p, pair] : doc.problem.explicit_primes)
          if (p > k) fail("explicit prime " + std::to_string(p) + " overlaps 'family primes > " + std::to_string(k) + "'", at);
        doc.problem.families.push_back(PrimeFamily{k, body(kSymbolicPrime, at)});
      } else {
        fail("expected 'prime', 'family', 'options' or 'version'" + found());
      }
    }
    if (auto problems = validate_spec(doc.problem); !problems.empty()) throw InputError(problems.front());
    return doc;
  }

  PGroupDesc single_group(Prime p) {
    PGroupDesc g = expr(p);
    if (!at_end()) fail("unexpected input after the group expression" + found());
    return g;
  }

 private:
  // -- lexical layer --------------------------------------------------------

  Loc here() const { return {line_, col_}; }

  [[noreturn]] void fail(const std::string& msg, Loc at) const { throw InputError(msg, at.line, at.col); }
  [[noreturn]] void fail(const std::string& msg) {
    skip();
    fail(msg, here());
  }

  char peek(std::size_t k = 0) const { return pos_ + k < src_.size() ? src_[pos_ + k] : '\0'; }

  void advance(std::size_t n = 1) {
    for (std::size_t i = 0; i < n && pos_ < src_.size(); ++i, ++pos_) {
      if (src_[pos_] == '\n') {
        ++line_;
        col_ = 1;
      } else if ((static_cast<unsigned char>(src_[pos_]) & 0xC0) != 0x80) {
        ++col_;  // count code points, not bytes
      }
    }
  }

  void skip() {
    for (;;) {
      const char c = peek();
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        advance();
      } else if (c == '#' || (c == '/' && peek(1) == '/')) {
        while (pos_ < src_.size() && peek() != '\n') advance();
      } else {
        return;
      }
    }
  }

  bool at_end() {
    skip();
    return pos_ >= src_.size();
  }

  bool accept(std::string_view tok) {
    skip();
    if (src_.substr(pos_).substr(0, tok.size()) != tok) return false;
    if (is_word(tok.back()) && is_word(peek(tok.size()))) return false;
    advance(tok.size());
    return true;
  }

  void expect(std::string_view tok) {
    if (!accept(tok)) fail("expected '" + std::string(tok) + "'" + found());
  }

  std::string found() {
    skip();
    if (pos_ >= src_.size()) return " but reached the end of input";
    std::size_t end = pos_;
    while (end < src_.size() && end - pos_ < 12 && !std::isspace(static_cast<unsigned char>(src_[end]))) ++end;
    return " near '" + std::string(src_.substr(pos_, std::max<std::size_t>(end - pos_, 1))) + "'";
  }

  BigInt number() {
    skip();
    if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected a number" + found());
    std::size_t end = pos_;
    while (end < src_.size() && std::isdigit(static_cast<unsigned char>(src_[end]))) ++end;
    BigInt v(std::string(src_.substr(pos_, end - pos_)));
    advance(end - pos_);
    return v;
  }

  std::uint64_t small_number(const char* what) {
    const Loc at = (skip(), here());
    const BigInt v = number();
    if (v > BigInt(1) << 62) fail(std::string(what) + " is too large", at);
    return static_cast<std::uint64_t>(v);
  }

  ExtendedCount count() {
    if (accept("inf")) return ExtendedCount::infinite();
    return ExtendedCount(number());
  }

  // "<count> *" in front of a term, if present.
  std::optional<ExtendedCount> multiplicity() {
    skip();
    const std::size_t p0 = pos_;
    const int l0 = line_, c0 = col_;
    if (accept("inf")) {
      expect("*");
      return ExtendedCount::infinite();
    }
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      const BigInt k = number();
      if (accept("*")) return ExtendedCount(k);
      pos_ = p0;
      line_ = l0;
      col_ = c0;
    }
    return std::nullopt;
  }

  // -- grammar ----------------------------------------------------------------

  DocumentOptions options() {
    DocumentOptions o;
    expect("{");
    while (!accept("}")) {
      const Loc at = (skip(), here());
      if (accept("seed")) {
        expect("=");
        o.seed = small_number("seed");
      } else if (accept("max_order")) {
        expect("=");
        o.max_order = small_number("max_order");
      } else if (accept("trials")) {
        expect("=");
        o.trials = small_number("trials");
      } else if (accept("suites")) {
        expect("=");
        do o.suites.push_back(identifier()); while (accept(","));
      } else {
        fail("unknown option; expected seed, max_order, trials or suites", at);
      }
      if (!accept(";")) {
        expect("}");
        break;
      }
    }
    return o;
  }

  std::string identifier() {
    skip();
    std::size_t end = pos_;
    while (end < src_.size() && (is_word(src_[end]) || src_[end] == '-')) ++end;
    if (end == pos_) fail("expected a name" + found());
    std::string s(src_.substr(pos_, end - pos_));
    advance(end - pos_);
    return s;
  }

  PrimePair body(Prime p, Loc block) {
    expect("{");
    std::optional<PGroupDesc> c, a;
    while (!accept("}")) {
      const Loc at = (skip(), here());
      if (accept("C")) {
        if (c) fail("C given twice", at);
        expect("=");
        c = expr(p);
      } else if (accept("A")) {
        if (a) fail("A given twice", at);
        expect("=");
        const Loc el = (skip(), here());
        a = expr(p);
        if (!a->is_reduced()) fail("A must be reduced: drop the Z(p^inf) summands", el);
      } else {
        fail("expected 'C = ...;' or 'A = ...;'" + found());
      }
      if (!accept(";")) {
        expect("}");
        break;
      }
    }
    if (!c || !a) fail("a block needs both 'C = ...' and 'A = ...'", block);
    return PrimePair{std::move(*c), std::move(*a)};
  }

  PGroupDesc expr(Prime p) {
    skip();
    PGroupDesc acc = term(p);
    for (;;) {
      const Loc at = (skip(), here());
      if (!accept("+")) return acc;
      PGroupDesc t = term(p);
      try {
        acc = direct_sum(acc, t);
      } catch (const PreconditionError& e) {
        fail(e.what(), at);
      }
    }
  }

  PGroupDesc term(Prime p) {
    const Loc at = (skip(), here());
    const auto mult = multiplicity();
    PGroupDesc g = atom(p);
    if (!mult) return g;
    PGroupDesc scaled = scale_group(g, *mult);
    if (auto r = validate(scaled); !r.ok()) fail("invalid multiple: " + r.violations.front().message, at);
    return scaled;
  }

  PGroupDesc atom(Prime p) {
    const Loc at = (skip(), here());
    if (accept("(")) {
      PGroupDesc g = expr(p);
      expect(")");
      return g;
    }
    if (peek() == '0' && !is_word(peek(1))) {
      advance();
      return zero_group(p);
    }
    if (accept("Z(")) {
      prime_symbol(p);
      expect("^");
      expect("inf");
      expect(")");
      return prufer(p, 1);
    }
    if (accept("Z/")) return reduced_group(p, UlmProfile::from_layers({CyclicLayer::cyclic(exponent_after_slash(p, at))}));
    if (accept("sum_{")) {
      expect("n");
      expect(">=");
      const Loc kl = (skip(), here());
      const std::uint64_t k = small_number("tail start");
      if (k == 0) fail("tails start at exponent 1 or more", kl);
      expect("}");
      expect("Z/p^n");
      return reduced_group(p, UlmProfile::from_layers({CyclicLayer::tail(k)}));
    }
    if (accept("layers")) return layers(p, at);
    fail("expected a group: 0, Z/p^k, Z(p^inf), sum_{n>=k} Z/p^n or layers { ... }" + found());
  }

  void prime_symbol(Prime p) {
    if (accept("p")) return;
    const Loc at = (skip(), here());
    const BigInt v = number();
    if (p == kSymbolicPrime) fail("a family block must write the prime as p", at);
    if (v != p) fail("this block is for the prime " + std::to_string(p), at);
  }

  // After "Z/": p, p^k, a power of the block's prime, or q^k with q = p.
  Exponent exponent_after_slash(Prime p, Loc at) {
    if (accept("p")) {
      if (!accept("^")) return 1;
      const Loc el = (skip(), here());
      const std::uint64_t e = small_number("exponent");
      if (e == 0) fail("exponent must be at least 1", el);
      return e;
    }
    const Loc nl = (skip(), here());
    if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected p or a prime power after 'Z/'" + found());
    const BigInt n = number();
    if (p == kSymbolicPrime) fail("a family block must write orders as Z/p^k", nl);
    if (accept("^")) {
      const Loc el = (skip(), here());
      const std::uint64_t e = small_number("exponent");
      if (n != p) fail("Z/" + n.str() + "^k is not a " + std::to_string(p) + "-group", nl);
      if (e == 0) fail("exponent must be at least 1", el);
      return e;
    }
    BigInt m = n;
    Exponent e = 0;
    while (m > 1 && m % p == 0) {
      m /= p;
      ++e;
    }
    if (m != 1 || e == 0) fail("Z/" + n.str() + " is not a nontrivial " + std::to_string(p) + "-group", nl);
    (void)at;
    return e;
  }

  PGroupDesc layers(Prime p, Loc at) {
    expect("{");
    std::vector<Segment> segs;
    while (!accept("}")) {
      Ordinal start, end;
      if (accept("[")) {
        start = ordinal_until(',');
        expect(",");
        end = ordinal_until(')');
        expect(")");
      } else {
        start = ordinal_until(':');
        end = start.successor();
      }
      expect(":");
      segs.push_back(Segment{std::move(start), std::move(end), layer(p)});
      if (!accept(";")) {
        expect("}");
        break;
      }
    }
    PGroupDesc g = reduced_group(p, UlmProfile(std::move(segs)));
    if (auto r = validate(g); !r.ok()) {
      const auto& v = r.violations.front();
      fail("invalid layers (segment " + std::to_string(v.segment) + "): " + v.message, at);
    }
    return g;
  }

  Ordinal ordinal_until(char delim) {
    skip();
    const Loc at = here();
    std::size_t end = pos_;
    while (end < src_.size() && src_[end] != delim && src_[end] != '\n' && src_[end] != ';' && src_[end] != '}') ++end;
    std::string_view text = src_.substr(pos_, end - pos_);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
    if (text.empty()) fail("expected an ordinal" + found());
    Ordinal o;
    try {
      o = parse_ordinal(text);
    } catch (const InputError& e) {
      fail(e.bare_message(), Loc{at.line, at.col + std::max(e.column(), 1) - 1});
    }
    advance(text.size());
    return o;
  }

  CyclicLayer layer(Prime p) {
    CyclicLayer acc = layer_term(p);
    while (accept("+")) acc = layer_add(acc, layer_term(p));
    return acc;
  }

  CyclicLayer layer_term(Prime p) {
    const Loc at = (skip(), here());
    const auto mult = multiplicity();
    CyclicLayer l;
    if (accept("tail")) {
      expect("(");
      const Loc kl = (skip(), here());
      const std::uint64_t k = small_number("tail start");
      if (k == 0) fail("tails start at exponent 1 or more", kl);
      ExtendedCount per = 1;
      if (accept(",")) per = count();
      expect(")");
      l = CyclicLayer::tail(k, per);
    } else if (accept("Z/")) {
      l = CyclicLayer::cyclic(exponent_after_slash(p, at));
    } else if (peek() == '0' && !is_word(peek(1))) {
      advance();
    } else {
      fail("expected a layer term: Z/p^k, tail(k) or tail(k, count)" + found());
    }
    return mult ? scale_layer(l, *mult) : l;
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

bool looks_like_json(std::string_view text) {
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    return c == '{';
  }
  return false;
}

std::string layer_text(const CyclicLayer& l) {
  std::vector<std::string> parts;
  for (const auto& [n, c] : l.explicit_counts()) {
    std::string t = c == ExtendedCount(1) ? "" : c.to_string() + "*";
    t += n == 1 ? "Z/p" : "Z/p^" + std::to_string(n);
    parts.push_back(t);
  }
  if (l.tail()) {
    const auto& t = *l.tail();
    parts.push_back("tail(" + std::to_string(t.start) + (t.per_exponent == ExtendedCount(1) ? "" : ", " + t.per_exponent.to_string()) + ")");
  }
  if (parts.empty()) return "0";
  std::string s;
  for (const auto& part : parts) s += (s.empty() ? "" : " + ") + part;
  return s;
}

// The same layer as group-level terms, used for profiles of length one.
std::string layer_as_group(const CyclicLayer& l) {
  std::vector<std::string> parts;
  for (const auto& [n, c] : l.explicit_counts())
    parts.push_back((c == ExtendedCount(1) ? "" : c.to_string() + "*") + (n == 1 ? std::string("Z/p") : "Z/p^" + std::to_string(n)));
  if (l.tail()) {
    const auto& t = *l.tail();
    parts.push_back((t.per_exponent == ExtendedCount(1) ? "" : t.per_exponent.to_string() + "*") + "sum_{n>=" +
                    std::to_string(t.start) + "} Z/p^n");
  }
  std::string s;
  for (const auto& part : parts) s += (s.empty() ? "" : " + ") + part;
  return s;
}

}  // namespace

SpecDocument parse_document(std::string_view text) {
  if (looks_like_json(text)) return document_from_json_text(text);
  return Parser(text).document();
}

ProblemSpec parse_spec(std::string_view text) { return parse_document(text).problem; }

PGroupDesc parse_group(std::string_view text, Prime p) { return Parser(text).single_group(p); }

std::string serialize_group(const PGroupDesc& desc) {
  std::vector<std::string> parts;
  if (!desc.divisible_rank.is_zero())
    parts.push_back((desc.divisible_rank == ExtendedCount(1) ? "" : desc.divisible_rank.to_string() + "*") + std::string("Z(p^inf)"));
  const auto& segs = desc.reduced.segments();
  if (segs.size() == 1 && segs[0].start.is_zero() && segs[0].end == Ordinal(1) && !segs[0].layer.is_zero()) {
    parts.push_back(layer_as_group(segs[0].layer));
  } else if (!segs.empty()) {
    std::string s = "layers { ";
    for (std::size_t i = 0; i < segs.size(); ++i) {
      const auto& seg = segs[i];
      if (i) s += "; ";
      if (seg.start.successor() == seg.end)
        s += seg.start.to_string();
      else
        s += "[" + seg.start.to_string() + ", " + seg.end.to_string() + ")";
      s += ": " + layer_text(seg.layer);
    }
    parts.push_back(s + " }");
  }
  if (parts.empty()) return "0";
  std::string s;
  for (const auto& part : parts) s += (s.empty() ? "" : " + ") + part;
  return s;
}

std::string serialize_spec(const ProblemSpec& spec) {
  std::ostringstream os;
  auto block = [&](const std::string& head, const PrimePair& pair) {
    os << head << " {\n  C = " << serialize_group(pair.c) << ";\n  A = " << serialize_group(pair.a) << ";\n}\n";
  };
  for (const auto& [p, pair] : spec.explicit_primes) block("prime " + std::to_string(p), pair);
  for (const auto& f : spec.families) block("family primes > " + std::to_string(f.primes_above), f.pair);
  return os.str();
}

std::string serialize_document(const SpecDocument& doc) {
  std::ostringstream os;
  os << "version " << doc.version << ";\n";
  const auto& o = doc.options;
  if (o.seed || o.max_order || o.trials || !o.suites.empty()) {
    os << "options {";
    if (o.seed) os << " seed = " << *o.seed << ";";
    if (o.max_order) os << " max_order = " << *o.max_order << ";";
    if (o.trials) os << " trials = " << *o.trials << ";";
    if (!o.suites.empty()) {
      os << " suites = ";
      for (std::size_t i = 0; i < o.suites.size(); ++i) os << (i ? ", " : "") << o.suites[i];
      os << ";";
    }
    os << " }\n";
  }
  os << serialize_spec(doc.problem);
  return os.str();
}

}  // namespace ulmext::cli
