#include "ulmext/ordinal.hpp"

#include <cctype>

#include "ulmext/error.hpp"

namespace ulmext {

Ordinal::Ordinal(std::uint64_t n) : Ordinal(BigInt(n)) {}

Ordinal::Ordinal(const BigInt& n) {
  if (n < 0) throw PreconditionError("ordinal from negative integer");
  if (n > 0) terms_.push_back(Term{Ordinal(), n});
}

Ordinal Ordinal::from_terms_unchecked(std::vector<Term> terms) {
  Ordinal r;
  r.terms_ = std::move(terms);
  return r;
}

Ordinal Ordinal::omega() { return omega_power(Ordinal(1)); }

Ordinal Ordinal::omega_power(Ordinal exponent, BigInt coefficient) {
  if (coefficient < 0) throw PreconditionError("negative CNF coefficient");
  Ordinal r;
  if (coefficient > 0) r.terms_.push_back(Term{std::move(exponent), std::move(coefficient)});
  return r;
}

Ordinal Ordinal::from_terms(std::vector<Term> terms) {
  Ordinal r;
  for (auto& t : terms) r = ord_add(r, omega_power(std::move(t.exponent), std::move(t.coefficient)));
  return r;
}

bool Ordinal::is_finite() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].exponent.is_zero()); }

bool Ordinal::is_successor() const { return !terms_.empty() && terms_.back().exponent.is_zero(); }

bool Ordinal::is_limit() const { return !terms_.empty() && !terms_.back().exponent.is_zero(); }

const BigInt& Ordinal::finite_value() const {
  static const BigInt zero = 0;
  if (!is_finite()) throw PreconditionError("finite_value of an infinite ordinal");
  return terms_.empty() ? zero : terms_[0].coefficient;
}

BigInt Ordinal::finite_part() const { return is_successor() ? terms_.back().coefficient : BigInt(0); }

Ordinal Ordinal::limit_part() const {
  Ordinal r = *this;
  if (r.is_successor()) r.terms_.pop_back();
  return r;
}

Ordinal Ordinal::predecessor() const {
  if (!is_successor()) throw PreconditionError("predecessor of a non-successor ordinal");
  Ordinal r = *this;
  if (--r.terms_.back().coefficient == 0) r.terms_.pop_back();
  return r;
}

Ordinal Ordinal::successor() const { return ord_add(*this, Ordinal(1)); }

std::string Ordinal::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& t : terms_) {
    if (!out.empty()) out += " + ";
    if (t.exponent.is_zero()) {
      out += t.coefficient.str();
      continue;
    }
    out += "w";
    if (t.exponent != Ordinal(1)) {
      out += "^";
      if (t.exponent.is_finite() || t.exponent == omega())
        out += t.exponent.to_string();
      else
        out += "(" + t.exponent.to_string() + ")";
    }
    if (t.coefficient != 1) out += "*" + t.coefficient.str();
  }
  return out;
}

bool operator==(const Ordinal& a, const Ordinal& b) { return a.terms_ == b.terms_; }

std::strong_ordering operator<=>(const Ordinal& a, const Ordinal& b) {
  const std::size_t n = std::min(a.terms_.size(), b.terms_.size());
  for (std::size_t i = 0; i < n; ++i) {
    const auto& x = a.terms_[i];
    const auto& y = b.terms_[i];
    if (auto c = x.exponent <=> y.exponent; c != 0) return c;
    if (x.coefficient != y.coefficient)
      return x.coefficient < y.coefficient ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  return a.terms_.size() <=> b.terms_.size();
}

std::strong_ordering ord_compare(const Ordinal& a, const Ordinal& b) { return a <=> b; }

Ordinal ord_add(const Ordinal& a, const Ordinal& b) {
  if (b.is_zero()) return a;
  const auto& lead = b.terms().front();
  std::vector<Ordinal::Term> out;
  out.reserve(a.terms().size() + b.terms().size());
  for (const auto& t : a.terms()) {
    auto c = t.exponent <=> lead.exponent;
    if (c > 0) {
      out.push_back(t);
    } else {
      if (c == 0) {
        out.push_back(Ordinal::Term{lead.exponent, t.coefficient + lead.coefficient});
        out.insert(out.end(), b.terms().begin() + 1, b.terms().end());
        return Ordinal::from_terms_unchecked(std::move(out));
      }
      break;
    }
  }
  out.insert(out.end(), b.terms().begin(), b.terms().end());
  return Ordinal::from_terms_unchecked(std::move(out));
}

Ordinal ord_left_subtract(const Ordinal& a, const Ordinal& b) {
  if (a > b) throw PreconditionError("left subtraction requires a <= b, got " + a.to_string() + " > " + b.to_string());
  const auto& s = a.terms();
  const auto& t = b.terms();
  std::size_t i = 0;
  while (i < s.size() && i < t.size() && s[i] == t[i]) ++i;
  if (i == t.size()) return Ordinal();  // a == b
  std::vector<Ordinal::Term> out;
  if (i < s.size() && s[i].exponent == t[i].exponent)
    out.push_back(Ordinal::Term{t[i].exponent, t[i].coefficient - s[i].coefficient});
  else
    out.push_back(t[i]);
  out.insert(out.end(), t.begin() + static_cast<std::ptrdiff_t>(i) + 1, t.end());
  return Ordinal::from_terms_unchecked(std::move(out));
}

OrdinalKind ord_kind(const Ordinal& a) {
  if (a.is_zero()) return OrdinalKind::Zero;
  return a.is_successor() ? OrdinalKind::Successor : OrdinalKind::Limit;
}

OneLambdaN decompose_one_lambda_n(const Ordinal& mu) {
  if (mu.is_zero()) throw PreconditionError("decompose_one_lambda_n requires mu >= 1");
  if (mu.is_finite()) return {Ordinal(), static_cast<std::uint64_t>(mu.finite_value() - 1)};
  // 1 + lambda = lambda for infinite lambda.
  return {mu.limit_part(), static_cast<std::uint64_t>(mu.finite_part())};
}

namespace {

class OrdinalParser {
 public:
  explicit OrdinalParser(std::string_view text) : text_(text) {}

  Ordinal parse_all() {
    Ordinal r = sum();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected character '" + std::string(1, text_[pos_]) + "'");
    return r;
  }

 private:
  Ordinal sum() {
    Ordinal r = term();
    for (;;) {
      skip_ws();
      if (!eat('+')) return r;
      skip_ws();
      const std::size_t at = pos_;
      Ordinal t = term();
      // Only normal forms are accepted, so every value has one spelling.
      if (r.is_zero() || t.is_zero()) fail("0 cannot appear inside a sum", at);
      if (!(t.terms().front().exponent < r.terms().back().exponent))
        fail("exponents must strictly decrease (write w*2, not w + w)", at);
      r = ord_add(r, t);
    }
  }

  Ordinal term() {
    skip_ws();
    if (eat('w')) {
      Ordinal exponent(1);
      skip_ws();
      if (eat('^')) exponent = atom();
      BigInt coefficient = 1;
      skip_ws();
      if (eat('*')) {
        skip_ws();
        const std::size_t at = pos_;
        coefficient = natural();
        if (coefficient == 0) fail("coefficient must be positive", at);
      }
      return Ordinal::omega_power(std::move(exponent), std::move(coefficient));
    }
    if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) return Ordinal(natural());
    fail(pos_ < text_.size() ? "expected 'w' or a natural number" : "unexpected end of ordinal");
  }

  Ordinal atom() {
    skip_ws();
    if (eat('(')) {
      Ordinal r = sum();
      skip_ws();
      if (!eat(')')) fail("expected ')'");
      return r;
    }
    if (eat('w')) return Ordinal::omega();
    if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) return Ordinal(natural());
    fail("expected exponent after '^'");
  }

  BigInt natural() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a natural number");
    return BigInt(std::string(text_.substr(start, pos_ - start)));
  }

  bool eat(char c) {
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(const std::string& msg) const { fail(msg, pos_); }
  [[noreturn]] void fail(const std::string& msg, std::size_t at) const {
    throw InputError("ordinal: " + msg, 1, static_cast<int>(at) + 1);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Ordinal parse_ordinal(std::string_view text) { return OrdinalParser(text).parse_all(); }

// ---------------------------------------------------------------------------

ExtendedCount::ExtendedCount(BigInt n) : value_(std::move(n)) {
  if (std::get<BigInt>(value_) < 0) throw PreconditionError("negative count");
}

ExtendedCount ExtendedCount::infinite() {
  ExtendedCount c;
  c.value_ = Infinite{};
  return c;
}

bool ExtendedCount::is_zero() const { return is_finite() && std::get<BigInt>(value_) == 0; }

const BigInt& ExtendedCount::value() const {
  if (is_infinite()) throw PreconditionError("value() of an infinite count");
  return std::get<BigInt>(value_);
}

std::string ExtendedCount::to_string() const { return is_infinite() ? "inf" : value().str(); }

std::strong_ordering operator<=>(const ExtendedCount& a, const ExtendedCount& b) {
  if (a.is_infinite() || b.is_infinite()) return a.is_infinite() <=> b.is_infinite();
  if (a.value() == b.value()) return std::strong_ordering::equal;
  return a.value() < b.value() ? std::strong_ordering::less : std::strong_ordering::greater;
}

ExtendedCount count_add(const ExtendedCount& a, const ExtendedCount& b) {
  if (a.is_infinite() || b.is_infinite()) return ExtendedCount::infinite();
  return ExtendedCount(a.value() + b.value());
}

ExtendedCount count_mul(const ExtendedCount& a, const ExtendedCount& b) {
  if (a.is_zero() || b.is_zero()) return ExtendedCount(0);
  if (a.is_infinite() || b.is_infinite()) return ExtendedCount::infinite();
  return ExtendedCount(a.value() * b.value());
}

ExtendedCount count_sum(std::span<const ExtendedCount> finite_items,
                        std::span<const InfiniteCountFamily> infinite_families) {
  ExtendedCount total(0);
  for (const auto& c : finite_items) total = count_add(total, c);
  for (const auto& f : infinite_families)
    if (!f.item.is_zero()) return ExtendedCount::infinite();
  return total;
}

ExtendedCount parse_count(std::string_view text) {
  if (text == "inf") return ExtendedCount::infinite();
  if (text.empty()) throw InputError("empty count");
  for (char c : text)
    if (!std::isdigit(static_cast<unsigned char>(c))) throw InputError("bad count '" + std::string(text) + "'");
  return ExtendedCount(BigInt(std::string(text)));
}

}  // namespace ulmext
