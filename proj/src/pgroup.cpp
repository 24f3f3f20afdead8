#include "ulmext/pgroup.hpp"

#include <algorithm>
#include <bit>
#include <set>
#include <sstream>

#include "ulmext/error.hpp"

namespace ulmext {

// ---------------------------------------------------------------------------
// CyclicLayer

CyclicLayer::CyclicLayer(std::map<Exponent, ExtendedCount> explicit_counts, std::optional<TailRun> tail)
    : explicit_(std::move(explicit_counts)), tail_(std::move(tail)) {
  canonicalize();
}

CyclicLayer CyclicLayer::cyclic(Exponent n, ExtendedCount count) {
  if (n == 0) throw PreconditionError("cyclic summand Z/p^0 is trivial; exponents start at 1");
  return CyclicLayer({{n, std::move(count)}}, std::nullopt);
}

CyclicLayer CyclicLayer::tail(Exponent start, ExtendedCount per_exponent) {
  if (start == 0) throw PreconditionError("tail must start at exponent >= 1");
  return CyclicLayer({}, TailRun{start, std::move(per_exponent)});
}

void CyclicLayer::canonicalize() {
  if (explicit_.count(0)) throw PreconditionError("exponent 0 in a cyclic layer");
  std::erase_if(explicit_, [](const auto& kv) { return kv.second.is_zero(); });
  if (tail_ && tail_->start == 0) throw PreconditionError("tail must start at exponent >= 1");
  if (tail_ && tail_->per_exponent.is_zero()) tail_.reset();
  if (!tail_) return;
  // Explicit entries at or above the tail start are folded into the explicit
  // part, and the tail restarts above them.
  if (!explicit_.empty() && explicit_.rbegin()->first >= tail_->start) {
    const Exponent top = explicit_.rbegin()->first;
    for (Exponent n = tail_->start; n <= top; ++n) explicit_[n] = count_add(explicit_[n], tail_->per_exponent);
    tail_->start = top + 1;
  }
  while (tail_->start > 1) {
    auto it = explicit_.find(tail_->start - 1);
    if (it == explicit_.end() || it->second != tail_->per_exponent) break;
    explicit_.erase(it);
    --tail_->start;
  }
}

bool CyclicLayer::is_finite() const {
  if (tail_) return false;
  return std::all_of(explicit_.begin(), explicit_.end(), [](const auto& kv) { return kv.second.is_finite(); });
}

ExtendedCount CyclicLayer::count_at(Exponent n) const {
  if (tail_ && n >= tail_->start) return tail_->per_exponent;
  auto it = explicit_.find(n);
  return it == explicit_.end() ? ExtendedCount(0) : it->second;
}

Exponent CyclicLayer::max_exponent() const {
  if (tail_ || explicit_.empty()) throw PreconditionError("max_exponent needs a nonzero bounded layer");
  return explicit_.rbegin()->first;
}

ExtendedCount CyclicLayer::cardinality(Prime p) const {
  if (is_zero()) return ExtendedCount(1);
  if (!is_finite()) return ExtendedCount::infinite();
  if (p == kSymbolicPrime) throw PreconditionError("finite cardinality depends on the (symbolic) prime");
  BigInt exponent = 0;
  for (const auto& [n, c] : explicit_) exponent += BigInt(n) * c.value();
  BigInt v = 1;
  for (BigInt i = 0; i < exponent; ++i) v *= p;
  return ExtendedCount(v);
}

CyclicLayer layer_add(const CyclicLayer& a, const CyclicLayer& b) {
  std::map<Exponent, ExtendedCount> e = a.explicit_counts();
  for (const auto& [n, c] : b.explicit_counts()) e[n] = count_add(e[n], c);
  const auto& ta = a.tail();
  const auto& tb = b.tail();
  std::optional<TailRun> tail;
  if (ta && tb) {
    // Below the later start only the earlier tail contributes.
    const TailRun& lo = ta->start <= tb->start ? *ta : *tb;
    const TailRun& hi = ta->start <= tb->start ? *tb : *ta;
    for (Exponent n = lo.start; n < hi.start; ++n) e[n] = count_add(e[n], lo.per_exponent);
    tail = TailRun{hi.start, count_add(lo.per_exponent, hi.per_exponent)};
  } else if (ta) {
    tail = ta;
  } else if (tb) {
    tail = tb;
  }
  // Explicit keys above the tail start are folded by the constructor.
  return CyclicLayer(std::move(e), std::move(tail));
}

CyclicLayer layer_times_omega(const CyclicLayer& a) {
  std::map<Exponent, ExtendedCount> e;
  for (const auto& [n, c] : a.explicit_counts()) e[n] = ExtendedCount::infinite();
  std::optional<TailRun> t;
  if (a.tail()) t = TailRun{a.tail()->start, ExtendedCount::infinite()};
  return CyclicLayer(std::move(e), std::move(t));
}

// ---------------------------------------------------------------------------
// UlmProfile

UlmProfile::UlmProfile(std::vector<Segment> segments) {
  for (auto& s : segments) {
    if (!segments_.empty() && segments_.back().end == s.start && segments_.back().layer == s.layer) {
      segments_.back().end = std::move(s.end);
      continue;
    }
    segments_.push_back(std::move(s));
  }
}

UlmProfile UlmProfile::from_layers(const std::vector<CyclicLayer>& layers) {
  std::vector<Segment> segs;
  for (std::uint64_t i = 0; i < layers.size(); ++i) segs.push_back(Segment{Ordinal(i), Ordinal(i + 1), layers[i]});
  return UlmProfile(std::move(segs));
}

Ordinal UlmProfile::length() const { return segments_.empty() ? Ordinal() : segments_.back().end; }

const CyclicLayer* UlmProfile::layer_at(const Ordinal& a) const {
  for (const auto& s : segments_)
    if (s.start <= a && a < s.end) return &s.layer;
  return nullptr;
}

// ---------------------------------------------------------------------------
// PGroupDesc

PGroupDesc prufer(Prime p, ExtendedCount rank) { return PGroupDesc{p, std::move(rank), UlmProfile()}; }

PGroupDesc reduced_group(Prime p, UlmProfile profile) { return PGroupDesc{p, ExtendedCount(0), std::move(profile)}; }

std::string ValidationReport::to_string() const {
  std::ostringstream os;
  for (const auto& v : violations) {
    if (v.segment >= 0) os << "segment " << v.segment << ": ";
    os << v.message << "\n";
  }
  return os.str();
}

ValidationReport validate(const PGroupDesc& desc) {
  ValidationReport r;
  const auto& segs = desc.reduced.segments();
  Ordinal expected_start;
  const Ordinal length = desc.reduced.length();
  for (std::size_t i = 0; i < segs.size(); ++i) {
    const auto& s = segs[i];
    const int idx = static_cast<int>(i);
    if (s.start != expected_start)
      r.violations.push_back({idx, "segment starts at " + s.start.to_string() + ", expected " + expected_start.to_string()});
    if (!(s.start < s.end)) r.violations.push_back({idx, "empty segment [" + s.start.to_string() + ", " + s.end.to_string() + ")"});
    expected_start = s.end;
    if (s.layer.is_zero()) {
      r.violations.push_back({idx, "zero layer below the Ulm length"});
      continue;
    }
    // Only a point segment sitting at the top index may carry a bounded layer.
    const bool is_top_point = i + 1 == segs.size() && s.start.successor() == s.end && length.is_successor();
    if (s.layer.is_bounded() && !is_top_point)
      r.violations.push_back({idx, "bounded layer at a non-top Ulm index"});
  }
  return r;
}

namespace {

UlmProfile shift_profile(const UlmProfile& p, const Ordinal& a) {
  std::vector<Segment> out;
  for (const auto& s : p.segments()) {
    if (s.end <= a) continue;
    Ordinal start = s.start <= a ? Ordinal() : ord_left_subtract(a, s.start);
    out.push_back(Segment{std::move(start), ord_left_subtract(a, s.end), s.layer});
  }
  return UlmProfile(std::move(out));
}

}  // namespace

PGroupDesc ulm_subgroup(const PGroupDesc& desc, const Ordinal& a) {
  return PGroupDesc{desc.prime, desc.divisible_rank, shift_profile(desc.reduced, a)};
}

Ordinal ulm_length(const PGroupDesc& desc) { return desc.reduced.length(); }

bool is_zero(const PGroupDesc& desc) { return desc.divisible_rank.is_zero() && desc.reduced.empty(); }

bool is_bounded(const PGroupDesc& desc) {
  if (!desc.divisible_rank.is_zero()) return false;
  const auto& segs = desc.reduced.segments();
  if (segs.empty()) return true;
  return segs.size() == 1 && segs[0].start.is_zero() && segs[0].end == Ordinal(1) && segs[0].layer.is_bounded();
}

ExtendedCount cardinality(const PGroupDesc& desc) {
  if (!desc.divisible_rank.is_zero()) return ExtendedCount::infinite();
  ExtendedCount total(1);
  for (const auto& s : desc.reduced.segments()) {
    if (s.layer.is_zero()) continue;
    if (s.start.successor() != s.end) return ExtendedCount::infinite();
    total = count_mul(total, s.layer.cardinality(desc.prime));
  }
  return total;
}

bool is_finite(const PGroupDesc& desc) {
  if (!desc.divisible_rank.is_zero()) return false;
  for (const auto& s : desc.reduced.segments())
    if (!s.layer.is_zero() && (s.start.successor() != s.end || !s.layer.is_finite())) return false;
  return true;
}

std::optional<Ordinal> vanishing_index(const PGroupDesc& desc) {
  if (!desc.divisible_rank.is_zero()) return std::nullopt;
  return desc.reduced.length();
}

PGroupDesc direct_sum(const PGroupDesc& a, const PGroupDesc& b) {
  if (a.prime != b.prime)
    throw PreconditionError("direct_sum of p-groups for different primes " + std::to_string(a.prime) + " and " +
                            std::to_string(b.prime));
  std::set<Ordinal> cuts;
  for (const auto* p : {&a.reduced, &b.reduced})
    for (const auto& s : p->segments()) {
      cuts.insert(s.start);
      cuts.insert(s.end);
    }
  std::vector<Segment> merged;
  for (auto it = cuts.begin(); it != cuts.end() && std::next(it) != cuts.end(); ++it) {
    const Ordinal& lo = *it;
    const Ordinal& hi = *std::next(it);
    CyclicLayer layer;
    for (const auto* p : {&a.reduced, &b.reduced})
      if (const CyclicLayer* l = p->layer_at(lo)) layer = layer_add(layer, *l);
    merged.push_back(Segment{lo, hi, std::move(layer)});
  }
  PGroupDesc out{a.prime, count_add(a.divisible_rank, b.divisible_rank), UlmProfile(std::move(merged))};
  if (auto report = validate(out); !report.ok())
    throw PreconditionError("direct_sum produced an invalid profile:\n" + report.to_string());
  return out;
}

// ---------------------------------------------------------------------------
// omega splitting

std::pair<std::uint64_t, std::uint64_t> cantor_unpair(std::uint64_t k) {
  std::uint64_t d = 0;
  while ((d + 1) * (d + 2) / 2 <= k) ++d;
  const std::uint64_t j = k - d * (d + 1) / 2;
  return {d - j, j};
}

CyclicLayer LayerSplit::layerwise_sum() const {
  CyclicLayer sum = layer_add(head, layer_times_omega(uniform));
  if (diagonal) sum = layer_add(sum, CyclicLayer::tail(diagonal->start, diagonal->per_exponent));
  if (paired) sum = layer_add(sum, CyclicLayer::tail(*paired, ExtendedCount::infinite()));
  if (strided) sum = layer_add(sum, CyclicLayer::tail(strided->start, strided->per_exponent));
  return sum;
}

ExtendedCount LayerSplit::member_count_at(std::uint64_t member, Exponent n) const {
  ExtendedCount c = uniform.count_at(n);
  if (member == 0) c = count_add(c, head.count_at(n));
  if (diagonal && n == diagonal->start + member) c = count_add(c, diagonal->per_exponent);
  if (paired && n == *paired + cantor_unpair(member).first) c = count_add(c, ExtendedCount(1));
  if (strided && n >= strided->start && member < 64) {
    const std::uint64_t m = n + 1 - strided->start;  // >= 1
    if (static_cast<std::uint64_t>(std::countr_zero(m)) == member) c = count_add(c, strided->per_exponent);
  }
  return c;
}

bool LayerSplit::member_layer_nonzero() const { return !uniform.is_zero() || diagonal || paired || strided; }

bool LayerSplit::member_layer_finite() const { return uniform.is_finite() && !strided; }

bool LayerSplit::member_layer_unbounded() const { return !uniform.is_bounded() || strided.has_value(); }

UlmProfile OmegaFamily::layerwise_sum() const {
  std::vector<Segment> segs;
  for (const auto& s : segments) segs.push_back(Segment{s.start, s.end, s.split.layerwise_sum()});
  return UlmProfile(std::move(segs));
}

Ordinal OmegaFamily::member_length() const { return segments.empty() ? Ordinal() : segments.back().end; }

bool OmegaFamily::member_top_finite() const {
  if (segments.empty()) return false;
  const auto& top = segments.back();
  return top.start.successor() == top.end && top.split.member_layer_nonzero() && top.split.member_layer_finite();
}

namespace {

LayerSplit split_unbounded(const CyclicLayer& layer) {
  LayerSplit s;
  std::map<Exponent, ExtendedCount> head;
  std::map<Exponent, ExtendedCount> uniform;
  for (const auto& [n, c] : layer.explicit_counts()) {
    if (c.is_infinite())
      uniform[n] = ExtendedCount(1);
    else
      head[n] = c;
  }
  std::optional<TailRun> uniform_tail;
  const TailRun& t = *layer.tail();
  if (t.per_exponent.is_infinite())
    uniform_tail = TailRun{t.start, ExtendedCount(1)};
  else
    s.strided = t;
  s.head = CyclicLayer(std::move(head), std::nullopt);
  s.uniform = CyclicLayer(std::move(uniform), uniform_tail);
  return s;
}

LayerSplit split_infinite_top(const CyclicLayer& layer) {
  LayerSplit s;
  std::map<Exponent, ExtendedCount> head;
  std::map<Exponent, ExtendedCount> uniform;
  for (const auto& [n, c] : layer.explicit_counts()) {
    if (c.is_infinite())
      uniform[n] = ExtendedCount(1);
    else
      head[n] = c;
  }
  if (const auto& t = layer.tail()) {
    if (t->per_exponent.is_infinite())
      s.paired = t->start;
    else
      s.diagonal = *t;
  }
  s.head = CyclicLayer(std::move(head), std::nullopt);
  s.uniform = CyclicLayer(std::move(uniform), std::nullopt);
  return s;
}

}  // namespace

std::optional<OmegaFamily> split_omega(const PGroupDesc& desc) {
  if (!desc.is_reduced()) throw PreconditionError("split_omega needs a reduced group");
  if (auto r = validate(desc); !r.ok()) throw PreconditionError("split_omega on invalid description:\n" + r.to_string());
  const Ordinal sigma = ulm_length(desc);
  if (sigma.is_zero()) throw PreconditionError("split_omega needs Ulm length >= 1");
  const auto& segs = desc.reduced.segments();
  if (sigma.is_successor() && segs.back().layer.is_finite()) return std::nullopt;

  OmegaFamily fam{desc.prime, {}};
  for (std::size_t i = 0; i < segs.size(); ++i) {
    const auto& s = segs[i];
    const bool holds_top = i + 1 == segs.size() && sigma.is_successor();
    if (!holds_top) {
      fam.segments.push_back({s.start, s.end, split_unbounded(s.layer)});
      continue;
    }
    const Ordinal top = sigma.predecessor();
    if (s.start < top) fam.segments.push_back({s.start, top, split_unbounded(s.layer)});
    fam.segments.push_back({top, sigma, split_infinite_top(s.layer)});
  }
  return fam;
}

}  // namespace ulmext
