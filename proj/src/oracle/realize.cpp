#include "ulmext/oracle/realize.hpp"

#include <set>

#include "ulmext/error.hpp"

namespace ulmext::oracle {

FgGroup realize_finite(const PGroupDesc& desc) {
  if (desc.prime == kSymbolicPrime) throw PreconditionError("realization needs a concrete prime");
  if (!desc.is_reduced()) throw PreconditionError("realization needs a reduced group");
  if (!is_finite(desc)) throw PreconditionError("realization needs a finite group");
  std::vector<BigInt> orders;
  if (!desc.reduced.empty()) {
    const CyclicLayer* layer = desc.reduced.layer_at(Ordinal(0));
    if (!(ulm_length(desc) == Ordinal(1))) throw PreconditionError("a finite group has Ulm length at most 1");
    for (const auto& [n, count] : layer->explicit_counts()) {
      BigInt q = 1;
      for (Exponent i = 0; i < n; ++i) q *= desc.prime;
      for (BigInt c = 0; c < count.value(); ++c) orders.push_back(q);
    }
  }
  return FgGroup::from_cyclics(orders);
}

RealizationReport check_realization(const PGroupDesc& desc, std::size_t max_elements) {
  RealizationReport rep;
  rep.group = realize_finite(desc);
  if (rep.group.order() > max_elements) throw PreconditionError("realized group too large to enumerate");
  const FiniteAbelian g = FiniteAbelian::of(rep.group);
  const std::uint64_t p = desc.prime;

  // Current subgroup p^j G as a set of element indices.
  std::set<std::size_t> level;
  for (std::size_t i = 0; i < g.order(); ++i) level.insert(i);
  auto socle_log = [&](const std::set<std::size_t>& s) {
    std::size_t count = 0;
    for (auto i : s)
      if (g.is_zero(g.scale(g.element(i), BigInt(p)))) ++count;
    std::uint64_t lg = 0;
    while (count > 1) {
      count /= p;
      ++lg;
    }
    return lg;
  };
  const CyclicLayer* layer = desc.reduced.empty() ? nullptr : desc.reduced.layer_at(Ordinal(0));
  std::uint64_t prev = socle_log(level);
  for (Exponent n = 1; level.size() > 1 || n == 1; ++n) {
    std::set<std::size_t> next;
    for (auto i : level) next.insert(g.index(g.scale(g.element(i), BigInt(p))));
    const std::uint64_t cur = socle_log(next);
    const ExtendedCount declared = layer ? layer->count_at(n) : ExtendedCount(0);
    if (declared != ExtendedCount(prev - cur))
      rep.mismatches.push_back("Z/p^" + std::to_string(n) + ": declared " + declared.to_string() + ", realized " +
                               std::to_string(prev - cur));
    prev = cur;
    level = std::move(next);
    if (n > 64) {
      rep.mismatches.push_back("p^j G does not reach 0");
      break;
    }
  }
  if (layer && !layer->is_zero() && layer->max_exponent() + 1 < 64) {
    // Beyond the top exponent nothing may be declared.
    for (Exponent n = layer->max_exponent() + 1; n < layer->max_exponent() + 3; ++n)
      if (!layer->count_at(n).is_zero()) rep.mismatches.push_back("declared summands above the chain length");
  }
  return rep;
}

}  // namespace ulmext::oracle
