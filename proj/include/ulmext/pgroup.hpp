#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ulmext/ordinal.hpp"

namespace ulmext {

using Exponent = std::uint64_t;
/// A prime number; 0 marks the symbolic prime of a family template.
using Prime = std::uint64_t;

constexpr Prime kSymbolicPrime = 0;

/// "per_exponent copies of Z/p^n for every n >= start".
struct TailRun {
  Exponent start = 1;
  ExtendedCount per_exponent;

  friend bool operator==(const TailRun&, const TailRun&) = default;
};

/// A direct sum of cyclic p-groups: finitely many explicit exponents plus an
/// optional constant tail. Always stored in canonical form: no zero counts,
/// explicit keys strictly below the tail start, and the tail extended
/// downwards over explicit entries equal to its count.
class CyclicLayer {
 public:
  CyclicLayer() = default;
  CyclicLayer(std::map<Exponent, ExtendedCount> explicit_counts, std::optional<TailRun> tail);

  static CyclicLayer cyclic(Exponent n, ExtendedCount count = 1);
  static CyclicLayer tail(Exponent start, ExtendedCount per_exponent = 1);

  const std::map<Exponent, ExtendedCount>& explicit_counts() const { return explicit_; }
  const std::optional<TailRun>& tail() const { return tail_; }

  bool is_zero() const { return explicit_.empty() && !tail_; }
  bool is_bounded() const { return !tail_; }
  bool is_finite() const;
  /// Number of Z/p^n summands.
  ExtendedCount count_at(Exponent n) const;
  /// Largest exponent present; requires a nonzero bounded layer.
  Exponent max_exponent() const;
  /// p^(sum n * count) or Infinite. Throws for the symbolic prime when the
  /// answer would be a nonzero finite number that depends on p.
  ExtendedCount cardinality(Prime p) const;

  friend bool operator==(const CyclicLayer&, const CyclicLayer&) = default;

 private:
  void canonicalize();

  std::map<Exponent, ExtendedCount> explicit_;
  std::optional<TailRun> tail_;
};

CyclicLayer layer_add(const CyclicLayer& a, const CyclicLayer& b);
/// The layer with every nonzero count replaced by Infinite (a countable
/// infinite direct sum of copies).
CyclicLayer layer_times_omega(const CyclicLayer& a);

/// The half-open run [start, end) of Ulm indices sharing one layer.
struct Segment {
  Ordinal start;
  Ordinal end;
  CyclicLayer layer;

  friend bool operator==(const Segment&, const Segment&) = default;
};

/// The Ulm-level layers G^a / G^(a+1) of a reduced p-group, indexed by
/// ordinals below the Ulm length. Adjacent contiguous runs with equal layers
/// are merged, so equal profiles compare equal.
class UlmProfile {
 public:
  UlmProfile() = default;
  explicit UlmProfile(std::vector<Segment> segments);

  /// One point segment per layer, starting at 0.
  static UlmProfile from_layers(const std::vector<CyclicLayer>& layers);

  const std::vector<Segment>& segments() const { return segments_; }
  bool empty() const { return segments_.empty(); }
  Ordinal length() const;
  /// The layer at Ulm index a, or nullptr beyond the covered range.
  const CyclicLayer* layer_at(const Ordinal& a) const;

  friend bool operator==(const UlmProfile&, const UlmProfile&) = default;

 private:
  std::vector<Segment> segments_;
};

/// A countable p-group D ⊕ R, D divisible of the given rank, R reduced with
/// the given Ulm profile.
struct PGroupDesc {
  Prime prime = kSymbolicPrime;
  ExtendedCount divisible_rank;
  UlmProfile reduced;

  bool is_reduced() const { return divisible_rank.is_zero(); }

  friend bool operator==(const PGroupDesc&, const PGroupDesc&) = default;
};

PGroupDesc prufer(Prime p, ExtendedCount rank = 1);
PGroupDesc reduced_group(Prime p, UlmProfile profile);

struct Violation {
  int segment = -1;  // -1 for whole-description problems
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
  std::string to_string() const;
};

ValidationReport validate(const PGroupDesc& desc);

/// u_a(G): divisible part kept, reduced profile shifted left by a.
PGroupDesc ulm_subgroup(const PGroupDesc& desc, const Ordinal& a);

Ordinal ulm_length(const PGroupDesc& desc);
bool is_zero(const PGroupDesc& desc);
bool is_bounded(const PGroupDesc& desc);
ExtendedCount cardinality(const PGroupDesc& desc);
bool is_finite(const PGroupDesc& desc);

/// Least a with u_a(G) = 0; nullopt when the divisible part is nonzero.
std::optional<Ordinal> vanishing_index(const PGroupDesc& desc);

/// Throws PreconditionError on prime mismatch and on an invalid result.
PGroupDesc direct_sum(const PGroupDesc& a, const PGroupDesc& b);

// ---------------------------------------------------------------------------
// Splitting a reduced group into a countable direct sum of groups of the same
// Ulm length.

/// How one input layer is distributed over members k = 0, 1, 2, ...
struct LayerSplit {
  CyclicLayer head;                  // member 0 only
  CyclicLayer uniform;               // every member
  std::optional<TailRun> diagonal;   // member k: per_exponent copies of Z/p^(start+k)
  std::optional<Exponent> paired;    // member k=<i,j>: one copy of Z/p^(start+i)
  std::optional<TailRun> strided;    // member k: copies of Z/p^n, n+1-start = 2^k*(odd)

  /// Symbolic sum of the layers of all members.
  CyclicLayer layerwise_sum() const;
  ExtendedCount member_count_at(std::uint64_t member, Exponent n) const;
  bool member_layer_nonzero() const;
  bool member_layer_finite() const;
  bool member_layer_unbounded() const;
};

struct SplitSegment {
  Ordinal start;
  Ordinal end;
  LayerSplit split;
};

/// A countably infinite family of reduced p-groups given layer by layer.
struct OmegaFamily {
  Prime prime = kSymbolicPrime;
  std::vector<SplitSegment> segments;

  UlmProfile layerwise_sum() const;
  /// Ulm length shared by all members.
  Ordinal member_length() const;
  /// True when every member's top layer (successor length) is finite nonzero.
  bool member_top_finite() const;
};

/// Inverse of the Cantor pairing <i, j> = (i+j)(i+j+1)/2 + j.
std::pair<std::uint64_t, std::uint64_t> cantor_unpair(std::uint64_t k);

/// Splits a valid reduced group of Ulm length s >= 1 into omega summands of
/// length s, each with finite top layer when s is a successor. Returns
/// nullopt exactly when s = b+1 and the layer at b is finite.
std::optional<OmegaFamily> split_omega(const PGroupDesc& desc);

}  // namespace ulmext
