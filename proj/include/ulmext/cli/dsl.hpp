#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ulmext/classifier.hpp"

namespace ulmext::cli {

/// Defaults for the oracle verb carried inside a spec document.
struct DocumentOptions {
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> max_order;
  std::optional<std::uint64_t> trials;
  std::vector<std::string> suites;

  friend bool operator==(const DocumentOptions&, const DocumentOptions&) = default;
};

struct SpecDocument {
  std::uint64_t version = 1;
  ProblemSpec problem;
  DocumentOptions options;

  friend bool operator==(const SpecDocument&, const SpecDocument&) = default;
};

constexpr std::uint64_t kDocumentVersion = 1;

/// Parses either surface syntax: text whose first non-blank character is
/// '{' is read as JSON, anything else as the DSL. Throws InputError with a
/// line and column on syntax and validation problems.
SpecDocument parse_document(std::string_view text);
ProblemSpec parse_spec(std::string_view text);

/// One group expression for the given prime (kSymbolicPrime for a family).
PGroupDesc parse_group(std::string_view text, Prime p = kSymbolicPrime);

/// Canonical DSL; parse_document(serialize_document(d)) == d.
std::string serialize_document(const SpecDocument& doc);
std::string serialize_spec(const ProblemSpec& spec);
std::string serialize_group(const PGroupDesc& desc);

}  // namespace ulmext::cli
