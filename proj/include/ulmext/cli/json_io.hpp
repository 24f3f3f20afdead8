#pragma once

#include <string>
#include <string_view>

#include "json.hpp"
#include "ulmext/cli/dsl.hpp"
#include "ulmext/oracle/suites.hpp"

namespace ulmext::cli {

using Json = nlohmann::ordered_json;

constexpr int kSchemaVersion = 1;

// Groups may be given either as an object or as a DSL expression string.
Json group_to_json(const PGroupDesc& desc);
PGroupDesc group_from_json(const Json& j, Prime p, const std::string& path);

Json document_to_json(const SpecDocument& doc);
SpecDocument document_from_json(const Json& j);
// Parse errors are reported with the line and column of the JSON text.
SpecDocument document_from_json_text(std::string_view text);

Json class_to_json(const ComplexityClass& c);
Json result_to_json(const ClassificationResult& r, const std::string& command);
Json suite_report_to_json(const oracle::SuiteReport& r, double seconds, bool with_timing);

}  // namespace ulmext::cli
