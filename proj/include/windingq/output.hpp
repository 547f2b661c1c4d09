#pragma once

#include "windingq/report.hpp"

#include <json.hpp>

namespace windingq {

using Json = nlohmann::ordered_json;

// "p/q" in lowest terms, or "p" when q = 1.
std::string rat_string(const Rat& r);

Json to_json(const AnalysisReport& rep);
std::string to_csv(const AnalysisReport& rep);
// Human-readable summary for standard output.
std::string to_table(const AnalysisReport& rep);

} // namespace windingq
