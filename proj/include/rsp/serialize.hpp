#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "rsp/analysis.hpp"

namespace rsp {

// JSON field names follow the struct members one-to-one.
nlohmann::json to_json(const StateVector &state);
nlohmann::json to_json(const TrialRecord &record);
nlohmann::json to_json(const ExactAnalysis &analysis);
nlohmann::json to_json(const MonteCarloStats &stats);
nlohmann::json to_json(const std::vector<ComparisonRow> &rows);

/// Inverse of to_json(StateVector); validates like the constructor.
StateVector state_from_json(const nlohmann::json &j);

// CSV: comma separated, LF line endings, header row first.
std::string to_csv(const TrialRecord &record);
std::string to_csv(const ExactAnalysis &analysis);
std::string to_csv(const MonteCarloStats &stats);
std::string to_csv(const std::vector<ComparisonRow> &rows);

/// Shortest round-trip decimal form, shared by CSV and text output.
std::string format_real(double value);

std::string_view to_string(RowSource source) noexcept;

} // namespace rsp
