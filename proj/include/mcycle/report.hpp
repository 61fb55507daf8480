#pragma once

#include <cstdint>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "mcycle/families.hpp"
#include "mcycle/montecarlo.hpp"

namespace mcycle {

// Canonical record of a config (sorted keys, rationals as "p/q").
nlohmann::json config_json(const ExperimentConfig& c);
nlohmann::json line_json(const LineParams& p);
// FNV-1a 64 of config_json(c).dump(), as 16 hex digits.
std::string config_hash(const ExperimentConfig& c);

inline const std::vector<std::string> kCsvColumns = {"config_hash", "line", "n",           "k",           "M",     "s",     "delta",
                                                    "family",      "accepted_count", "trial_count", "estimate", "ci_lo", "ci_hi", "bound_value",
                                                    "bound_asserted"};

using CsvRow = std::vector<std::string>;

std::vector<CsvRow> csv_rows(const SummaryStats& st);
void write_csv_header(std::ostream& os);
void write_csv(std::ostream& os, const std::vector<CsvRow>& rows, bool header = true);
void write_csv(std::ostream& os, const SummaryStats& st, bool header = true);
// Skips leading '#' lines, then header plus rows; throws Parse on a header or
// arity mismatch.
std::vector<CsvRow> read_csv(std::istream& is);

nlohmann::json stats_json(const SummaryStats& st);
nlohmann::json exact_json(const ExactConditional& e);

}  // namespace mcycle
