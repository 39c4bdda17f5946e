#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "aoiduo/des_oracle.hpp"
#include "aoiduo/equilibrium.hpp"
#include "aoiduo/market.hpp"
#include "aoiduo/sweep.hpp"

namespace aoiduo {

/// Parses a scenario document: a JSON object whose optional keys are
/// M, nu, l, p, c, alpha, epsilon, delta. Missing keys keep their defaults
/// (SP1 URLLC, SP2 eMBB). Unknown keys, non-numeric values and values that
/// break the scenario invariants raise ConfigError.
Scenario parse_scenario(std::string_view json_text);

/// Reads a scenario file; an empty or whitespace-only file yields the defaults.
Scenario load_scenario_file(const std::string& path);

// JSON renderings with field names matching the sweep CSV columns. Infinite
// ages are written as null. Numbers round-trip exactly.
std::string outcome_to_json(const MarketOutcome& o, int indent = 2);
std::string equilibrium_to_json(const EquilibriumResult& r, int indent = 2);
std::string records_to_json(const std::vector<SweepRecord>& records, int indent = 2);
std::string sim_report_to_json(const SimConfig& config, const SimReport& report, int indent = 2);

}  // namespace aoiduo
