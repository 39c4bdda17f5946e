#include "aoiduo/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace aoiduo {

using json = nlohmann::ordered_json;

namespace {

json strategy_json(const Strategy& s) { return {{"mu", s.mu}, {"lambda", s.lambda}}; }

json outcome_json(const MarketOutcome& o) {
  return {
      {"gamma_threshold", o.gamma_threshold},
      {"m1", o.m1},
      {"m2", o.m2},
      {"cs1", o.cs1},
      {"cs2", o.cs2},
      {"pi1", o.pi1},
      {"pi2", o.pi2},
      {"social_welfare", o.social_welfare},
      {"delta_p1", o.delta_p1},
      {"delta_p2", o.delta_p2},
      {"covered", o.coverage.covered},
      {"min_utility", o.coverage.min_utility},
  };
}

json record_json(const SweepRecord& r) {
  return {
      {"value", r.value},
      {"mu1", r.mu1},
      {"lambda1", r.lambda1},
      {"mu2", r.mu2},
      {"lambda2", r.lambda2},
      {"rho1", r.rho1},
      {"rho2", r.rho2},
      {"delta_avg1", r.delta_avg1},
      {"delta_avg2", r.delta_avg2},
      {"delta_p1", r.delta_p1},
      {"delta_p2", r.delta_p2},
      {"m1", r.m1},
      {"m2", r.m2},
      {"cs1", r.cs1},
      {"cs2", r.cs2},
      {"cs_total", r.cs_total},
      {"pi1", r.pi1},
      {"pi2", r.pi2},
      {"pi_total", r.pi_total},
      {"social_welfare", r.social_welfare},
      {"converged", r.converged},
      {"covered", r.covered},
      {"multiple_equilibria", r.multiple_equilibria},
  };
}

json estimate_json(const Estimate& e) { return {{"mean", e.mean}, {"std_error", e.std_error}}; }

}  // namespace

Scenario parse_scenario(std::string_view json_text) {
  Scenario s = default_scenario();
  if (json_text.find_first_not_of(" \t\r\n") == std::string_view::npos) return s;

  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("scenario is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("scenario must be a JSON object");

  const auto& known = scalar_parameter_names();
  for (const auto& [key, value] : doc.items()) {
    if (std::find(known.begin(), known.end(), key) == known.end())
      throw ConfigError("unknown scenario key '" + key + "'");
    if (!value.is_number()) throw ConfigError("scenario key '" + key + "' must be a number");
    set_parameter(s, key, value.get<double>());
  }
  try {
    validate(s);
  } catch (const ConfigError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return s;
}

Scenario load_scenario_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open scenario file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

std::string outcome_to_json(const MarketOutcome& o, int indent) {
  return outcome_json(o).dump(indent);
}

std::string equilibrium_to_json(const EquilibriumResult& r, int indent) {
  json doc{
      {"strategy1", strategy_json(r.strategy1)},
      {"strategy2", strategy_json(r.strategy2)},
      {"outcome", outcome_json(r.outcome)},
      {"iterations", r.iterations},
      {"converged", r.converged},
      {"residual", r.residual},
      {"used_fallback", r.used_fallback},
      {"multiple_equilibria", r.multiple_equilibria},
  };
  return doc.dump(indent);
}

std::string records_to_json(const std::vector<SweepRecord>& records, int indent) {
  json doc = json::array();
  for (const auto& r : records) doc.push_back(record_json(r));
  return doc.dump(indent);
}

std::string sim_report_to_json(const SimConfig& config, const SimReport& report, int indent) {
  json tail = json::array();
  for (const auto& t : report.tail) {
    tail.push_back({{"epsilon", t.epsilon}, {"fraction", t.fraction}, {"std_error", t.std_error}});
  }
  json doc{
      {"config",
       {{"lambda", config.lambda},
        {"mu", config.mu},
        {"horizon", config.horizon},
        {"warmup", config.effective_warmup()},
        {"seed", config.seed},
        {"batches", config.batches}}},
      {"empirical_average_aoi", estimate_json(report.average_aoi)},
      {"empirical_mean_peak_aoi", estimate_json(report.mean_peak_aoi)},
      {"empirical_mean_system_time", estimate_json(report.mean_system_time)},
      {"aoi_gap", estimate_json(report.aoi_gap)},
      {"empirical_tail", tail},
      {"measured_updates", report.measured_updates},
      {"measured_time", report.measured_time},
  };
  return doc.dump(indent);
}

}  // namespace aoiduo
