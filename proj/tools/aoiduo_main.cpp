// aoiduo: equilibria of the URLLC-vs-eMBB peak-AoI duopoly.
//
//   aoiduo eval     --mu1 .. --lambda1 .. --mu2 .. --lambda2 ..
//   aoiduo nash
//   aoiduo sweep    --param epsilon --start 0.3 --stop 2.0 --steps 50 --out eps.csv
//   aoiduo simulate --lambda 0.5 --mu 1 --tail-eps 1,2,4
//
// Every model subcommand takes --scenario FILE (JSON) and repeated
// --set key=value overrides. Exit codes: 0 output produced, 2 validation
// error, 1 internal error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "aoiduo/des_oracle.hpp"
#include "aoiduo/equilibrium.hpp"
#include "aoiduo/io.hpp"
#include "aoiduo/sweep.hpp"

namespace {

using namespace aoiduo;

constexpr int kExitValidation = 2;
constexpr int kExitInternal = 1;

struct ScenarioArgs {
  std::string file;
  std::vector<std::string> overrides;

  void attach(CLI::App* cmd) {
    cmd->add_option("--scenario", file, "Scenario JSON file (keys M, nu, l, p, c, alpha, epsilon, delta)")
        ->check(CLI::ExistingFile);
    cmd->add_option("--set", overrides, "Override one scenario field, e.g. --set epsilon=2.0");
  }

  Scenario resolve() const {
    Scenario s = file.empty() ? default_scenario() : load_scenario_file(file);
    for (const auto& kv : overrides) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos) throw ConfigError("--set expects key=value, got '" + kv + "'");
      const std::string key = kv.substr(0, eq);
      double value = 0.0;
      try {
        std::size_t used = 0;
        value = std::stod(kv.substr(eq + 1), &used);
        if (used != kv.size() - eq - 1) throw std::invalid_argument(kv);
      } catch (const std::exception&) {
        throw ConfigError("--set value for '" + key + "' is not a number");
      }
      set_parameter(s, key, value);
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
};

// Writes to `path`, or stdout for "" / "-".
void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      values.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw ConfigError("not a number in list: '" + item + "'");
    }
  }
  return values;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Nash equilibria of a peak-AoI duopoly between a URLLC and an eMBB provider"};
  app.require_subcommand(1);

  // eval
  ScenarioArgs eval_scn;
  Strategy eval_s1, eval_s2;
  auto* eval = app.add_subcommand("eval", "Market outcome for a given pair of strategies");
  eval_scn.attach(eval);
  eval->add_option("--mu1", eval_s1.mu, "SP1 (URLLC) capacity")->required();
  eval->add_option("--lambda1", eval_s1.lambda, "SP1 update rate")->required();
  eval->add_option("--mu2", eval_s2.mu, "SP2 (eMBB) capacity")->required();
  eval->add_option("--lambda2", eval_s2.lambda, "SP2 update rate")->required();

  // nash
  ScenarioArgs nash_scn;
  std::string nash_out;
  auto* nash = app.add_subcommand("nash", "Solve for the Nash equilibrium");
  nash_scn.attach(nash);
  nash->add_option("--out", nash_out, "Output file (default stdout)");

  // sweep
  ScenarioArgs sweep_scn;
  std::string sweep_param = "epsilon", sweep_out, sweep_format = "csv";
  std::optional<double> sweep_start, sweep_stop;
  int sweep_steps = 50;
  unsigned sweep_jobs = 0;
  auto* sweep = app.add_subcommand("sweep", "Comparative statics over one scenario parameter");
  sweep_scn.attach(sweep);
  sweep->add_option("--param", sweep_param, "Swept field (epsilon, c, M, nu, l, p, alpha, delta)");
  sweep->add_option("--start", sweep_start, "Range start (preset for epsilon and c)");
  sweep->add_option("--stop", sweep_stop, "Range stop (preset for epsilon and c)");
  sweep->add_option("--steps", sweep_steps, "Grid points including both endpoints");
  sweep->add_option("--out", sweep_out, "Output file (default stdout)");
  sweep->add_option("--format", sweep_format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  sweep->add_option("--jobs", sweep_jobs, "Worker threads (0 = all cores)");

  // simulate
  SimConfig sim;
  std::optional<std::uint64_t> sim_warmup;
  std::string sim_tail, sim_out;
  auto* simulate_cmd = app.add_subcommand("simulate", "Discrete-event M/M/1-FCFS AoI simulation");
  simulate_cmd->add_option("--lambda", sim.lambda, "Arrival rate")->required();
  simulate_cmd->add_option("--mu", sim.mu, "Service rate")->required();
  simulate_cmd->add_option("--horizon", sim.horizon, "Delivered updates to simulate");
  simulate_cmd->add_option("--warmup", sim_warmup, "Updates discarded first (default 1% of horizon)");
  simulate_cmd->add_option("--seed", sim.seed, "RNG seed");
  simulate_cmd->add_option("--batches", sim.batches, "Batch count for standard errors");
  simulate_cmd->add_option("--tail-eps", sim_tail, "Comma-separated delay bounds for tail estimates");
  simulate_cmd->add_option("--out", sim_out, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitValidation;
  }

  try {
    if (*eval) {
      const Scenario s = eval_scn.resolve();
      try {
        require_feasible(s.constraint1, eval_s1);
      } catch (const std::domain_error& e) {
        throw ConfigError(std::string("SP1 strategy ") + e.what());
      }
      try {
        require_feasible(s.constraint2, eval_s2);
      } catch (const std::domain_error& e) {
        throw ConfigError(std::string("SP2 strategy ") + e.what());
      }
      std::cout << outcome_to_json(evaluate(s, eval_s1, eval_s2)) << '\n';
    } else if (*nash) {
      const Scenario s = nash_scn.resolve();
      emit(nash_out, equilibrium_to_json(find_nash(s)) + "\n");
    } else if (*sweep) {
      SweepSpec spec;
      spec.base = sweep_scn.resolve();
      spec.parameter = sweep_param;
      spec.steps = sweep_steps;
      if (sweep_param == "epsilon") {
        spec.start = default_epsilon_sweep().start;
        spec.stop = default_epsilon_sweep().stop;
      } else if (sweep_param == "c") {
        spec.start = default_c_sweep().start;
        spec.stop = default_c_sweep().stop;
      } else if (!sweep_start || !sweep_stop) {
        throw ConfigError("--start and --stop are required for parameter '" + sweep_param + "'");
      }
      if (sweep_start) spec.start = *sweep_start;
      if (sweep_stop) spec.stop = *sweep_stop;
      const auto records = run_sweep(spec, sweep_jobs);
      if (sweep_format == "json") {
        emit(sweep_out, records_to_json(records) + "\n");
      } else {
        std::ostringstream os;
        write_csv(os, records);
        emit(sweep_out, os.str());
      }
    } else if (*simulate_cmd) {
      sim.warmup = sim_warmup;
      const auto report = simulate(sim, parse_list(sim_tail));
      emit(sim_out, sim_report_to_json(sim, report) + "\n");
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return EXIT_SUCCESS;
}
