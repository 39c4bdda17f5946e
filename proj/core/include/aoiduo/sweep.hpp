#pragma once

#include <cstddef>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "aoiduo/equilibrium.hpp"
#include "aoiduo/market.hpp"

namespace aoiduo {

/// Bad sweep or scenario configuration, detected before any evaluation.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct SweepSpec {
  Scenario base;
  std::string parameter = "epsilon";
  double start = 0.3;
  double stop = 2.0;
  int steps = 50;
};

struct SweepRecord {
  double value = 0.0;
  double mu1 = 0.0, lambda1 = 0.0, mu2 = 0.0, lambda2 = 0.0;
  double rho1 = 0.0, rho2 = 0.0;
  double delta_avg1 = 0.0, delta_avg2 = 0.0;
  double delta_p1 = 0.0, delta_p2 = 0.0;
  double m1 = 0.0, m2 = 0.0;
  double cs1 = 0.0, cs2 = 0.0, cs_total = 0.0;
  double pi1 = 0.0, pi2 = 0.0, pi_total = 0.0;
  double social_welfare = 0.0;
  bool converged = false;
  bool covered = false;
  bool multiple_equilibria = false;
};

/// Scalar fields accepted by set_parameter, in scenario-file order:
/// M, nu, l, p, c, alpha, epsilon, delta.
const std::vector<std::string>& scalar_parameter_names();

/// Sets one scalar field. alpha addresses whichever SP is eMBB-dimensioned,
/// epsilon/delta whichever is URLLC-dimensioned. Throws ConfigError for an
/// unknown name or one no constraint carries.
void set_parameter(Scenario& s, const std::string& name, double value);
double get_parameter(const Scenario& s, const std::string& name);

/// Throws ConfigError.
void validate(const SweepSpec& spec);

/// Evenly spaced grid with both endpoints.
std::vector<double> sweep_values(const SweepSpec& spec);

SweepSpec default_epsilon_sweep();
SweepSpec default_c_sweep();

SweepRecord make_record(double value, const EquilibriumResult& eq);

/// One record per grid point, in parameter order. Points are solved on up to
/// `jobs` worker threads (0 = hardware concurrency); the output does not
/// depend on the worker count.
std::vector<SweepRecord> run_sweep(const SweepSpec& spec, unsigned jobs = 0,
                                   const SolverOptions& opt = {});

/// Column names, identical to the JSON keys: value, mu1, lambda1, ...
const std::vector<std::string>& record_field_names();

/// Header plus one row per record, 9 significant digits, LF line endings.
/// Flags are written as 0/1, infinite ages as "inf".
void write_csv(std::ostream& os, const std::vector<SweepRecord>& records);

}  // namespace aoiduo
