#include "aoiduo/sweep.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <thread>

namespace aoiduo {

namespace {

double ratio_or_zero(double lambda, double mu) { return mu > 0.0 ? lambda / mu : 0.0; }

std::string format_number(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

template <class T>
T* constraint_holding(Scenario& s) {
  if (auto* c = std::get_if<T>(&s.constraint1)) return c;
  return std::get_if<T>(&s.constraint2);
}

template <class T>
const T* constraint_holding(const Scenario& s) {
  if (const auto* c = std::get_if<T>(&s.constraint1)) return c;
  return std::get_if<T>(&s.constraint2);
}

double* field(Scenario& s, const std::string& name) {
  if (name == "M") return &s.M;
  if (name == "nu") return &s.nu;
  if (name == "l") return &s.l;
  if (name == "p") return &s.p;
  if (name == "c") return &s.c;
  if (name == "alpha") {
    if (auto* e = constraint_holding<Embb>(s)) return &e->alpha;
    throw ConfigError("no eMBB-dimensioned SP carries alpha");
  }
  if (name == "epsilon" || name == "delta") {
    auto* u = constraint_holding<Urllc>(s);
    if (!u) throw ConfigError("no URLLC-dimensioned SP carries " + name);
    return name == "epsilon" ? &u->epsilon : &u->delta;
  }
  throw ConfigError("unknown scenario parameter '" + name + "'");
}

}  // namespace

const std::vector<std::string>& scalar_parameter_names() {
  static const std::vector<std::string> names{"M", "nu", "l", "p", "c", "alpha", "epsilon", "delta"};
  return names;
}

void set_parameter(Scenario& s, const std::string& name, double value) { *field(s, name) = value; }

double get_parameter(const Scenario& s, const std::string& name) {
  Scenario copy = s;
  return *field(copy, name);
}

void validate(const SweepSpec& spec) {
  Scenario probe = spec.base;
  get_parameter(probe, spec.parameter);
  if (spec.steps < 2) throw ConfigError("sweep needs at least 2 steps");
  if (!std::isfinite(spec.start) || !std::isfinite(spec.stop) || !(spec.start < spec.stop))
    throw ConfigError("sweep range needs finite start < stop");
  for (double v : {spec.start, spec.stop}) {
    set_parameter(probe, spec.parameter, v);
    try {
      validate(probe);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("sweep endpoint ") + format_number(v) + ": " + e.what());
    }
  }
}

std::vector<double> sweep_values(const SweepSpec& spec) {
  std::vector<double> values(spec.steps);
  const double width = spec.stop - spec.start;
  for (int i = 0; i < spec.steps; ++i) {
    values[i] = i == spec.steps - 1 ? spec.stop : spec.start + width * i / (spec.steps - 1);
  }
  return values;
}

SweepSpec default_epsilon_sweep() { return {default_scenario(), "epsilon", 0.3, 2.0, 50}; }

SweepSpec default_c_sweep() { return {default_scenario(), "c", 0.08, 0.4, 50}; }

SweepRecord make_record(double value, const EquilibriumResult& eq) {
  const auto& o = eq.outcome;
  SweepRecord r;
  r.value = value;
  r.mu1 = eq.strategy1.mu;
  r.lambda1 = eq.strategy1.lambda;
  r.mu2 = eq.strategy2.mu;
  r.lambda2 = eq.strategy2.lambda;
  r.rho1 = ratio_or_zero(r.lambda1, r.mu1);
  r.rho2 = ratio_or_zero(r.lambda2, r.mu2);
  r.delta_avg1 = average_aoi_or_inf(r.lambda1, r.mu1);
  r.delta_avg2 = average_aoi_or_inf(r.lambda2, r.mu2);
  r.delta_p1 = o.delta_p1;
  r.delta_p2 = o.delta_p2;
  r.m1 = o.m1;
  r.m2 = o.m2;
  r.cs1 = o.cs1;
  r.cs2 = o.cs2;
  r.cs_total = o.cs1 + o.cs2;
  r.pi1 = o.pi1;
  r.pi2 = o.pi2;
  r.pi_total = o.pi1 + o.pi2;
  r.social_welfare = r.cs_total + r.pi_total;
  r.converged = eq.converged;
  r.covered = o.coverage.covered;
  r.multiple_equilibria = eq.multiple_equilibria;
  return r;
}

std::vector<SweepRecord> run_sweep(const SweepSpec& spec, unsigned jobs, const SolverOptions& opt) {
  validate(spec);
  const auto values = sweep_values(spec);
  std::vector<SweepRecord> records(values.size());

  auto solve = [&](std::size_t i) {
    Scenario s = spec.base;
    set_parameter(s, spec.parameter, values[i]);
    records[i] = make_record(values[i], find_nash(s, opt));
  };

  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
  jobs = std::min<unsigned>(jobs, static_cast<unsigned>(values.size()));
  if (jobs <= 1) {
    for (std::size_t i = 0; i < values.size(); ++i) solve(i);
    return records;
  }

  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> workers;
  workers.reserve(jobs);
  for (unsigned w = 0; w < jobs; ++w) {
    workers.emplace_back([&] {
      for (std::size_t i = next++; i < values.size(); i = next++) solve(i);
    });
  }
  workers.clear();
  return records;
}

const std::vector<std::string>& record_field_names() {
  static const std::vector<std::string> names{
      "value",    "mu1",      "lambda1",        "mu2",       "lambda2", "rho1",
      "rho2",     "delta_avg1", "delta_avg2",   "delta_p1",  "delta_p2", "m1",
      "m2",       "cs1",      "cs2",            "cs_total",  "pi1",     "pi2",
      "pi_total", "social_welfare", "converged", "covered",  "multiple_equilibria"};
  return names;
}

void write_csv(std::ostream& os, const std::vector<SweepRecord>& records) {
  const auto& names = record_field_names();
  for (std::size_t i = 0; i < names.size(); ++i) os << (i ? "," : "") << names[i];
  os << '\n';
  for (const auto& r : records) {
    const double numbers[] = {r.value,   r.mu1,      r.lambda1,    r.mu2,        r.lambda2,
                              r.rho1,    r.rho2,     r.delta_avg1, r.delta_avg2, r.delta_p1,
                              r.delta_p2, r.m1,      r.m2,         r.cs1,        r.cs2,
                              r.cs_total, r.pi1,     r.pi2,        r.pi_total,   r.social_welfare};
    bool first = true;
    for (double v : numbers) {
      os << (first ? "" : ",") << format_number(v);
      first = false;
    }
    os << ',' << int{r.converged} << ',' << int{r.covered} << ',' << int{r.multiple_equilibria}
       << '\n';
  }
}

}  // namespace aoiduo
