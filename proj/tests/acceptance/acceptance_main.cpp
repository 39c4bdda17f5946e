// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "aoiduo/aoi_queueing.hpp"
#include "aoiduo/des_oracle.hpp"
#include "aoiduo/equilibrium.hpp"
#include "aoiduo/market.hpp"
#include "aoiduo/sweep.hpp"
#include "support/oracles.hpp"
#include "support/run_cli.hpp"

namespace {

using namespace aoiduo;

constexpr double kInf = std::numeric_limits<double>::infinity();

// Tolerances, fixed here once.
constexpr double kSimRelTol = 0.02;          // criterion 1
constexpr double kSimSecondsPerPoint = 30.0;  // criterion 1
constexpr double kTailSigmas = 3.0;           // criterion 2
constexpr double kQuadTol = 1e-9;             // criterion 3
constexpr int kQuadScenarios = 1000;          // criterion 3
constexpr double kSymRelTol = 1e-3;           // criterion 4
constexpr int kSymProbePoints = 2000;         // criterion 4
constexpr double kConvergeTol = 1e-3;         // criterion 6
constexpr double kStrategyTol = 1e-5;         // relative slack on mu for monotonicity (solver tol)
constexpr double kProfitTolRel = 1e-6;        // times p*M, criteria 7 and 8
constexpr int kAuditPoints = 1000;            // criterion 8

struct Check {
  bool ok = true;
  std::ostringstream detail;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      if (ok) detail << what;
      ok = false;
    }
  }
};

struct Equilibrium {
  std::string label;
  Scenario scenario;
  Strategy s1, s2;
};

std::vector<Equilibrium> audited;

double rel_err(double got, double want) { return std::abs(got - want) / std::abs(want); }

bool no_grid_deviation(const Equilibrium& e, int points, double tol, double* worst_gain) {
  const double dp1 = oracle::peak_age(e.s1.lambda, e.s1.mu);
  const double dp2 = oracle::peak_age(e.s2.lambda, e.s2.mu);
  const double pi1 = oracle::profit_of(e.scenario, true, e.s1.mu, e.s1.lambda, dp2);
  const double pi2 = oracle::profit_of(e.scenario, false, e.s2.mu, e.s2.lambda, dp1);
  const double g1 = oracle::grid_best_response(e.scenario, true, dp2, points).profit - pi1;
  const double g2 = oracle::grid_best_response(e.scenario, false, dp1, points).profit - pi2;
  *worst_gain = std::max(g1, g2);
  return g1 <= tol && g2 <= tol;
}

// 1. Closed-form ages vs simulation.  2. Delay tail vs exp(-eps (mu - lambda)).
std::vector<std::pair<QueueOperatingPoint, SimReport>> sim_runs;

Check closed_form_vs_simulation() {
  Check c;
  std::uint64_t seed = 2024;
  for (QueueOperatingPoint q : {QueueOperatingPoint{0.5, 1.0}, {0.3, 1.0}, {0.8, 1.0}}) {
    SimConfig cfg;
    cfg.lambda = q.lambda;
    cfg.mu = q.mu;
    cfg.horizon = 1'000'000;
    cfg.seed = seed++;
    const double scale = 1.0 / (q.mu - q.lambda);
    const auto t0 = std::chrono::steady_clock::now();
    const auto rep = simulate(cfg, {0.5 * scale, scale, 2.0 * scale});
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const double avg_err = rel_err(rep.average_aoi.mean, average_aoi(q));
    const double peak_err = rel_err(rep.mean_peak_aoi.mean, peak_aoi(q));
    c.detail << "rho=" << q.utilization() << " avg_err=" << avg_err << " peak_err=" << peak_err
             << " t=" << secs << "s; ";
    c.require(avg_err <= kSimRelTol && peak_err <= kSimRelTol && secs <= kSimSecondsPerPoint,
              " <- out of tolerance");
    sim_runs.emplace_back(q, rep);
  }
  return c;
}

Check delay_tail() {
  Check c;
  for (const auto& [q, rep] : sim_runs) {
    for (const auto& t : rep.tail) {
      const double exact = delay_tail_probability(q, t.epsilon);
      const double z = std::abs(t.fraction - exact) / t.std_error;
      c.detail << "rho=" << q.utilization() << ",eps=" << t.epsilon << ":z=" << z << " ";
      c.require(z <= kTailSigmas, " <- beyond 3 standard errors");
    }
  }
  return c;
}

// 3. Closed-form consumer surplus vs adaptive quadrature.
Check surplus_quadrature() {
  Check c;
  std::mt19937_64 rng(31337);
  std::uniform_real_distribution<double> dp_d(0.05, 20.0), l_d(0.05, 4.0), nu_d(-1.0, 5.0),
      p_d(0.0, 3.0);
  int cases[3] = {0, 0, 0};
  double worst = 0.0;
  for (int i = 0; i < kQuadScenarios; ++i) {
    Scenario s = default_scenario();
    s.l = l_d(rng);
    s.nu = nu_d(rng);
    s.p = p_d(rng);
    const double dp1 = i % 17 == 0 ? kInf : dp_d(rng);
    const double dp2 = i % 19 == 0 ? kInf : dp_d(rng);
    const double g = gamma_threshold(dp1, dp2, s.l);
    ++cases[g < 0.0 ? 0 : (g > 1.0 ? 2 : 1)];
    const auto cs = consumer_surplus(s, dp1, dp2);
    const auto [q1, q2] = oracle::quadrature_surplus(s, dp1, dp2);
    worst = std::max({worst, std::abs(cs.cs1 - q1), std::abs(cs.cs2 - q2)});
  }
  c.detail << "max |closed - quadrature| = " << worst << "; cases (G<0, 0<=G<=1, G>1) = ("
           << cases[0] << ", " << cases[1] << ", " << cases[2] << ")";
  c.require(worst <= kQuadTol, " <- above 1e-9");
  c.require(cases[0] > 0 && cases[1] > 0 && cases[2] > 0, " <- a threshold case is missing");
  return c;
}

// 4. Symmetric analytic equilibrium at epsilon = 2.
Check symmetric_equilibrium() {
  Check c;
  Scenario s = default_scenario();
  set_parameter(s, "epsilon", 2.0);
  const auto r = find_nash(s);
  const double mu_star = s.p * s.M * s.l / (16.0 * s.c);
  const double lambda_star = mu_star / 2.0;
  const double dp_star = 4.0 / mu_star;
  const double m_star = s.M / 2.0;
  const double pi_star = m_star * s.p - s.c * mu_star * mu_star;
  // The interior point must also satisfy the URLLC bound for the FOC to apply.
  c.require(lambda_star + std::log(10.0) / 2.0 <= mu_star, "URLLC not slack at the FOC point; ");

  const std::pair<double, double> pairs[] = {
      {r.strategy1.mu, mu_star},         {r.strategy2.mu, mu_star},
      {r.strategy1.lambda, lambda_star}, {r.strategy2.lambda, lambda_star},
      {r.outcome.delta_p1, dp_star},     {r.outcome.delta_p2, dp_star},
      {r.outcome.m1, m_star},            {r.outcome.m2, m_star},
      {r.outcome.pi1, pi_star},          {r.outcome.pi2, pi_star},
  };
  double worst = 0.0;
  for (auto [got, want] : pairs) worst = std::max(worst, rel_err(got, want));
  Equilibrium e{"eps=2", s, r.strategy1, r.strategy2};
  double gain = 0.0;
  const bool probe_ok = no_grid_deviation(e, kSymProbePoints, kProfitTolRel * s.p * s.M, &gain);
  audited.push_back(e);
  c.detail << "mu*=" << mu_star << " pi*=" << pi_star << " got mu=(" << r.strategy1.mu << ", "
           << r.strategy2.mu << ") max rel err=" << worst
           << " covered=" << r.outcome.coverage.covered << " 2000-pt probe gain=" << gain;
  c.require(r.converged, " <- not converged");
  c.require(worst <= kSymRelTol, " <- off the analytic point");
  c.require(r.outcome.coverage.covered, " <- coverage fails");
  c.require(probe_ok, " <- profitable deviation");
  return c;
}

// 5. Qualitative findings at the defaults.
Check default_findings() {
  Check c;
  const Scenario s = default_scenario();
  const auto r = find_nash(s);
  audited.push_back({"defaults", s, r.strategy1, r.strategy2});
  const double rho1 = r.strategy1.lambda / r.strategy1.mu;
  const double rho2 = r.strategy2.lambda / r.strategy2.mu;
  c.detail << "rho=(" << rho1 << ", " << rho2 << ") dp=(" << r.outcome.delta_p1 << ", "
           << r.outcome.delta_p2 << ") m=(" << r.outcome.m1 << ", " << r.outcome.m2 << ") cs=("
           << r.outcome.cs1 << ", " << r.outcome.cs2 << ")";
  c.require(r.converged, " <- not converged");
  c.require(rho1 < rho2, " <- rho1 >= rho2");
  c.require(r.outcome.delta_p1 < r.outcome.delta_p2, " <- dp1 >= dp2");
  c.require(r.outcome.m1 > r.outcome.m2, " <- m1 <= m2");
  c.require(r.outcome.cs1 > r.outcome.cs2, " <- cs1 <= cs2");
  return c;
}

bool nonincreasing(const std::vector<double>& v, double rel_slack) {
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (v[i] > v[i - 1] + rel_slack * std::max(1.0, std::abs(v[i - 1]))) return false;
  }
  return true;
}

bool nondecreasing(const std::vector<double>& v, double rel_slack) {
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (v[i] < v[i - 1] - rel_slack * std::max(1.0, std::abs(v[i - 1]))) return false;
  }
  return true;
}

// 6. Epsilon sweep: URLLC and eMBB become equivalent once URLLC is slack.
Check epsilon_sweep() {
  Check c;
  const auto spec = default_epsilon_sweep();
  const auto recs = run_sweep(spec);
  const Scenario& base = spec.base;
  const double mu0 = base.p * base.M * base.l / (16.0 * base.c);
  const double slack_from = 2.0 * std::log(1.0 / get_parameter(base, "delta")) / mu0;

  int slack_points = 0;
  double worst_gap = 0.0, worst_conservation = 0.0;
  std::vector<double> mu1_active, mu2;
  bool entered = false, all_converged = true;
  for (const auto& r : recs) {
    Scenario s = base;
    set_parameter(s, "epsilon", r.value);
    audited.push_back({"eps=" + std::to_string(r.value), s, {r.mu1, r.lambda1}, {r.mu2, r.lambda2}});
    all_converged = all_converged && r.converged;
    worst_conservation = std::max(worst_conservation, std::abs(r.m1 + r.m2 - base.M));
    if (r.value >= slack_from) {
      ++slack_points;
      worst_gap = std::max({worst_gap, std::abs(r.mu1 - r.mu2), std::abs(r.delta_p1 - r.delta_p2)});
    }
    entered = entered || r.mu1 > 0.0;
    if (entered) mu1_active.push_back(r.mu1);
    mu2.push_back(r.mu2);
  }
  const bool mu1_trend = nonincreasing(mu1_active, kStrategyTol);
  const bool mu2_trend = nonincreasing(mu2, kStrategyTol) || nondecreasing(mu2, kStrategyTol);
  c.detail << recs.size() << " points, slack from eps=" << slack_from << " (" << slack_points
           << " points), max |mu1-mu2|,|dp1-dp2| there=" << worst_gap
           << ", mu1 nonincreasing after entry=" << mu1_trend << ", mu2 monotone=" << mu2_trend
           << ", max |m1+m2-M|=" << worst_conservation;
  c.require(recs.size() == 50, " <- wrong point count");
  c.require(all_converged, " <- non-converged point");
  c.require(slack_points > 0 && worst_gap < kConvergeTol, " <- SPs not equivalent when slack");
  c.require(!mu1_active.empty() && mu1_trend && mu2_trend, " <- trend violated");
  c.require(worst_conservation <= 1e-9, " <- shares do not sum to M");
  return c;
}

// 7. c sweep: both capacities and total consumer surplus fall with cost.
Check cost_sweep() {
  Check c;
  const auto spec = default_c_sweep();
  const auto recs = run_sweep(spec);
  std::vector<double> mu1, mu2, cs;
  bool all_converged = true;
  for (const auto& r : recs) {
    Scenario s = spec.base;
    set_parameter(s, "c", r.value);
    audited.push_back({"c=" + std::to_string(r.value), s, {r.mu1, r.lambda1}, {r.mu2, r.lambda2}});
    mu1.push_back(r.mu1);
    mu2.push_back(r.mu2);
    cs.push_back(r.cs_total);
    all_converged = all_converged && r.converged;
  }
  const double money_tol = kProfitTolRel * spec.base.p * spec.base.M;
  bool cs_ok = true;
  for (std::size_t i = 1; i < cs.size(); ++i) cs_ok = cs_ok && cs[i] <= cs[i - 1] + money_tol;
  const bool mu1_ok = nonincreasing(mu1, kStrategyTol);
  const bool mu2_ok = nonincreasing(mu2, kStrategyTol);
  c.detail << recs.size() << " points, mu1 " << mu1.front() << "->" << mu1.back() << ", mu2 "
           << mu2.front() << "->" << mu2.back() << ", cs_total " << cs.front() << "->"
           << cs.back() << "; nonincreasing mu1=" << mu1_ok << " mu2=" << mu2_ok
           << " cs_total=" << cs_ok;
  c.require(all_converged, " <- non-converged point");
  c.require(mu1_ok && mu2_ok && cs_ok, " <- monotonicity violated");
  return c;
}

// 8. No 1000-point grid deviation improves either profit at any reported equilibrium.
Check deviation_audit() {
  Check c;
  double worst = -kInf;
  std::string worst_label;
  int failures = 0;
  for (const auto& e : audited) {
    double gain = 0.0;
    if (!no_grid_deviation(e, kAuditPoints, kProfitTolRel * e.scenario.p * e.scenario.M, &gain))
      ++failures;
    if (gain > worst) {
      worst = gain;
      worst_label = e.label;
    }
  }
  c.detail << audited.size() << " equilibria audited, largest grid gain " << worst << " at "
           << worst_label;
  c.require(!audited.empty() && failures == 0, " <- profitable deviation found");
  return c;
}

// 9. Bit-identical CLI outputs on repeated runs.
Check determinism() {
  Check c;
  const auto dir = cli::scratch_dir("acceptance");
  const auto a = cli::run("nash");
  const auto b = cli::run("nash");
  const auto n1 = cli::run("nash --set epsilon=0.5 --set c=0.2");
  const auto n2 = cli::run("nash --set epsilon=0.5 --set c=0.2");
  const auto f1 = dir / "eps1.csv", f2 = dir / "eps2.csv", j1 = dir / "c1.json", j2 = dir / "c2.json";
  const auto s1 = cli::run("sweep --param epsilon --jobs 4 --out " + f1.string());
  const auto s2 = cli::run("sweep --param epsilon --jobs 1 --out " + f2.string());
  const auto s3 = cli::run("sweep --param c --format json --out " + j1.string());
  const auto s4 = cli::run("sweep --param c --format json --out " + j2.string());
  const bool codes = a.exit_code == 0 && b.exit_code == 0 && n1.exit_code == 0 &&
                     s1.exit_code == 0 && s2.exit_code == 0 && s3.exit_code == 0 &&
                     s4.exit_code == 0;
  const bool nash_same = !a.out.empty() && a.out == b.out && n1.out == n2.out;
  const auto csv1 = cli::read_file(f1), csv2 = cli::read_file(f2);
  const auto js1 = cli::read_file(j1), js2 = cli::read_file(j2);
  const bool sweep_same = !csv1.empty() && csv1 == csv2 && !js1.empty() && js1 == js2;
  c.detail << "nash identical=" << nash_same << ", sweep csv identical=" << (csv1 == csv2)
           << " (" << csv1.size() << " bytes), sweep json identical=" << (js1 == js2);
  c.require(codes, " <- nonzero exit");
  c.require(nash_same && sweep_same, " <- outputs differ");
  return c;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Check()> run;
  };
  const Criterion criteria[] = {
      {"AC1 closed-form AoI vs simulation", closed_form_vs_simulation},
      {"AC2 delay tail vs simulation", delay_tail},
      {"AC3 consumer surplus vs quadrature", surplus_quadrature},
      {"AC4 symmetric analytic equilibrium", symmetric_equilibrium},
      {"AC5 qualitative findings at defaults", default_findings},
      {"AC6 epsilon sweep convergence", epsilon_sweep},
      {"AC7 cost sweep monotonicity", cost_sweep},
      {"AC8 best-response optimality audit", deviation_audit},
      {"AC9 CLI determinism", determinism},
  };
  int failed = 0;
  for (const auto& cr : criteria) {
    Check c;
    try {
      c = cr.run();
    } catch (const std::exception& e) {
      c.ok = false;
      c.detail << "exception: " << e.what();
    }
    std::printf("[%s] %s: %s\n", c.ok ? "PASS" : "FAIL", cr.name, c.detail.str().c_str());
    failed += !c.ok;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(std::size(criteria)) - failed,
              std::size(criteria));
  return failed == 0 ? 0 : 1;
}
