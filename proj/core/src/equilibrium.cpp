#include "aoiduo/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "aoiduo/golden_section.hpp"

namespace aoiduo {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double capacity_upper_bound(const Scenario& s) { return std::sqrt(s.p * s.M / s.c); }

bool moved(double before, double after, double tol) {
  return std::abs(after - before) > tol * std::max(1.0, std::abs(before));
}

const ServiceClassConstraint& constraint_of(const Scenario& s, Role role) {
  return role == Role::Sp1 ? s.constraint1 : s.constraint2;
}

}  // namespace

std::optional<double> optimal_lambda_given_mu(const ServiceClassConstraint& constraint,
                                              double mu) {
  if (!(mu > 0.0)) throw std::domain_error("capacity mu must be > 0");
  const double cap = max_feasible_lambda(constraint, mu);
  if (!(cap > 0.0)) return std::nullopt;
  // Peak age is strictly convex in rho with its minimum at rho = 1/2.
  return std::min(0.5 * mu, cap);
}

Strategy strategy_at(const ServiceClassConstraint& constraint, double mu) {
  if (!(mu > 0.0)) return {};
  return {mu, optimal_lambda_given_mu(constraint, mu).value_or(0.0)};
}

void require_feasible(const ServiceClassConstraint& constraint, const Strategy& s) {
  if (!std::isfinite(s.mu) || !std::isfinite(s.lambda) || s.mu < 0.0 || s.lambda < 0.0)
    throw std::domain_error("strategy rates must be finite and nonnegative");
  if (s.mu == 0.0) {
    if (s.lambda > 0.0) throw std::domain_error("traffic lambda > 0 needs capacity mu > 0");
    return;
  }
  if (s.lambda >= s.mu) throw std::domain_error("unstable queue: lambda >= mu");
  const double cap = max_feasible_lambda(constraint, s.mu);
  if (s.lambda > cap + 1e-12 * s.mu) {
    std::ostringstream os;
    os << "violates " << describe(constraint) << " (lambda=" << s.lambda << ", cap=" << cap
       << ")";
    throw std::domain_error(os.str());
  }
}

double peak_aoi_of(const Strategy& s) { return peak_aoi_or_inf(s.lambda, s.mu); }

double role_profit(const Scenario& s, Role role, const Strategy& own, double rival_delta_p) {
  const double own_dp = peak_aoi_of(own);
  const auto shares = role == Role::Sp1 ? market_shares(s, own_dp, rival_delta_p)
                                        : market_shares(s, rival_delta_p, own_dp);
  return profit(s, role == Role::Sp1 ? shares.m1 : shares.m2, own.mu);
}

Strategy best_response(const Scenario& s, const ServiceClassConstraint& own_constraint,
                       double rival_delta_p, Role role, const SolverOptions& opt) {
  const double ub = capacity_upper_bound(s);
  if (!(ub > 0.0)) return {};

  auto value = [&](double mu) {
    return role_profit(s, role, strategy_at(own_constraint, mu), rival_delta_p);
  };

  const int n = std::max(opt.grid_points, 3);
  const double step = ub / (n - 1);
  std::vector<double> grid(n), vals(n);
  for (int j = 0; j < n; ++j) {
    grid[j] = j == n - 1 ? ub : step * j;
    vals[j] = value(grid[j]);
  }

  // Local maxima of the coarse grid; a plateau is represented by its first point.
  std::vector<int> peaks;
  for (int j = 0; j < n; ++j) {
    const bool left_ok = j == 0 || vals[j] > vals[j - 1];
    const bool right_ok = j == n - 1 || vals[j] >= vals[j + 1];
    if (left_ok && right_ok) peaks.push_back(j);
  }
  std::stable_sort(peaks.begin(), peaks.end(), [&](int a, int b) { return vals[a] > vals[b]; });
  if (static_cast<int>(peaks.size()) > opt.refined_peaks) peaks.resize(opt.refined_peaks);

  std::vector<Maximum> candidates{{0.0, vals[0]}};
  for (int j : peaks) {
    const double lo = grid[std::max(j - 1, 0)];
    const double hi = grid[std::min(j + 1, n - 1)];
    candidates.push_back(golden_section_maximize(value, lo, hi));
  }

  double best = -kInf;
  for (const auto& c : candidates) best = std::max(best, c.value);
  std::sort(candidates.begin(), candidates.end(),
            [](const Maximum& a, const Maximum& b) { return a.x < b.x; });
  const double tol = opt.tol_profit(s);
  for (const auto& c : candidates) {
    if (c.value >= best - tol) return strategy_at(own_constraint, c.x);
  }
  return strategy_at(own_constraint, candidates.front().x);
}

double deviation_gain(const Scenario& s, Role role, const Strategy& own, const Strategy& rival,
                      const SolverOptions& opt) {
  const double rival_dp = peak_aoi_of(rival);
  const auto br = best_response(s, constraint_of(s, role), rival_dp, role, opt);
  return std::max(0.0, role_profit(s, role, br, rival_dp) - role_profit(s, role, own, rival_dp));
}

MarketOutcome evaluate(const Scenario& s, const Strategy& s1, const Strategy& s2) {
  return market_outcome(s, peak_aoi_of(s1), peak_aoi_of(s2), s1.mu, s2.mu);
}

std::vector<std::pair<Strategy, Strategy>> fixed_point_search(const Scenario& s,
                                                              const SolverOptions& opt) {
  std::vector<std::pair<Strategy, Strategy>> found;
  const double ub = capacity_upper_bound(s);
  const double tol = opt.tol_profit(s);

  auto respond = [&](double mu1) {
    const auto s1 = strategy_at(s.constraint1, mu1);
    const auto s2 = best_response(s, s.constraint2, peak_aoi_of(s1), Role::Sp2, opt);
    const auto s1_next = best_response(s, s.constraint1, peak_aoi_of(s2), Role::Sp1, opt);
    return std::pair{s1_next, s2};
  };
  auto accept = [&](double mu1) {
    const auto [s1, s2] = respond(mu1);
    const double gain = std::max(deviation_gain(s, Role::Sp1, s1, s2, opt),
                                 deviation_gain(s, Role::Sp2, s2, s1, opt));
    if (gain > tol) return;
    for (const auto& [f1, f2] : found) {
      if (!moved(f1.mu, s1.mu, 1e3 * opt.tol_strategy) &&
          !moved(f2.mu, s2.mu, 1e3 * opt.tol_strategy))
        return;
    }
    found.emplace_back(s1, s2);
  };

  if (!(ub > 0.0)) {
    accept(0.0);
    return found;
  }

  const int n = std::max(opt.fallback_grid_points, 2);
  std::vector<double> grid(n), gap(n);
  for (int j = 0; j < n; ++j) {
    grid[j] = ub * j / (n - 1);
    gap[j] = respond(grid[j]).first.mu - grid[j];
  }
  const double spacing = ub / (n - 1);
  for (int j = 0; j < n; ++j) {
    if (std::abs(gap[j]) <= spacing) accept(grid[j] + gap[j]);
    if (j + 1 < n && gap[j] * gap[j + 1] < 0.0) {
      double a = grid[j], b = grid[j + 1], ga = gap[j];
      for (int k = 0; k < 60 && (b - a) > opt.tol_strategy * std::max(1.0, b); ++k) {
        const double m = 0.5 * (a + b);
        const double gm = respond(m).first.mu - m;
        if (gm * ga > 0.0) {
          a = m;
          ga = gm;
        } else {
          b = m;
        }
      }
      accept(0.5 * (a + b));
    }
  }
  return found;
}

EquilibriumResult find_nash(const Scenario& s, const SolverOptions& opt) {
  validate(s);
  EquilibriumResult res;
  const double mu0 = s.p * s.M * s.l / (16.0 * s.c);
  Strategy s1 = strategy_at(s.constraint1, mu0);
  Strategy s2 = strategy_at(s.constraint2, mu0);
  const double tol = opt.tol_profit(s);

  for (int it = 1; it <= opt.max_iter; ++it) {
    res.iterations = it;
    const auto n1 = best_response(s, s.constraint1, peak_aoi_of(s2), Role::Sp1, opt);
    const auto n2 = best_response(s, s.constraint2, peak_aoi_of(n1), Role::Sp2, opt);
    const bool still_moving =
        moved(s1.mu, n1.mu, opt.tol_strategy) || moved(s2.mu, n2.mu, opt.tol_strategy);
    s1 = n1;
    s2 = n2;
    if (still_moving) continue;
    res.residual = std::max(deviation_gain(s, Role::Sp1, s1, s2, opt),
                            deviation_gain(s, Role::Sp2, s2, s1, opt));
    if (res.residual <= tol) {
      res.converged = true;
      break;
    }
  }

  if (!res.converged) {
    res.used_fallback = true;
    const auto points = fixed_point_search(s, opt);
    if (!points.empty()) {
      res.multiple_equilibria = points.size() > 1;
      auto best = std::max_element(points.begin(), points.end(), [&](const auto& a, const auto& b) {
        return evaluate(s, a.first, a.second).social_welfare <
               evaluate(s, b.first, b.second).social_welfare;
      });
      s1 = best->first;
      s2 = best->second;
      res.converged = true;
    }
    res.residual = std::max(deviation_gain(s, Role::Sp1, s1, s2, opt),
                            deviation_gain(s, Role::Sp2, s2, s1, opt));
  }

  res.strategy1 = s1;
  res.strategy2 = s2;
  res.outcome = evaluate(s, s1, s2);
  return res;
}

}  // namespace aoiduo
