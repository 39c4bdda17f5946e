#pragma once

#include <optional>
#include <vector>

#include "aoiduo/aoi_queueing.hpp"
#include "aoiduo/market.hpp"

namespace aoiduo {

/// Capacity investment and procured update rate of one SP. mu == 0 means no
/// network and an infinite peak age.
struct Strategy {
  double mu = 0.0;
  double lambda = 0.0;
};

enum class Role { Sp1, Sp2 };

struct SolverOptions {
  double tol_strategy = 1e-5;    // relative, on mu
  double tol_profit_rel = 1e-6;  // multiplied by p*M
  int max_iter = 200;
  int grid_points = 512;         // coarse stage of the best-response search
  int refined_peaks = 4;         // local grid maxima refined by golden section
  int fallback_grid_points = 201;

  double tol_profit(const Scenario& s) const { return tol_profit_rel * s.p * s.M; }
};

struct EquilibriumResult {
  Strategy strategy1;
  Strategy strategy2;
  MarketOutcome outcome;
  int iterations = 0;
  bool converged = false;
  double residual = 0.0;  // largest profit gain found by deviation probing
  bool used_fallback = false;
  bool multiple_equilibria = false;
};

/// Update rate minimizing peak AoI at capacity mu under the constraint:
/// min(mu/2, max_feasible_lambda). Empty when the constraint admits no traffic.
/// Revenue only depends on lambda through the peak age and cost only through
/// mu, so the age-minimizing lambda is also profit-maximizing.
/// Throws std::domain_error for mu <= 0.
std::optional<double> optimal_lambda_given_mu(const ServiceClassConstraint& constraint, double mu);

/// Strategy at capacity mu with the optimal inner lambda (lambda = 0 when
/// nothing is feasible, mu <= 0 collapses to the null strategy).
Strategy strategy_at(const ServiceClassConstraint& constraint, double mu);

/// Throws std::domain_error naming the violated rule when a strategy is not
/// admissible: negative rates, traffic without capacity, an unstable queue or
/// an arrival rate above max_feasible_lambda.
void require_feasible(const ServiceClassConstraint& constraint, const Strategy& s);

/// Peak age delivered by a strategy; +inf without stable positive traffic.
double peak_aoi_of(const Strategy& s);

/// Profit of `role` choosing `own` against a rival with peak age rival_delta_p.
double role_profit(const Scenario& s, Role role, const Strategy& own, double rival_delta_p);

/// Profit-maximizing strategy against a fixed rival peak age. Searches
/// mu in [0, sqrt(pM/c)] on a coarse grid, refines the best local maxima by
/// golden section and breaks near-ties (within tol_profit) toward smaller mu.
Strategy best_response(const Scenario& s, const ServiceClassConstraint& own_constraint,
                       double rival_delta_p, Role role, const SolverOptions& opt = {});

/// How much `role` could gain by switching from `own` to its best response.
double deviation_gain(const Scenario& s, Role role, const Strategy& own, const Strategy& rival,
                      const SolverOptions& opt = {});

MarketOutcome evaluate(const Scenario& s, const Strategy& s1, const Strategy& s2);

/// Fixed points of the composed best-response map found by scanning mu1 on a
/// grid; each returned pair passed bilateral deviation probing.
std::vector<std::pair<Strategy, Strategy>> fixed_point_search(const Scenario& s,
                                                              const SolverOptions& opt = {});

/// Alternating best-response iteration from mu0 = pMl/(16c) for both SPs, with
/// fixed_point_search as fallback when the iteration does not settle.
EquilibriumResult find_nash(const Scenario& s, const SolverOptions& opt = {});

}  // namespace aoiduo
