#pragma once

#include "aoiduo/aoi_queueing.hpp"

namespace aoiduo {

/// One game instance. SP1 is dimensioned by constraint1, SP2 by constraint2;
/// both charge the same subscription price p.
struct Scenario {
  double M = 10.0;    // users
  double nu = 2.0;    // intrinsic service value
  double l = 0.5;     // quality-to-money conversion
  double p = 1.0;     // subscription price
  double c = 0.1;     // capacity cost coefficient
  ServiceClassConstraint constraint1 = Urllc{0.8, 0.1};
  ServiceClassConstraint constraint2 = Embb{3.0};
};

/// M=10, c=0.1, l=0.5, p=1, nu=2, alpha=3, epsilon=0.8, delta=0.1.
Scenario default_scenario();

/// Throws std::invalid_argument when M < 0, l <= 0, p < 0, c <= 0, nu is not
/// finite or a constraint is malformed.
void validate(const Scenario& s);

struct Shares {
  double m1 = 0.0;
  double m2 = 0.0;
};

struct ConsumerSurplus {
  double cs1 = 0.0;
  double cs2 = 0.0;
};

struct Coverage {
  bool covered = false;
  double min_utility = 0.0;
};

struct MarketOutcome {
  double gamma_threshold = 0.5;
  double m1 = 0.0, m2 = 0.0;
  double cs1 = 0.0, cs2 = 0.0;
  double pi1 = 0.0, pi2 = 0.0;
  double social_welfare = 0.0;
  double delta_p1 = 0.0, delta_p2 = 0.0;
  Coverage coverage;
};

/// Unclamped indifference position 1/2 + (l/2)(1/dp1 - 1/dp2). Infinite peak
/// ages contribute zero quality.
double gamma_threshold(double delta_p1, double delta_p2, double l);

/// Subscribers of each SP. The indifferent user (gamma == threshold) goes to SP1.
Shares market_shares(const Scenario& s, double delta_p1, double delta_p2);

ConsumerSurplus consumer_surplus(const Scenario& s, double delta_p1, double delta_p2);

/// m p - c mu^2; negative values are legitimate.
double profit(const Scenario& s, double m, double mu);

/// Minimum utility over the user interval, each user served by the SP it picks.
/// The market is covered when that minimum is nonnegative.
Coverage market_coverage_check(const Scenario& s, double delta_p1, double delta_p2);

MarketOutcome market_outcome(const Scenario& s, double delta_p1, double delta_p2, double mu1,
                             double mu2);

}  // namespace aoiduo
