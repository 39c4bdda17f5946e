#include "aoiduo/market.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace aoiduo {

namespace {

// 1/dp with 1/inf := 0.
double quality(double delta_p) { return std::isinf(delta_p) ? 0.0 : 1.0 / delta_p; }

double clamped_gamma(const Scenario& s, double delta_p1, double delta_p2) {
  return std::clamp(gamma_threshold(delta_p1, delta_p2, s.l), 0.0, 1.0);
}

}  // namespace

Scenario default_scenario() { return Scenario{}; }

void validate(const Scenario& s) {
  if (!std::isfinite(s.M) || s.M < 0.0) throw std::invalid_argument("M must be finite and >= 0");
  if (!std::isfinite(s.l) || !(s.l > 0.0)) throw std::invalid_argument("l must be finite and > 0");
  if (!std::isfinite(s.p) || s.p < 0.0) throw std::invalid_argument("p must be finite and >= 0");
  if (!std::isfinite(s.c) || !(s.c > 0.0)) throw std::invalid_argument("c must be finite and > 0");
  if (!std::isfinite(s.nu)) throw std::invalid_argument("nu must be finite");
  validate(s.constraint1);
  validate(s.constraint2);
}

double gamma_threshold(double delta_p1, double delta_p2, double l) {
  return 0.5 + 0.5 * l * (quality(delta_p1) - quality(delta_p2));
}

Shares market_shares(const Scenario& s, double delta_p1, double delta_p2) {
  const double m1 = s.M * clamped_gamma(s, delta_p1, delta_p2);
  return {m1, s.M - m1};
}

ConsumerSurplus consumer_surplus(const Scenario& s, double delta_p1, double delta_p2) {
  const double g = clamped_gamma(s, delta_p1, delta_p2);
  // Integrals of the linear utilities over [0,g] and [g,1].
  const double base1 = s.nu + s.l * quality(delta_p1) - s.p;
  const double base2 = s.nu + s.l * quality(delta_p2) - s.p;
  const double h = 1.0 - g;
  return {g * base1 - 0.5 * g * g, h * base2 - 0.5 * h * h};
}

double profit(const Scenario& s, double m, double mu) { return m * s.p - s.c * mu * mu; }

Coverage market_coverage_check(const Scenario& s, double delta_p1, double delta_p2) {
  const double g = clamped_gamma(s, delta_p1, delta_p2);
  // u1 decreases and u2 increases in gamma, so both pieces bottom out at g.
  const double u1_at_g = s.nu + s.l * quality(delta_p1) - g - s.p;
  const double u2_at_g = s.nu + s.l * quality(delta_p2) - (1.0 - g) - s.p;
  double worst;
  if (g <= 0.0) {
    worst = u2_at_g;
  } else if (g >= 1.0) {
    worst = u1_at_g;
  } else {
    worst = std::min(u1_at_g, u2_at_g);
  }
  return {worst >= 0.0, worst};
}

MarketOutcome market_outcome(const Scenario& s, double delta_p1, double delta_p2, double mu1,
                             double mu2) {
  MarketOutcome out;
  out.delta_p1 = delta_p1;
  out.delta_p2 = delta_p2;
  out.gamma_threshold = gamma_threshold(delta_p1, delta_p2, s.l);
  const auto shares = market_shares(s, delta_p1, delta_p2);
  out.m1 = shares.m1;
  out.m2 = shares.m2;
  const auto cs = consumer_surplus(s, delta_p1, delta_p2);
  out.cs1 = cs.cs1;
  out.cs2 = cs.cs2;
  out.pi1 = profit(s, out.m1, mu1);
  out.pi2 = profit(s, out.m2, mu2);
  out.social_welfare = out.cs1 + out.cs2 + out.pi1 + out.pi2;
  out.coverage = market_coverage_check(s, delta_p1, delta_p2);
  return out;
}

}  // namespace aoiduo
