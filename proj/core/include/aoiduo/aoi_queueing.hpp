#pragma once

#include <string>
#include <variant>

namespace aoiduo {

/// Arrival rate and capacity of one provider's M/M/1-FCFS update queue.
struct QueueOperatingPoint {
  double lambda = 0.0;
  double mu = 0.0;

  double utilization() const { return lambda / mu; }
};

/// Throws std::domain_error unless 0 < lambda < mu (both finite).
void require_stable(const QueueOperatingPoint& q);

/// Mean-delay dimensioning: E[t] <= alpha / mu.
struct Embb {
  double alpha = 3.0;
};

/// Delay-tail dimensioning: Prob{t > epsilon} <= delta.
struct Urllc {
  double epsilon = 0.8;
  double delta = 0.1;
};

using ServiceClassConstraint = std::variant<Embb, Urllc>;

/// Throws std::invalid_argument if alpha <= 1, epsilon <= 0 or delta outside (0,1).
void validate(const ServiceClassConstraint& constraint);

/// Short human-readable name of the dimensioning rule, used in error messages.
std::string describe(const ServiceClassConstraint& constraint);

// Closed forms for M/M/1-FCFS. Both throw std::domain_error for unstable or
// nonpositive operating points.
double average_aoi(const QueueOperatingPoint& q);
double peak_aoi(const QueueOperatingPoint& q);

// Affinely extended variants used inside the optimizers: any operating point
// without positive, stable traffic (lambda <= 0, mu <= 0, lambda >= mu) has
// infinite age.
double average_aoi_or_inf(double lambda, double mu) noexcept;
double peak_aoi_or_inf(double lambda, double mu) noexcept;

/// Largest arrival rate the constraint admits at capacity mu. May be <= 0 for
/// URLLC, meaning mu cannot carry any traffic under the delay-tail bound.
double max_feasible_lambda(const ServiceClassConstraint& constraint, double mu);

/// Prob{system time > epsilon} = exp(-epsilon (mu - lambda)).
double delay_tail_probability(const QueueOperatingPoint& q, double epsilon);

/// E[t] = 1 / (mu - lambda).
double mean_system_time(const QueueOperatingPoint& q);

}  // namespace aoiduo
