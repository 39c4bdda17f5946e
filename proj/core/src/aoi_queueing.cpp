#include "aoiduo/aoi_queueing.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace aoiduo {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

void require_stable(const QueueOperatingPoint& q) {
  if (!std::isfinite(q.lambda) || !std::isfinite(q.mu) || q.lambda <= 0.0 || q.mu <= 0.0) {
    std::ostringstream os;
    os << "operating point needs positive finite rates (lambda=" << q.lambda << ", mu=" << q.mu
       << ")";
    throw std::domain_error(os.str());
  }
  if (q.lambda >= q.mu) {
    std::ostringstream os;
    os << "unstable queue: lambda=" << q.lambda << " >= mu=" << q.mu;
    throw std::domain_error(os.str());
  }
}

void validate(const ServiceClassConstraint& constraint) {
  std::visit(Overloaded{
                 [](const Embb& e) {
                   if (!(e.alpha > 1.0) || !std::isfinite(e.alpha))
                     throw std::invalid_argument("eMBB alpha must be a finite value > 1");
                 },
                 [](const Urllc& u) {
                   if (!(u.epsilon > 0.0) || !std::isfinite(u.epsilon))
                     throw std::invalid_argument("URLLC epsilon must be a finite value > 0");
                   if (!(u.delta > 0.0 && u.delta < 1.0))
                     throw std::invalid_argument("URLLC delta must lie in (0,1)");
                 },
             },
             constraint);
}

std::string describe(const ServiceClassConstraint& constraint) {
  return std::visit(Overloaded{
                        [](const Embb&) {
                          return std::string("eMBB mean-delay constraint lambda <= (1 - 1/alpha) mu");
                        },
                        [](const Urllc&) {
                          return std::string(
                              "URLLC delay-tail constraint lambda + ln(1/delta)/epsilon <= mu");
                        },
                    },
                    constraint);
}

double average_aoi(const QueueOperatingPoint& q) {
  require_stable(q);
  return average_aoi_or_inf(q.lambda, q.mu);
}

double peak_aoi(const QueueOperatingPoint& q) {
  require_stable(q);
  return peak_aoi_or_inf(q.lambda, q.mu);
}

double average_aoi_or_inf(double lambda, double mu) noexcept {
  if (!(lambda > 0.0) || !(mu > 0.0) || !(lambda < mu)) return kInf;
  const double rho = lambda / mu;
  return (1.0 + 1.0 / rho + rho * rho / (1.0 - rho)) / mu;
}

double peak_aoi_or_inf(double lambda, double mu) noexcept {
  if (!(lambda > 0.0) || !(mu > 0.0) || !(lambda < mu)) return kInf;
  const double rho = lambda / mu;
  return (1.0 + 1.0 / rho + rho / (1.0 - rho)) / mu;
}

double max_feasible_lambda(const ServiceClassConstraint& constraint, double mu) {
  return std::visit(Overloaded{
                        [mu](const Embb& e) { return (1.0 - 1.0 / e.alpha) * mu; },
                        [mu](const Urllc& u) { return mu - std::log(1.0 / u.delta) / u.epsilon; },
                    },
                    constraint);
}

double delay_tail_probability(const QueueOperatingPoint& q, double epsilon) {
  require_stable(q);
  if (!(epsilon > 0.0)) throw std::domain_error("delay bound epsilon must be > 0");
  return std::exp(-epsilon * (q.mu - q.lambda));
}

double mean_system_time(const QueueOperatingPoint& q) {
  require_stable(q);
  return 1.0 / (q.mu - q.lambda);
}

}  // namespace aoiduo
