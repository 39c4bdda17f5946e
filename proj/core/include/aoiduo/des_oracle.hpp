#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace aoiduo {

struct SimConfig {
  double lambda = 0.5;
  double mu = 1.0;
  std::uint64_t horizon = 1'000'000;      // delivered updates, warmup included
  std::optional<std::uint64_t> warmup;    // default: 1% of horizon
  std::uint64_t seed = 0;
  int batches = 100;                      // batch-means groups for standard errors

  std::uint64_t effective_warmup() const { return warmup.value_or(horizon / 100); }
};

/// An estimate together with its batch-means standard error.
struct Estimate {
  double mean = 0.0;
  double std_error = 0.0;
};

struct TailEstimate {
  double epsilon = 0.0;
  double fraction = 0.0;  // share of measured system times > epsilon
  double std_error = 0.0;
};

struct SimReport {
  Estimate average_aoi;       // time average of the age sawtooth
  Estimate mean_peak_aoi;     // mean age just before each delivery
  Estimate mean_system_time;
  Estimate aoi_gap;           // average_aoi - mean_peak_aoi, estimated per batch
  std::vector<TailEstimate> tail;
  std::uint64_t measured_updates = 0;
  double measured_time = 0.0;
};

/// SplitMix64; used to derive independent stream seeds and as the generator
/// behind both the arrival and the service streams.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next();
  /// Uniform on [0,1) with 53 random bits.
  double uniform();
  /// Exponential variate by inversion, -ln(1-U)/rate.
  double exponential(double rate);

 private:
  std::uint64_t state_;
};

/// Event-driven M/M/1-FCFS run. Arrivals and services use separate SplitMix64
/// streams seeded from `seed`. The age process is integrated exactly between
/// deliveries. Throws std::domain_error for unstable or nonpositive rates and
/// std::invalid_argument for horizon <= warmup or batches < 2.
SimReport simulate(const SimConfig& config, const std::vector<double>& tail_epsilons = {});

}  // namespace aoiduo
