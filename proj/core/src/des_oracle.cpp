#include "aoiduo/des_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "aoiduo/aoi_queueing.hpp"

namespace aoiduo {

std::uint64_t SplitMix64::next() {
  std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double SplitMix64::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

double SplitMix64::exponential(double rate) { return -std::log1p(-uniform()) / rate; }

namespace {

struct Batch {
  double area = 0.0;
  double time = 0.0;
  double peak_sum = 0.0;
  double system_time_sum = 0.0;
  std::uint64_t count = 0;
  std::vector<std::uint64_t> exceed;
};

template <class F>
Estimate batch_estimate(const std::vector<Batch>& batches, double overall, F&& per_batch) {
  const double n = static_cast<double>(batches.size());
  double sum = 0.0, sum_sq = 0.0;
  for (const auto& b : batches) {
    const double v = per_batch(b);
    sum += v;
    sum_sq += v * v;
  }
  const double mean = sum / n;
  const double var = std::max(0.0, (sum_sq - n * mean * mean) / (n - 1.0));
  return {overall, std::sqrt(var / n)};
}

}  // namespace

SimReport simulate(const SimConfig& config, const std::vector<double>& tail_epsilons) {
  require_stable({config.lambda, config.mu});
  const std::uint64_t warmup = config.effective_warmup();
  if (config.horizon <= warmup) throw std::invalid_argument("horizon must exceed warmup");
  if (config.batches < 2) throw std::invalid_argument("need at least 2 batches");
  for (double eps : tail_epsilons) {
    if (!(eps > 0.0)) throw std::invalid_argument("tail epsilons must be > 0");
  }

  SplitMix64 root(config.seed);
  SplitMix64 arrivals(root.next());
  SplitMix64 services(root.next());

  // The first delivery has no predecessor age, so measurement starts at index >= 1.
  const std::uint64_t first = std::max<std::uint64_t>(warmup, 1);
  if (config.horizon <= first) throw std::invalid_argument("horizon too short to measure");
  const std::uint64_t measured = config.horizon - first;
  const auto n_batches = static_cast<std::uint64_t>(
      std::min<std::uint64_t>(static_cast<std::uint64_t>(config.batches), measured));
  const std::uint64_t batch_size = measured / n_batches;

  std::vector<Batch> batches(n_batches);
  for (auto& b : batches) b.exceed.assign(tail_epsilons.size(), 0);

  double prev_arrival = 0.0, prev_departure = 0.0;
  double arrival = 0.0;
  for (std::uint64_t i = 0; i < config.horizon; ++i) {
    arrival += arrivals.exponential(config.lambda);
    const double departure = std::max(arrival, prev_departure) + services.exponential(config.mu);
    if (i >= first) {
      auto& b = batches[std::min((i - first) / batch_size, n_batches - 1)];
      // Age grows as t - prev_arrival on [prev_departure, departure).
      const double age_before = departure - prev_arrival;
      const double age_after_prev = prev_departure - prev_arrival;
      b.area += 0.5 * (age_before * age_before - age_after_prev * age_after_prev);
      b.time += departure - prev_departure;
      b.peak_sum += age_before;
      const double system_time = departure - arrival;
      b.system_time_sum += system_time;
      for (std::size_t k = 0; k < tail_epsilons.size(); ++k) {
        if (system_time > tail_epsilons[k]) ++b.exceed[k];
      }
      ++b.count;
    }
    prev_arrival = arrival;
    prev_departure = departure;
  }

  Batch total;
  total.exceed.assign(tail_epsilons.size(), 0);
  for (const auto& b : batches) {
    total.area += b.area;
    total.time += b.time;
    total.peak_sum += b.peak_sum;
    total.system_time_sum += b.system_time_sum;
    total.count += b.count;
    for (std::size_t k = 0; k < tail_epsilons.size(); ++k) total.exceed[k] += b.exceed[k];
  }
  const double count = static_cast<double>(total.count);

  SimReport rep;
  rep.measured_updates = total.count;
  rep.measured_time = total.time;
  rep.average_aoi = batch_estimate(batches, total.area / total.time,
                                   [](const Batch& b) { return b.area / b.time; });
  rep.mean_peak_aoi = batch_estimate(batches, total.peak_sum / count, [](const Batch& b) {
    return b.peak_sum / static_cast<double>(b.count);
  });
  rep.mean_system_time = batch_estimate(batches, total.system_time_sum / count, [](const Batch& b) {
    return b.system_time_sum / static_cast<double>(b.count);
  });
  rep.aoi_gap = batch_estimate(
      batches, rep.average_aoi.mean - rep.mean_peak_aoi.mean,
      [](const Batch& b) { return b.area / b.time - b.peak_sum / static_cast<double>(b.count); });
  for (std::size_t k = 0; k < tail_epsilons.size(); ++k) {
    const auto e = batch_estimate(batches, static_cast<double>(total.exceed[k]) / count,
                                  [k](const Batch& b) {
                                    return static_cast<double>(b.exceed[k]) /
                                           static_cast<double>(b.count);
                                  });
    rep.tail.push_back({tail_epsilons[k], e.mean, e.std_error});
  }
  return rep;
}

}  // namespace aoiduo
