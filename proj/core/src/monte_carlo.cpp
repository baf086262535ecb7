#include "hqr/rates.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <thread>

namespace hqr {

namespace {

struct Moments {
  std::uint64_t count = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x) {
    ++count;
    const double delta = x - mean;
    mean += delta / static_cast<double>(count);
    m2 += delta * (x - mean);
  }

  // Pairwise (Chan) combination of partial moments; applied in shard order for determinism.
  void merge(const Moments& o) {
    if (o.count == 0) return;
    const double n = static_cast<double>(count + o.count);
    const double delta = o.mean - mean;
    mean += delta * static_cast<double>(o.count) / n;
    m2 += o.m2 + delta * delta * static_cast<double>(count) * static_cast<double>(o.count) / n;
    count += o.count;
  }
};

class SegmentSampler {
 public:
  SegmentSampler(const AttemptModel& model, std::mt19937_64& rng)
      : model_(model), rng_(rng), link_(model.p0 < 1.0 ? model.p0 : 0.5) {}

  // Attempt rounds until one segment holds a pair after `level` purification
  // rounds. Each round pairs two independently built lower-level pairs and
  // waits for the slower one; a failed round restarts both.
  std::uint64_t sample(std::size_t level) {
    if (level == 0) return model_.p0 >= 1.0 ? 1 : link_(rng_) + 1;
    std::bernoulli_distribution keep(model_.purification_success[level - 1]);
    std::uint64_t total = 0;
    for (;;) {
      const std::uint64_t a = sample(level - 1);
      const std::uint64_t b = sample(level - 1);
      total += std::max(a, b);
      if (keep(rng_)) return total;
    }
  }

 private:
  const AttemptModel& model_;
  std::mt19937_64& rng_;
  std::geometric_distribution<std::uint64_t> link_;
};

Moments run_shard(const AttemptModel& model, std::uint64_t trials, std::uint64_t seed, unsigned shard) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(shard), 0x9e3779b9u};
  std::mt19937_64 rng(seq);
  SegmentSampler sampler(model, rng);
  const std::size_t top = model.purification_success.size();
  const std::uint64_t segments = std::uint64_t{1} << model.nesting;
  Moments m;
  for (std::uint64_t t = 0; t < trials; ++t) {
    std::uint64_t worst = 0;
    for (std::uint64_t s = 0; s < segments; ++s) worst = std::max(worst, sampler.sample(top));
    m.add(static_cast<double>(worst));
  }
  return m;
}

}  // namespace

MonteCarloEstimate monte_carlo_attempts(const AttemptModel& model, std::uint64_t trials, std::uint64_t seed,
                                        unsigned shards) {
  if (trials == 0) throw std::invalid_argument("monte_carlo_attempts: trials must be > 0");
  if (shards == 0) throw std::invalid_argument("monte_carlo_attempts: shards must be > 0");
  if (model.nesting < 0 || model.nesting > 20) throw std::invalid_argument("monte_carlo_attempts: nesting must lie in 0..20");
  if (!(model.p0 > 0.0 && model.p0 <= 1.0)) throw std::invalid_argument("monte_carlo_attempts: p0 must lie in (0, 1]");
  for (double p : model.purification_success) {
    if (!(p > 0.0 && p <= 1.0)) throw std::invalid_argument("monte_carlo_attempts: purification success must lie in (0, 1]");
  }
  shards = static_cast<unsigned>(std::min<std::uint64_t>(shards, trials));

  std::vector<Moments> parts(shards);
  std::vector<std::thread> workers;
  workers.reserve(shards);
  for (unsigned s = 0; s < shards; ++s) {
    const std::uint64_t share = trials / shards + (s < trials % shards ? 1 : 0);
    workers.emplace_back([&, s, share] { parts[s] = run_shard(model, share, seed, s); });
  }
  for (auto& w : workers) w.join();

  Moments total;
  for (const auto& p : parts) total.merge(p);
  const double variance = total.count > 1 ? total.m2 / static_cast<double>(total.count - 1) : 0.0;
  return {total.mean, std::sqrt(variance / static_cast<double>(total.count)), total.count};
}

MonteCarloEstimate monte_carlo_attempts(const RepeaterConfig& config, std::uint64_t trials, std::uint64_t seed,
                                        unsigned shards) {
  return monte_carlo_attempts(attempt_model(config), trials, seed, shards);
}

}  // namespace hqr
