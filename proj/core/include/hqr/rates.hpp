#pragma once

#include "hqr/phase_mixture.hpp"
#include "hqr/states.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace hqr {

inline constexpr double kDefaultFiberSpeedKmPerS = 2.0e5;
inline constexpr double kDefaultDeltaFrac = 0.2;

enum class Scheme { usd, homodyne };

struct RepeaterConfig {
  int d = 3;
  double segment_km = 5.0;
  double total_span_km = 10.0;  // segment_km * 2^n
  double alpha = 1.2;
  Scheme scheme = Scheme::usd;
  double delta_frac = kDefaultDeltaFrac;
  int purification_rounds = 0;
  double attenuation_length_km = kDefaultAttenuationLengthKm;
  double fiber_speed_km_s = kDefaultFiberSpeedKmPerS;
  WeightModel weights = WeightModel::gram;

  // Throws std::invalid_argument describing the first violated constraint.
  void validate() const;
  // n with total_span = 2^n * segment.
  int nesting_level() const;
  int segments() const { return 1 << nesting_level(); }
  // T0 = 2 L0 / c, seconds.
  double attempt_time_s() const;
};

enum class ZForm {
  stable,       // sum_{t>=0} [1 - (1 - q^t)^N], q = 1 - P
  alternating,  // literal inclusion-exclusion sum, exact in exact arithmetic
  unsigned_sum  // the binomial sum without alternating signs, for reference only
};

// Expected number of attempt rounds until all 2^n independent geometric(P)
// segments have succeeded, E[max of 2^n geometrics].
double z_attempts(int n, double p, ZForm form = ZForm::stable);

// Q = Q_prev * P_round * (2 - Q_prev) / (3 - 2 Q_prev).
double effective_probability(double q_prev, double p_round);

struct RoundResult {
  int round;
  double fidelity;
  double purification_success;  // 1 for round 0
  double effective_probability;
  PhaseMixtureWeights weights;
};

struct RateOutput {
  int nesting;
  double attempts;
  double rate_hz;
  double final_fidelity_bound;
};

struct RateResult {
  std::vector<RoundResult> rounds;  // 0..purification_rounds
  double attempts;
  double rate_hz;
  double final_fidelity_bound;
  double initial_probability;
  // Same pipeline evaluated after every round, for table-style output.
  std::vector<RateOutput> per_round;
};

// Initial weights and success probability for the configured scheme.
struct InitialLink {
  PhaseMixtureWeights weights;
  double probability;
};

InitialLink initial_link(const RepeaterConfig& config);
RateResult predict(const RepeaterConfig& config);

struct MonteCarloEstimate {
  double mean;
  double standard_error;
  std::uint64_t trials;
};

// Attempt model behind the Monte Carlo: 2^nesting segments, each built from
// geometric(p0) links and `purification_success.size()` pairing rounds.
struct AttemptModel {
  int nesting = 0;
  double p0 = 1.0;
  std::vector<double> purification_success;
};

AttemptModel attempt_model(const RepeaterConfig& config);

// Trials are split into `shards` deterministic streams seeded from
// (seed, shard index) and run concurrently; the result depends only on
// (model, trials, seed, shards).
MonteCarloEstimate monte_carlo_attempts(const AttemptModel& model, std::uint64_t trials, std::uint64_t seed,
                                        unsigned shards = 1);
MonteCarloEstimate monte_carlo_attempts(const RepeaterConfig& config, std::uint64_t trials, std::uint64_t seed,
                                        unsigned shards = 1);

// ---- Table reproduction ----

enum class TableId { I, II, III, IV, V };

enum class CellStatus { match, known_typo, unresolved };

struct TableCell {
  std::string quantity;  // initial_fidelity, effective_probability, rate_hz, fidelity
  int rounds;
  std::optional<double> span_km;
  double computed;
  double printed;
  std::string printed_text;
  CellStatus status;
  std::string note;
};

struct TableReproduction {
  TableId id;
  RepeaterConfig base;  // total_span and rounds vary per cell
  std::vector<TableCell> cells;
  std::vector<std::string> notes;
};

TableReproduction reproduce_table(TableId id);

const char* to_string(TableId id);
const char* to_string(CellStatus s);
const char* to_string(Scheme s);
std::optional<TableId> parse_table_id(const std::string& text);

}  // namespace hqr
