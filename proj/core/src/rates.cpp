#include "hqr/rates.hpp"

#include "hqr/detection.hpp"
#include "hqr/logic.hpp"

#include <cmath>
#include <string>

namespace hqr {

void RepeaterConfig::validate() const {
  if (d < 2) throw std::invalid_argument("d must be >= 2");
  if (!(segment_km > 0.0) || !std::isfinite(segment_km)) throw std::invalid_argument("L0 must be finite and > 0");
  if (!(total_span_km > 0.0) || !std::isfinite(total_span_km)) throw std::invalid_argument("span must be finite and > 0");
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw std::invalid_argument("alpha must be finite and > 0");
  if (!(delta_frac > 0.0 && delta_frac <= 1.0)) throw std::invalid_argument("delta-frac must lie in (0, 1]");
  if (purification_rounds < 0) throw std::invalid_argument("rounds must be >= 0");
  if (!(attenuation_length_km > 0.0) || !std::isfinite(attenuation_length_km)) {
    throw std::invalid_argument("L-att must be finite and > 0");
  }
  if (!(fiber_speed_km_s > 0.0) || !std::isfinite(fiber_speed_km_s)) {
    throw std::invalid_argument("fiber-speed must be finite and > 0");
  }
  if (scheme == Scheme::homodyne && (d < 2 || d > 4)) {
    throw std::invalid_argument("homodyne scheme requires d in {2, 3, 4}");
  }
  (void)nesting_level();
}

int RepeaterConfig::nesting_level() const {
  const double ratio = total_span_km / segment_km;
  if (!(ratio >= 1.0)) throw std::invalid_argument("span must be at least L0");
  const int n = static_cast<int>(std::lround(std::log2(ratio)));
  if (n > 30 || std::abs(ratio - std::ldexp(1.0, n)) > 1e-9 * ratio) {
    throw std::invalid_argument("span / L0 must be a power of two");
  }
  return n;
}

double RepeaterConfig::attempt_time_s() const { return 2.0 * segment_km / fiber_speed_km_s; }

double z_attempts(int n, double p, ZForm form) {
  if (n < 0 || n > 30) throw std::invalid_argument("z_attempts: n must lie in 0..30");
  if (!(p > 0.0 && p <= 1.0)) throw std::invalid_argument("z_attempts: P must lie in (0, 1]");
  const double segments = std::ldexp(1.0, n);
  const double q = 1.0 - p;

  if (form == ZForm::stable) {
    if (q == 0.0) return 1.0;
    // E[max] = sum_{t>=0} P(max > t) = sum_t [1 - (1 - q^t)^N].
    const double log_q = std::log(q);
    double z = 0.0;
    for (long long t = 0;; ++t) {
      const double qt = std::exp(static_cast<double>(t) * log_q);
      const double term = t == 0 ? 1.0 : -std::expm1(segments * std::log1p(-qt));
      z += term;
      if (term < 1e-17 * z || t > 100000000LL) break;
    }
    return z;
  }

  const auto count = static_cast<long long>(segments);
  if (count > 1024) throw std::invalid_argument("z_attempts: literal sums limited to n <= 10");
  double z = 0.0;
  double binom = 1.0;
  for (long long j = 1; j <= count; ++j) {
    binom *= static_cast<double>(count - j + 1) / static_cast<double>(j);
    const double denom = -std::expm1(static_cast<double>(j) * std::log1p(-p));
    const double sign = (form == ZForm::alternating && j % 2 == 0) ? -1.0 : 1.0;
    z += sign * binom / (q == 0.0 ? 1.0 : denom);
  }
  return z;
}

double effective_probability(double q_prev, double p_round) {
  if (!(q_prev > 0.0 && q_prev <= 1.0) || !(p_round > 0.0 && p_round <= 1.0)) {
    throw std::invalid_argument("effective_probability: inputs must lie in (0, 1]");
  }
  return q_prev * p_round * (2.0 - q_prev) / (3.0 - 2.0 * q_prev);
}

InitialLink initial_link(const RepeaterConfig& config) {
  config.validate();
  const ChannelParams ch(config.segment_km, config.attenuation_length_km);
  if (config.scheme == Scheme::usd) {
    const double p0 = usd_bound(config.d, config.alpha, ch.transmittance());
    return {loss_mixture_weights(config.d, config.alpha, ch, config.weights), p0};
  }
  const auto report = homodyne_report(config.d, config.alpha, ch, config.delta_frac);
  return {PhaseMixtureWeights::leading(config.d, report.average_fidelity), report.success_probability};
}

RateResult predict(const RepeaterConfig& config) {
  const InitialLink link = initial_link(config);
  if (!(link.probability > 0.0)) throw NumericalError("predict: initial success probability is zero");
  const int n = config.nesting_level();
  const double t0 = config.attempt_time_s();
  const double segments = std::ldexp(1.0, n);

  RateResult out{};
  out.initial_probability = link.probability;
  out.rounds.push_back({0, link.weights.fidelity(), 1.0, link.probability, link.weights});
  for (int k = 1; k <= config.purification_rounds; ++k) {
    const RoundResult& prev = out.rounds.back();
    const PurificationResult pur = purify_step(prev.weights);
    const double q = effective_probability(prev.effective_probability, pur.success);
    out.rounds.push_back({k, pur.weights.fidelity(), pur.success, q, pur.weights});
  }
  for (const auto& r : out.rounds) {
    const double z = z_attempts(n, r.effective_probability);
    out.per_round.push_back({n, z, 1.0 / (t0 * z), std::pow(r.fidelity, segments)});
  }
  const RateOutput& last = out.per_round.back();
  out.attempts = last.attempts;
  out.rate_hz = last.rate_hz;
  out.final_fidelity_bound = last.final_fidelity_bound;
  return out;
}

AttemptModel attempt_model(const RepeaterConfig& config) {
  const InitialLink link = initial_link(config);
  AttemptModel m{config.nesting_level(), link.probability, {}};
  PhaseMixtureWeights w = link.weights;
  for (int k = 1; k <= config.purification_rounds; ++k) {
    const auto pur = purify_step(w);
    m.purification_success.push_back(pur.success);
    w = pur.weights;
  }
  return m;
}

const char* to_string(TableId id) {
  switch (id) {
    case TableId::I: return "I";
    case TableId::II: return "II";
    case TableId::III: return "III";
    case TableId::IV: return "IV";
    case TableId::V: return "V";
  }
  return "?";
}

const char* to_string(CellStatus s) {
  switch (s) {
    case CellStatus::match: return "match";
    case CellStatus::known_typo: return "known-typo";
    case CellStatus::unresolved: return "unresolved";
  }
  return "?";
}

const char* to_string(Scheme s) { return s == Scheme::usd ? "usd" : "homodyne"; }

std::optional<TableId> parse_table_id(const std::string& text) {
  if (text == "I" || text == "1") return TableId::I;
  if (text == "II" || text == "2") return TableId::II;
  if (text == "III" || text == "3") return TableId::III;
  if (text == "IV" || text == "4") return TableId::IV;
  if (text == "V" || text == "5") return TableId::V;
  return std::nullopt;
}

}  // namespace hqr
