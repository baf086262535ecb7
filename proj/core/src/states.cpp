#include "hqr/states.hpp"

#include "hqr/logic.hpp"

#include <cmath>
#include <numbers>

namespace hqr {

ChannelParams::ChannelParams(double length_km, double attenuation_length_km)
    : length_km_(length_km), attenuation_length_km_(attenuation_length_km) {
  if (!(length_km >= 0.0) || !std::isfinite(length_km)) {
    throw std::invalid_argument("ChannelParams: length must be finite and >= 0");
  }
  if (!(attenuation_length_km > 0.0) || !std::isfinite(attenuation_length_km)) {
    throw std::invalid_argument("ChannelParams: attenuation length must be finite and > 0");
  }
  transmittance_ = std::exp(-length_km_ / attenuation_length_km_);
  if (!(transmittance_ > 0.0)) throw std::invalid_argument("ChannelParams: transmittance underflows to 0");
}

DispersiveInteraction::DispersiveInteraction(int d, double theta) : d_(d), theta_(theta) {
  if (d < 2) throw std::invalid_argument("DispersiveInteraction: d must be >= 2");
}

DispersiveInteraction DispersiveInteraction::strong(int d) {
  return DispersiveInteraction(d, 2.0 * std::numbers::pi / d);
}

DispersiveInteraction DispersiveInteraction::inverse(int d) {
  return DispersiveInteraction(d, -2.0 * std::numbers::pi / d);
}

std::vector<double> DispersiveInteraction::spin_eigenvalues() const {
  std::vector<double> s(d_);
  for (int k = 0; k < d_; ++k) s[k] = (2.0 * k - d_ + 1.0) / 2.0;
  return s;
}

Complex DispersiveInteraction::light_amplitude(double alpha, int k) const {
  return alpha * std::polar(1.0, theta_ * (2.0 * k - d_ + 1.0) / 2.0);
}

NormConstants norm_constants(int d, double amplitude, WeightModel model) {
  if (model == WeightModel::published && d == 3) return published_qutrit_norm_constants(amplitude);
  return norm_constants(RingSpec(d, amplitude));
}

MatterLightPure matter_light_pure(int d, double alpha) {
  const RingSpec ring(d, alpha);
  MatterLightPure out{d, alpha, ComplexVector(static_cast<std::size_t>(d) * d)};
  const double norm = 1.0 / std::sqrt(static_cast<double>(d));
  for (int k = 0; k < d; ++k) {
    const auto c = ring_to_orthonormal(ring, k);
    for (int m = 0; m < d; ++m) out.amplitudes[k * d + m] = norm * c[m];
  }
  return out;
}

namespace {

PhaseMixtureWeights weights_from_norms(const NormConstants& n, int d) {
  std::vector<double> w(d);
  for (int m = 0; m < d; ++m) w[m] = std::max(0.0, n.values[m]) / (static_cast<double>(d) * d);
  return PhaseMixtureWeights(std::move(w));
}

}  // namespace

PhaseMixtureWeights loss_mixture_weights(int d, double alpha, const ChannelParams& ch, WeightModel model) {
  const double lost = std::sqrt(1.0 - ch.transmittance()) * alpha;
  return weights_from_norms(norm_constants(d, lost, model), d);
}

MatterLightMixture matter_light_mixture(int d, double alpha, const ChannelParams& ch, WeightModel model,
                                        const DensityTolerances& tol) {
  if (d < 2) throw std::invalid_argument("matter_light_mixture: d must be >= 2");
  if (!(alpha >= 0.0)) throw std::invalid_argument("matter_light_mixture: alpha must be >= 0");
  auto weights = loss_mixture_weights(d, alpha, ch, model);
  const auto light = norm_constants(d, std::sqrt(ch.transmittance()) * alpha, model);

  const std::size_t dim = static_cast<std::size_t>(d) * d;
  ComplexMatrix rho(dim, dim);
  for (int m = 0; m < d; ++m) {
    if (weights[m] == 0.0) continue;
    ComplexVector psi(dim, Complex{0.0, 0.0});
    for (int r = 0; r < d; ++r) {
      if (light.values[r] < kAbsentDirectionThreshold) continue;
      psi[static_cast<std::size_t>((m + r) % d) * d + r] = std::sqrt(light.values[r]) / d;
    }
    rho += weights[m] * ComplexMatrix::outer(psi, psi);
  }
  return MatterLightMixture{DensityMatrix(std::move(rho), Bipartition{static_cast<std::size_t>(d),
                                                                       static_cast<std::size_t>(d)}, tol),
                            std::move(weights), light};
}

std::vector<NegativityPoint> negativity_scan(int d, const ChannelParams& ch, std::span<const double> alphas,
                                             WeightModel model, const DensityTolerances& tol) {
  std::vector<NegativityPoint> out;
  out.reserve(alphas.size());
  for (double a : alphas) out.push_back({a, negativity(matter_light_mixture(d, a, ch, model, tol).rho)});
  return out;
}

MatterMatterState matter_matter_components(int d, double alpha, const ChannelParams& ch, WeightModel model) {
  if (d < 2) throw std::invalid_argument("matter_matter_components: d must be >= 2");
  MatterMatterState out{d, std::sqrt(ch.transmittance()) * alpha, loss_mixture_weights(d, alpha, ch, model), {}};
  const double amp = 1.0 / std::sqrt(static_cast<double>(d));
  out.terms.reserve(static_cast<std::size_t>(d) * d);
  for (int m = 0; m < d; ++m) {
    const int k = (m * (d - 1)) % d;
    for (int j = 0; j < d; ++j) out.terms.push_back({m, BellLabel{k, j}, j, amp});
  }
  return out;
}

ComplexVector component_vector(const MatterMatterState& state, int m) {
  const int d = state.d;
  if (m < 0 || m >= d) throw std::invalid_argument("component_vector: component index out of range");
  const RingSpec ring(d, state.signal_amplitude);
  ComplexVector v(static_cast<std::size_t>(d) * d * d, Complex{0.0, 0.0});
  for (const auto& t : state.terms) {
    if (t.component != m) continue;
    const auto bell = bell_state(d, t.bell.k, t.bell.j);
    const auto light = ring_to_orthonormal(ring, t.ring_index);
    for (std::size_t ab = 0; ab < bell.size(); ++ab) {
      for (int l = 0; l < d; ++l) v[ab * d + l] += t.amplitude * bell[ab] * light[l];
    }
  }
  return v;
}

}  // namespace hqr
