#pragma once

#include "hqr/coherent.hpp"
#include "hqr/numerics.hpp"
#include "hqr/phase_mixture.hpp"

#include <span>
#include <vector>

namespace hqr {

inline constexpr double kDefaultAttenuationLengthKm = 22.0;

// Fiber segment of length L0 with transmittance gamma = exp(-L0 / L_att).
class ChannelParams {
 public:
  explicit ChannelParams(double length_km, double attenuation_length_km = kDefaultAttenuationLengthKm);

  double length_km() const { return length_km_; }
  double attenuation_length_km() const { return attenuation_length_km_; }
  double transmittance() const { return transmittance_; }

 private:
  double length_km_;
  double attenuation_length_km_;
  double transmittance_;
};

// Controlled phase rotation exp(i theta S_z) of the light by a matter qudit,
// with spin eigenvalues (2k - d + 1) / 2.
class DispersiveInteraction {
 public:
  DispersiveInteraction(int d, double theta);
  static DispersiveInteraction strong(int d);    // theta = +2 pi / d
  static DispersiveInteraction inverse(int d);   // theta = -2 pi / d

  int d() const { return d_; }
  double theta() const { return theta_; }
  std::vector<double> spin_eigenvalues() const;
  // Amplitude of the light after interacting with level k.
  Complex light_amplitude(double alpha, int k) const;

 private:
  int d_;
  double theta_;
};

// Which closed forms supply the norm constants. `gram` is exact. `published`
// substitutes the printed qutrit forms (only differs for d = 3).
enum class WeightModel { gram, published };

NormConstants norm_constants(int d, double amplitude, WeightModel model);

// (1/sqrt d) sum_k |k>|alpha w^k>. The light mode is written in the
// orthonormal cat basis of the ring; index = k * d + m.
struct MatterLightPure {
  int d;
  double alpha;
  ComplexVector amplitudes;
};

MatterLightPure matter_light_pure(int d, double alpha);

// Loss-channel mixture of the matter-light system.
//   rho = sum_m w_m |Psi_m><Psi_m|,  w_m = N_m(sqrt(1-gamma) alpha) / d^2,
//   Psi_m = (1/d) sum_r sqrt(N~_r) |m + r>_X |v~_r>,
// with N~ the constants at sqrt(gamma) alpha. Matter is written in the X basis
// |k>_X = d^{-1/2} sum_q e^{-2 pi i k q / d} |q>, index = matter * d + light.
struct MatterLightMixture {
  DensityMatrix rho;
  PhaseMixtureWeights weights;
  NormConstants light_norms;
};

MatterLightMixture matter_light_mixture(int d, double alpha, const ChannelParams& ch,
                                        WeightModel model = WeightModel::gram, const DensityTolerances& tol = {});

// Component weights N_m(sqrt(1-gamma) alpha) / d^2 on their own.
PhaseMixtureWeights loss_mixture_weights(int d, double alpha, const ChannelParams& ch,
                                         WeightModel model = WeightModel::gram);

struct NegativityPoint {
  double alpha;
  double negativity;
};

std::vector<NegativityPoint> negativity_scan(int d, const ChannelParams& ch, std::span<const double> alphas,
                                             WeightModel model = WeightModel::gram, const DensityTolerances& tol = {});

// One term of a matter-matter component: amplitude * |phi_bell> |ring(ring_index)>.
struct ComponentTerm {
  int component;
  BellLabel bell;
  int ring_index;
  double amplitude;
};

// After the second (inverse) interaction, component m reads
//   sum_j d^{-1/2} |phi_{-m, j}> |sqrt(gamma) alpha w^j>.
struct MatterMatterState {
  int d;
  double signal_amplitude;  // sqrt(gamma) alpha
  PhaseMixtureWeights weights;
  std::vector<ComponentTerm> terms;  // d * d entries, component-major
};

MatterMatterState matter_matter_components(int d, double alpha, const ChannelParams& ch,
                                           WeightModel model = WeightModel::gram);

// Dense vector of component m on matter (x) matter (x) light, light in the
// orthonormal basis at the signal amplitude. Index = (a * d + b) * d + light.
ComplexVector component_vector(const MatterMatterState& state, int m);

}  // namespace hqr
