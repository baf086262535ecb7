#include "hqr/coherent.hpp"

#include <cmath>
#include <numbers>

namespace hqr {

RingSpec::RingSpec(int d, double amplitude) : d_(d), amplitude_(amplitude) {
  if (d < 2) throw std::invalid_argument("RingSpec: d must be >= 2");
  if (!(amplitude >= 0.0) || !std::isfinite(amplitude)) {
    throw std::invalid_argument("RingSpec: amplitude must be finite and >= 0");
  }
}

Complex RingSpec::point(int k) const { return amplitude_ * root_of_unity(d_, k); }

Complex root_of_unity(int d, long long k) {
  const long long r = ((k % d) + d) % d;
  if (r == 0) return {1.0, 0.0};
  return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(r) / d);
}

Complex overlap(Complex a, Complex b) {
  return std::exp(-0.5 * std::norm(a) - 0.5 * std::norm(b) + std::conj(a) * b);
}

NormConstants norm_constants(const RingSpec& ring) {
  // Expanding the ring states in photon number, direction m collects the
  // Fock components with n = -m (mod d), so
  //   N_m = d^2 * sum_{n = -m mod d} Poisson(n; alpha^2).
  // All terms are positive, which avoids the cancellation of the
  // root-of-unity sum when alpha is small.
  const int d = ring.d();
  const double lambda = ring.amplitude() * ring.amplitude();
  NormConstants out{std::vector<double>(d, 0.0)};
  if (lambda == 0.0) {
    out.values[0] = static_cast<double>(d) * d;
    return out;
  }
  const double log_lambda = std::log(lambda);
  const double spread = std::sqrt(lambda);
  const auto n_max = static_cast<long long>(lambda + 40.0 * spread + 60.0);
  const auto n_lo = static_cast<long long>(std::max(0.0, lambda - 40.0 * spread - 60.0));
  for (long long n = n_lo; n <= n_max; ++n) {
    const double log_p = -lambda + static_cast<double>(n) * log_lambda - std::lgamma(static_cast<double>(n) + 1.0);
    const double p = std::exp(log_p);
    const int m = static_cast<int>((d - n % d) % d);
    out.values[m] += p;
  }
  for (auto& v : out.values) v *= static_cast<double>(d) * d;
  return out;
}

NormConstants published_qutrit_norm_constants(double amplitude) {
  if (!(amplitude >= 0.0)) throw std::invalid_argument("published_qutrit_norm_constants: amplitude must be >= 0");
  const double a2 = amplitude * amplitude;
  const double damp = std::exp(-1.5 * a2);
  const double arg = std::sqrt(0.75) * a2;
  const double c = std::cos(arg);
  const double s = std::sqrt(3.0) * std::sin(arg);
  return NormConstants{{3.0 + 6.0 * damp * c, 3.0 - damp * (3.0 * c + s), 3.0 - damp * (3.0 * c - s)}};
}

ComplexMatrix gram_matrix(const RingSpec& ring) {
  const int d = ring.d();
  ComplexMatrix g(d, d);
  for (int k = 0; k < d; ++k) {
    for (int l = 0; l < d; ++l) g(k, l) = overlap(ring.point(k), ring.point(l));
  }
  return g;
}

ComplexVector ring_to_orthonormal(const RingSpec& ring, int k) {
  const int d = ring.d();
  if (k < 0 || k >= d) throw std::invalid_argument("ring_to_orthonormal: phase index out of range");
  const auto n = norm_constants(ring);
  ComplexVector c(d, Complex{0.0, 0.0});
  for (int m = 0; m < d; ++m) {
    if (n.values[m] < kAbsentDirectionThreshold) continue;
    c[m] = std::sqrt(n.values[m]) / d * root_of_unity(d, -static_cast<long long>(k) * m);
  }
  return c;
}

}  // namespace hqr
