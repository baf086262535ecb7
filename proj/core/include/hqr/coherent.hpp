#pragma once

#include "hqr/numerics.hpp"

#include <vector>

namespace hqr {

// Populations below this are treated as an absent basis direction.
inline constexpr double kAbsentDirectionThreshold = 1e-12;

// d coherent states alpha * e^{2 pi i k / d}, k = 0..d-1, with real alpha >= 0.
class RingSpec {
 public:
  RingSpec(int d, double amplitude);

  int d() const { return d_; }
  double amplitude() const { return amplitude_; }
  Complex point(int k) const;

 private:
  int d_;
  double amplitude_;
};

// Populations of the orthonormal superposition basis, one per phase index.
// Equal to d times the eigenvalues of the Gram matrix; they sum to d^2.
struct NormConstants {
  std::vector<double> values;
};

// Primitive d-th root of unity raised to the power k.
Complex root_of_unity(int d, long long k);

// <a|b> for coherent amplitudes a, b.
Complex overlap(Complex a, Complex b);

NormConstants norm_constants(const RingSpec& ring);

// The qutrit closed forms exactly as commonly printed, with a sqrt(3)
// prefactor on the sine term of the second and third constants. The
// first constant agrees with norm_constants; the other two only match
// in sum. Kept so published tables can be reproduced digit for digit.
NormConstants published_qutrit_norm_constants(double amplitude);

// Entry (k, l) = <ring(k)|ring(l)>.
ComplexMatrix gram_matrix(const RingSpec& ring);

// Coefficients c_m of ring state k in the orthonormal basis:
// c_m = sqrt(N_m) / d * e^{-2 pi i k m / d}, absent directions set to 0.
ComplexVector ring_to_orthonormal(const RingSpec& ring, int k);

}  // namespace hqr
