#include "hqr/phase_mixture.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace hqr {

PhaseMixtureWeights::PhaseMixtureWeights(std::vector<double> p, double tol) : p_(std::move(p)) {
  if (p_.size() < 2) throw std::invalid_argument("PhaseMixtureWeights: need at least two components");
  double sum = 0.0;
  for (double x : p_) {
    if (!std::isfinite(x) || x < -tol) throw std::invalid_argument("PhaseMixtureWeights: negative or non-finite weight");
    sum += x;
  }
  if (std::abs(sum - 1.0) > tol) {
    throw std::invalid_argument("PhaseMixtureWeights: weights sum to " + std::to_string(sum));
  }
  for (double& x : p_) x = std::max(0.0, x);
}

PhaseMixtureWeights PhaseMixtureWeights::pure(int d) {
  if (d < 2) throw std::invalid_argument("PhaseMixtureWeights: d must be >= 2");
  std::vector<double> p(d, 0.0);
  p[0] = 1.0;
  return PhaseMixtureWeights(std::move(p));
}

PhaseMixtureWeights PhaseMixtureWeights::uniform(int d) {
  if (d < 2) throw std::invalid_argument("PhaseMixtureWeights: d must be >= 2");
  return PhaseMixtureWeights(std::vector<double>(d, 1.0 / d));
}

PhaseMixtureWeights PhaseMixtureWeights::leading(int d, double f) {
  if (d < 2) throw std::invalid_argument("PhaseMixtureWeights: d must be >= 2");
  if (!(f >= 0.0 && f <= 1.0)) throw std::invalid_argument("PhaseMixtureWeights: leading weight outside [0,1]");
  std::vector<double> p(d, (1.0 - f) / (d - 1));
  p[0] = f;
  return PhaseMixtureWeights(std::move(p));
}

}  // namespace hqr
