#pragma once

#include <vector>

namespace hqr {

// Label of the two-qudit Bell state
//   phi_{kj} = d^{-1/2} sum_y e^{2 pi i k y / d} |y, y - j (mod d)>.
struct BellLabel {
  int k = 0;
  int j = 0;

  friend bool operator==(const BellLabel&, const BellLabel&) = default;
};

// Probability vector over the d phase-Bell components. Component j is the
// Bell state phi_{-j mod d, 0}; j = 0 is the target. Validated on construction.
class PhaseMixtureWeights {
 public:
  explicit PhaseMixtureWeights(std::vector<double> p, double tol = 1e-10);

  static PhaseMixtureWeights pure(int d);
  static PhaseMixtureWeights uniform(int d);
  // (f, (1-f)/(d-1), ..., (1-f)/(d-1))
  static PhaseMixtureWeights leading(int d, double f);

  int d() const { return static_cast<int>(p_.size()); }
  const std::vector<double>& p() const { return p_; }
  double operator[](int j) const { return p_[static_cast<std::size_t>(j)]; }
  double fidelity() const { return p_.front(); }

 private:
  std::vector<double> p_;
};

}  // namespace hqr
