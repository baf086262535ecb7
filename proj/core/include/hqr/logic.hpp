#pragma once

#include "hqr/numerics.hpp"
#include "hqr/phase_mixture.hpp"

#include <span>
#include <vector>

namespace hqr {

// Unitary acting on `arity` qudits of dimension d. Checked on construction.
class QuditGate {
 public:
  QuditGate(int d, int arity, ComplexMatrix matrix, double tol = 1e-10);

  int d() const { return d_; }
  int arity() const { return arity_; }
  const ComplexMatrix& matrix() const { return matrix_; }

 private:
  int d_;
  int arity_;
  ComplexMatrix matrix_;
};

ComplexVector bell_state(int d, int k, int j);
// Row-major index k * d + j.
std::vector<BellLabel> bell_labels(int d);

struct GateSet {
  QuditGate x;                 // |k> -> |k+1>
  QuditGate z;                 // diag(w^k)
  QuditGate h;                 // |x> -> d^{-1/2} sum_k w^{kx} |k>
  QuditGate cphase_canonical;  // |x,y> -> w^{-xy} |x,y>
  QuditGate cphase_spin;       // exp(-2 pi i s_x s_y / d), s_k = (2k - d + 1) / 2
};

GateSet gates(int d);

// |x, y> -> |x - y, y>: target first, control second.
QuditGate cshift(int d);

// The spin-form phase gate equals the canonical one dressed with one local
// diagonal gate per qudit and a global phase:
//   cphase_spin = global_phase * (local (x) local) * cphase_canonical.
struct SpinPhaseReconciliation {
  ComplexMatrix local;
  Complex global_phase;
  double residual;
};

SpinPhaseReconciliation reconcile_cphase_spin(int d);

// Checks (H^dagger (x) 1) CP (H (x) 1) |x,y> = |x - y, y> on all inputs.
// `literal_residual` reports the same check with H in both places, which
// only holds for d = 2 (for d >= 3 it yields |y - x, y>).
struct DecompositionCheck {
  bool ok;
  double residual;
  double literal_residual;
};

DecompositionCheck cshift_decomposition_check(int d);

// Lift a gate acting on `systems` (in the gate's own order) to n qudits.
// System 0 is the slowest index.
ComplexMatrix embed_gate(const ComplexMatrix& gate, int d, int n, std::span<const int> systems);

// Reduced density matrix on `keep` (ascending) of an n-qudit operator.
ComplexMatrix reduce_to(const ComplexMatrix& rho, int d, int n, std::span<const int> keep);

// sum_j w_j |C_j><C_j| with C_j = phi_{-j, 0}.
ComplexMatrix phase_mixture_state(const PhaseMixtureWeights& w);
// <C_j| rho |C_j> for every j, rho a two-qudit operator (not renormalized).
std::vector<double> phase_mixture_populations(const ComplexMatrix& rho, int d);

struct PurificationResult {
  double success;
  PhaseMixtureWeights weights;
};

// Closed form: success = sum p_j^2, p'_j = p_j^2 / success.
PurificationResult purify_step(const PhaseMixtureWeights& w);

// Local pre-rotation applied to each copy before the bilateral CSHIFT:
// H^dagger on the first qudit, H on the second.
ComplexMatrix purification_prerotation(int d);

// Full density-matrix simulation of two copies: pre-rotation, bilateral
// CSHIFT, postselection on equal outcomes, inverse rotation. d in {2, 3}.
PurificationResult purify_circuit_sim(int d, const PhaseMixtureWeights& w);

// Cyclic convolution w_m = sum_j a_j b_{m - j}.
PhaseMixtureWeights swap_phase_mixture(const PhaseMixtureWeights& a, const PhaseMixtureWeights& b);
// Weights after joining `segments` identical pairs by swapping.
PhaseMixtureWeights swap_chain(const PhaseMixtureWeights& w, int segments);

struct BellMeasurement {
  int d;
  std::vector<double> probabilities;  // index k * d + j
};

// CSHIFT (control on the first qudit) followed by H (x) 1 and a
// computational measurement; outcome (a, b) maps to label (-a, -b).
BellMeasurement bell_measure(const DensityMatrix& state);

// Correction on the far end after outcome `label`: X^j then Z^k.
// Restores phi_{k1+k2, 0} from a swap of phi_{k1,0} and phi_{k2,0}.
ComplexMatrix swap_correction(int d, const BellLabel& label);

struct SwapOutcome {
  BellLabel label;
  double probability;
  PhaseMixtureWeights weights;
};

// Brute-force four-qudit swap: Bell measurement on the inner pair of
// rho_a (x) rho_b, correction, phase populations of the outer pair.
std::vector<SwapOutcome> swap_circuit_sim(const PhaseMixtureWeights& a, const PhaseMixtureWeights& b);

}  // namespace hqr
