#pragma once

#include "hqr/numerics.hpp"
#include "hqr/states.hpp"

#include <optional>
#include <vector>

namespace hqr {

// Quadratures x = (a + a^dag) / 2 and p = (a - a^dag) / (2i); vacuum variance 1/4.
enum class Quadrature { x, p };

// Closed interval; infinite ends allowed.
struct Interval {
  double lower;
  double upper;
};

struct WindowSet {
  Quadrature quadrature;
  double delta;
  double delta_max;
  std::vector<double> centers;          // mean of the assigned ring state
  std::vector<Interval> bounds;
  std::vector<int> dominant_ring_index;  // ring state each window accepts
};

// sqrt(2/pi) exp(-2 (value - c)^2), c = Re beta (x) or Im beta (p).
double quadrature_pdf(Complex beta, Quadrature q, double value);

// Integral of quadrature_pdf over `w` via the error function.
double window_probability(Complex beta, Quadrature q, const Interval& w);

// Wavefunction whose modulus squared is quadrature_pdf. The phase is fixed
// so that the whole-line integral of psi_a psi_b^* equals overlap(b, a).
Complex quadrature_wavefunction(Complex beta, Quadrature q, double value);

// d = 2: x windows around +-sqrt(gamma) alpha. d = 3: p windows around
// 0 and +-(sqrt 3 / 2) sqrt(gamma) alpha. d = 4: the two real x windows.
// delta = delta_frac * delta_max.
WindowSet window_geometry(int d, double alpha, double gamma, double delta_frac);

struct DetectionReport {
  std::vector<double> window_probability;
  std::vector<double> window_fidelity;
  double success_probability;
  double average_fidelity;
  std::optional<double> offdiag_bound;  // qutrit only: max offdiag_weight over windows
  WindowSet windows;
};

DetectionReport homodyne_report(int d, double alpha, const ChannelParams& ch, double delta_frac,
                                double quadrature_tol = 1e-10);

// Integral over `w` of psi_a(v) psi_b(v)^* by adaptive Gauss-Kronrod.
// Throws NumericalError when the error estimate stays above tol.
Complex cross_window_integral(Complex a, Complex b, Quadrature q, const Interval& w, double tol = 1e-10);

// Largest |cross_window_integral| between distinct signal ring states on
// one qutrit window.
double offdiag_weight(int d, double alpha, const ChannelParams& ch, double delta_frac, int window,
                      double tol = 1e-10);

// Optimal unambiguous discrimination of the d symmetric ring states at
// amplitude sqrt(gamma) alpha: min_m N_m / d, clamped to [0, 1].
double usd_bound(int d, double alpha, double gamma);
// Same quantity straight from the root-of-unity sum.
double usd_bound_direct(int d, double alpha, double gamma);

}  // namespace hqr
