#include "hqr/detection.hpp"

#include "hqr/coherent.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace hqr {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double mean_of(Complex beta, Quadrature q) { return q == Quadrature::x ? beta.real() : beta.imag(); }

// Integral of sqrt(2/pi) exp(-2 (v - c)^2) from -inf to t.
double gaussian_cdf(double t, double c) {
  if (t == kInf) return 1.0;
  if (t == -kInf) return 0.0;
  return 0.5 * std::erfc(-std::numbers::sqrt2 * (t - c));
}

void require_window_dimension(int d, const char* what) {
  if (d < 2 || d > 4) throw std::invalid_argument(std::string(what) + ": homodyne windows exist only for d in {2, 3, 4}");
}

}  // namespace

double quadrature_pdf(Complex beta, Quadrature q, double value) {
  const double t = value - mean_of(beta, q);
  return std::sqrt(2.0 / std::numbers::pi) * std::exp(-2.0 * t * t);
}

double window_probability(Complex beta, Quadrature q, const Interval& w) {
  const double c = mean_of(beta, q);
  if (w.upper <= w.lower) return 0.0;
  // Evaluate in the tail that keeps erfc away from cancellation.
  if (w.lower > c) return gaussian_cdf(2.0 * c - w.lower, c) - gaussian_cdf(2.0 * c - w.upper, c);
  return gaussian_cdf(w.upper, c) - gaussian_cdf(w.lower, c);
}

Complex quadrature_wavefunction(Complex beta, Quadrature q, double value) {
  const double re = beta.real();
  const double im = beta.imag();
  const double amp = std::pow(2.0 / std::numbers::pi, 0.25);
  if (q == Quadrature::x) {
    const double t = value - re;
    return amp * std::exp(Complex{-t * t, 2.0 * im * value - re * im});
  }
  const double t = value - im;
  return amp * std::exp(Complex{-t * t, -2.0 * re * value + re * im});
}

WindowSet window_geometry(int d, double alpha, double gamma, double delta_frac) {
  require_window_dimension(d, "window_geometry");
  if (!(delta_frac > 0.0 && delta_frac <= 1.0)) throw std::invalid_argument("window_geometry: delta_frac must lie in (0, 1]");
  if (!(alpha > 0.0)) throw std::invalid_argument("window_geometry: alpha must be > 0");
  if (!(gamma > 0.0 && gamma <= 1.0)) throw std::invalid_argument("window_geometry: gamma must lie in (0, 1]");
  const double s = std::sqrt(gamma) * alpha;
  WindowSet w{};
  if (d == 3) {
    const double h = std::sqrt(3.0) / 2.0 * s;
    w.quadrature = Quadrature::p;
    w.delta_max = h / 2.0;
    w.delta = delta_frac * w.delta_max;
    w.centers = {0.0, h, -h};
    w.bounds = {{-w.delta, w.delta}, {h - w.delta, kInf}, {-kInf, -h + w.delta}};
    w.dominant_ring_index = {0, 1, 2};
  } else {
    // d = 4 shares the qubit layout; the +-i components sit at x = 0 and
    // are never accepted.
    w.quadrature = Quadrature::x;
    w.delta_max = s;
    w.delta = delta_frac * w.delta_max;
    w.centers = {s, -s};
    w.bounds = {{s - w.delta, kInf}, {-kInf, -s + w.delta}};
    w.dominant_ring_index = {0, d / 2};
  }
  return w;
}

DetectionReport homodyne_report(int d, double alpha, const ChannelParams& ch, double delta_frac,
                                double quadrature_tol) {
  require_window_dimension(d, "homodyne_report");
  const double gamma = ch.transmittance();
  WindowSet windows = window_geometry(d, alpha, gamma, delta_frac);
  const RingSpec signal(d, std::sqrt(gamma) * alpha);
  const double lead = loss_mixture_weights(d, alpha, ch).fidelity();

  DetectionReport r{};
  double total = 0.0;
  double weighted = 0.0;
  for (std::size_t i = 0; i < windows.bounds.size(); ++i) {
    double p = 0.0;
    for (int k = 0; k < d; ++k) p += window_probability(signal.point(k), windows.quadrature, windows.bounds[i]);
    p /= d;
    const double dom = window_probability(signal.point(windows.dominant_ring_index[i]), windows.quadrature,
                                          windows.bounds[i]);
    const double f = p > 0.0 ? std::clamp(lead * dom / (d * p), 0.0, 1.0) : 0.0;
    r.window_probability.push_back(p);
    r.window_fidelity.push_back(f);
    total += p;
    weighted += p * f;
  }
  r.success_probability = std::min(total, 1.0);
  r.average_fidelity = total > 0.0 ? weighted / total : 0.0;
  if (d == 3) {
    double bound = 0.0;
    for (int i = 0; i < 3; ++i) bound = std::max(bound, offdiag_weight(d, alpha, ch, delta_frac, i, quadrature_tol));
    r.offdiag_bound = bound;
  }
  r.windows = std::move(windows);
  return r;
}

Complex cross_window_integral(Complex a, Complex b, Quadrature q, const Interval& w, double tol) {
  using boost::math::quadrature::gauss_kronrod;
  const double ca = mean_of(a, q);
  const double cb = mean_of(b, q);
  const double mid = 0.5 * (ca + cb);
  // |psi_a psi_b^*| = sqrt(2/pi) exp(-(ca - cb)^2 / 2) exp(-2 (v - mid)^2); outside
  // mid +- 8 its mass is below 1e-55, so clipping costs nothing measurable.
  constexpr double kHalfWidth = 8.0;
  const double lo = std::max(w.lower, mid - kHalfWidth);
  const double hi = std::min(w.upper, mid + kHalfWidth);
  if (hi <= lo) return {0.0, 0.0};
  const double gap = ca - cb;
  const double tail = std::exp(-0.5 * gap * gap) * std::erfc(std::numbers::sqrt2 * kHalfWidth);
  if (tail > tol) throw NumericalError("cross_window_integral: tail bound exceeds tolerance");

  // Fixed panels with the non-recursive 61-point Kronrod rule, halving the
  // panel width until the summed error estimate is below tolerance. The
  // recursive driver of the library returns inflated error estimates on
  // short windows, so it is not used here.
  auto f = [&](double v) { return quadrature_wavefunction(a, q, v) * std::conj(quadrature_wavefunction(b, q, v)); };
  for (double width = 0.5; width >= 1.0 / 64.0; width /= 2.0) {
    const int panels = std::max(1, static_cast<int>(std::ceil((hi - lo) / width)));
    const double step = (hi - lo) / panels;
    double re = 0.0;
    double im = 0.0;
    double err = 0.0;
    for (int i = 0; i < panels; ++i) {
      const double x0 = lo + i * step;
      const double x1 = i + 1 == panels ? hi : x0 + step;
      double e_re = 0.0;
      double e_im = 0.0;
      re += gauss_kronrod<double, 61>::integrate([&](double v) { return f(v).real(); }, x0, x1, 0, 0.0, &e_re);
      im += gauss_kronrod<double, 61>::integrate([&](double v) { return f(v).imag(); }, x0, x1, 0, 0.0, &e_im);
      err += e_re + e_im;
    }
    if (err + tail <= tol) return {re, im};
  }
  throw NumericalError("cross_window_integral: quadrature did not reach tolerance");
}

double offdiag_weight(int d, double alpha, const ChannelParams& ch, double delta_frac, int window, double tol) {
  if (d != 3) throw std::invalid_argument("offdiag_weight: defined for d = 3 only");
  const WindowSet ws = window_geometry(d, alpha, ch.transmittance(), delta_frac);
  if (window < 0 || window >= static_cast<int>(ws.bounds.size())) {
    throw std::invalid_argument("offdiag_weight: window index out of range");
  }
  const RingSpec signal(d, std::sqrt(ch.transmittance()) * alpha);
  double worst = 0.0;
  for (int k = 0; k < d; ++k) {
    for (int l = k + 1; l < d; ++l) {
      const Complex v = cross_window_integral(signal.point(k), signal.point(l), ws.quadrature, ws.bounds[window], tol);
      worst = std::max(worst, std::abs(v));
    }
  }
  return worst;
}

double usd_bound(int d, double alpha, double gamma) {
  if (d < 2) throw std::invalid_argument("usd_bound: d must be >= 2");
  if (!(alpha >= 0.0)) throw std::invalid_argument("usd_bound: alpha must be >= 0");
  if (!(gamma >= 0.0 && gamma <= 1.0)) throw std::invalid_argument("usd_bound: gamma must lie in [0, 1]");
  const auto n = norm_constants(RingSpec(d, std::sqrt(gamma) * alpha));
  const double lowest = *std::min_element(n.values.begin(), n.values.end());
  return std::clamp(lowest / d, 0.0, 1.0);
}

double usd_bound_direct(int d, double alpha, double gamma) {
  if (d < 2) throw std::invalid_argument("usd_bound_direct: d must be >= 2");
  const double x = gamma * alpha * alpha;
  double best = kInf;
  for (int r = 0; r < d; ++r) {
    Complex s{0.0, 0.0};
    for (int j = 0; j < d; ++j) {
      s += root_of_unity(d, -static_cast<long long>(j) * r) * std::exp(x * (root_of_unity(d, j) - 1.0));
    }
    if (std::abs(s.imag()) > 1e-10) throw NumericalError("usd_bound_direct: imaginary residue above 1e-10");
    best = std::min(best, s.real());
  }
  return std::clamp(best, 0.0, 1.0);
}

}  // namespace hqr
