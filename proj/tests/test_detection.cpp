#include "hqr/detection.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>

using namespace hqr;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

TEST(Quadrature, WholeLineProbabilityIsOne) {
  EXPECT_NEAR(window_probability({0.4, -1.0}, Quadrature::x, {-kInf, kInf}), 1.0, 1e-15);
  EXPECT_NEAR(window_probability({0.4, -1.0}, Quadrature::p, {-1.0, kInf}), 0.5, 1e-15);
  EXPECT_EQ(window_probability({0.0, 0.0}, Quadrature::x, {1.0, 1.0}), 0.0);
}

TEST(Quadrature, FarTailKeepsPrecision) {
  // 0.5 erfc(2 sqrt 2 * 3) ~ 1.2e-33 would cancel to zero without reflection.
  const double p = window_probability({0.0, 0.0}, Quadrature::x, {6.0, kInf});
  EXPECT_GT(p, 0.0);
  EXPECT_NEAR(p / (0.5 * std::erfc(std::sqrt(2.0) * 6.0)), 1.0, 1e-12);
}

TEST(Quadrature, WavefunctionModulusMatchesPdf) {
  const Complex beta{0.7, -0.3};
  for (double v : {-1.0, 0.2, 0.9}) {
    for (auto q : {Quadrature::x, Quadrature::p}) {
      EXPECT_NEAR(std::norm(quadrature_wavefunction(beta, q, v)), quadrature_pdf(beta, q, v), 1e-14);
    }
  }
}

TEST(Quadrature, WholeLineIntegralIsOverlap) {
  const Complex a{0.5, 0.8};
  const Complex b{-0.6, 0.1};
  for (auto q : {Quadrature::x, Quadrature::p}) {
    const Complex v = cross_window_integral(a, b, q, {-kInf, kInf});
    EXPECT_NEAR(std::abs(v - overlap(b, a)), 0.0, 1e-9);
  }
}

TEST(Windows, QutritGeometry) {
  const auto w = window_geometry(3, 1.0, 0.8, 0.2);
  const double h = std::sqrt(3.0) / 2.0 * std::sqrt(0.8);
  EXPECT_EQ(w.quadrature, Quadrature::p);
  EXPECT_NEAR(w.delta_max, h / 2.0, 1e-15);
  EXPECT_NEAR(w.delta, 0.2 * h / 2.0, 1e-15);
  ASSERT_EQ(w.bounds.size(), 3u);
  EXPECT_LT(w.bounds[0].upper, w.bounds[1].lower);
  EXPECT_LT(w.bounds[2].upper, w.bounds[0].lower);
}

TEST(Windows, QuartLeavesImaginaryPointsUnassigned) {
  const auto w = window_geometry(4, 1.0, 1.0, 0.5);
  EXPECT_EQ(w.quadrature, Quadrature::x);
  ASSERT_EQ(w.bounds.size(), 2u);
  EXPECT_EQ(w.dominant_ring_index, (std::vector<int>{0, 2}));
  for (const auto& b : w.bounds) EXPECT_FALSE(b.lower <= 0.0 && 0.0 <= b.upper);
}

TEST(Windows, RejectsOutOfRange) {
  EXPECT_THROW(window_geometry(5, 1.0, 1.0, 0.2), std::invalid_argument);
  EXPECT_THROW(window_geometry(3, 1.0, 1.0, 0.0), std::invalid_argument);
  EXPECT_THROW(window_geometry(3, 1.0, 1.0, 1.1), std::invalid_argument);
  EXPECT_THROW(window_geometry(3, 0.0, 1.0, 0.2), std::invalid_argument);
}

// Frozen regression values for the qutrit operating point (L0 = 5 km,
// alpha = 1, delta = 0.2 delta_max).
TEST(Homodyne, QutritOperatingPoint) {
  const auto r = homodyne_report(3, 1.0, ChannelParams(5.0), 0.2);
  EXPECT_NEAR(r.success_probability, 0.496076, 2e-6);
  EXPECT_NEAR(r.average_fidelity, 0.684023, 2e-6);
  EXPECT_NEAR(r.average_fidelity, 0.7, 0.05);
  EXPECT_NEAR(r.window_probability[0], 0.0659831, 2e-7);
  ASSERT_TRUE(r.offdiag_bound.has_value());
  EXPECT_NEAR(*r.offdiag_bound, 0.161099, 2e-6);
}

TEST(Homodyne, QubitHasNoOffdiagBound) {
  const auto r = homodyne_report(2, 1.0, ChannelParams(5.0), 0.2);
  EXPECT_FALSE(r.offdiag_bound.has_value());
  EXPECT_GT(r.success_probability, 0.0);
  EXPECT_LE(r.average_fidelity, 1.0);
}

TEST(Homodyne, WiderWindowsTradeFidelityForProbability) {
  const ChannelParams ch(5.0);
  const auto narrow = homodyne_report(3, 1.0, ch, 0.1);
  const auto wide = homodyne_report(3, 1.0, ch, 0.9);
  EXPECT_LT(narrow.success_probability, wide.success_probability);
  EXPECT_GT(narrow.average_fidelity, wide.average_fidelity);
}

TEST(Homodyne, OffdiagRatioOnCentralWindow) {
  const ChannelParams ch(5.0);
  const double off = offdiag_weight(3, 1.0, ch, 0.2, 0);
  EXPECT_NEAR(off, 0.0672763, 2e-7);
  EXPECT_THROW(offdiag_weight(3, 1.0, ch, 0.2, 3), std::invalid_argument);
  EXPECT_THROW(offdiag_weight(2, 1.0, ch, 0.2, 0), std::invalid_argument);
}

TEST(Homodyne, UnreachableToleranceIsNumericalError) {
  EXPECT_THROW(cross_window_integral({1.0, 0.0}, {-0.5, 0.8}, Quadrature::p, {-0.1, 0.1}, 1e-40), NumericalError);
}

TEST(Usd, TableValues) {
  EXPECT_NEAR(usd_bound(3, 1.2, std::exp(-5.0 / 22.0)), 0.642697, 1e-6);
  EXPECT_NEAR(usd_bound(3, 0.5, std::exp(-20.0 / 22.0)), 0.0137597, 1e-7);
}

TEST(Usd, DirectSumAgrees) {
  for (int d : {2, 3, 4, 6}) {
    for (double a : {0.3, 1.0, 2.2}) {
      EXPECT_NEAR(usd_bound(d, a, 0.7), usd_bound_direct(d, a, 0.7), 1e-12) << d << " " << a;
    }
  }
}

TEST(Usd, VacuumAndErrors) {
  EXPECT_EQ(usd_bound(3, 0.0, 1.0), 0.0);
  EXPECT_THROW(usd_bound(1, 1.0, 1.0), std::invalid_argument);
  EXPECT_THROW(usd_bound(3, 1.0, 1.5), std::invalid_argument);
}
