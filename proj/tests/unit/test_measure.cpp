#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "segspec/error.hpp"
#include "segspec/measure.hpp"

using namespace segspec;

namespace {

// Distance in units of the last place, per component.
double ulps(double a, double b) {
  if (a == b) return 0.0;
  const double scale = std::max({std::fabs(a), std::fabs(b), std::numeric_limits<double>::min()});
  return std::fabs(a - b) / (scale * std::numeric_limits<double>::epsilon());
}

}  // namespace

TEST(Sinc, MatchesSeriesAndVanishesOnIntegers) {
  EXPECT_EQ(sinc(0.0), 1.0);
  EXPECT_NEAR(sinc(0.5), static_cast<double>(oracle::sinc_series(0.5L)), 1e-16);
  EXPECT_NEAR(sinc(0.5), 2.0 / std::numbers::pi, 1e-16);
  for (int n = 1; n <= 50; ++n) {
    EXPECT_EQ(sinc(static_cast<double>(n)), 0.0);
    EXPECT_EQ(sinc(-static_cast<double>(n)), 0.0);
  }
  for (double x : {1e-9, 0.123, 1.75, -2.3, 3.5}) {
    EXPECT_NEAR(sinc(x), static_cast<double>(oracle::sinc_series(x)), 1e-14) << x;
  }
}

TEST(Sinc, DerivativeMatchesFiniteDifference) {
  for (double x : {0.0, 0.3, 1.0, -2.5, 7.25}) {
    const double h = 1e-6;
    const double fd = (sinc(x + h) - sinc(x - h)) / (2 * h);
    EXPECT_NEAR(sinc_derivative(x), fd, 1e-8) << x;
  }
}

TEST(MuHat, HalfFrequencyAtOrigin) {
  const Complex v = mu_hat(0.0, 0.5);
  EXPECT_NEAR(v.real(), 0.0, 1e-16);
  EXPECT_NEAR(v.imag(), -1.0 / std::numbers::pi, 1e-16);
  const Complex q = oracle::mu_hat_quadrature(0.0, 0.5);
  EXPECT_NEAR(std::abs(v - q), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(mu_hat(0.0, 0.0) - Complex(0.5, 0.0)), 0.0, 1e-16);
}

TEST(MuHat, AgreesWithQuadratureOracle) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> ut(-3.0, 3.0);
  std::uniform_real_distribution<double> ux(-20.0, 20.0);
  for (int i = 0; i < 200; ++i) {
    const double t = ut(rng);
    const double xi = ux(rng);
    EXPECT_LT(std::abs(mu_hat(t, xi) - oracle::mu_hat_quadrature(t, xi)), 1e-10) << t << ' ' << xi;
  }
}

TEST(RhoHat, ReferenceValues) {
  const SymmetricAdditiveMeasure m0(Scalar(0));
  EXPECT_NEAR(std::abs(rho_hat(m0, {0.0, 0.0}) - Complex(1.0, 0.0)), 0.0, 1e-16);
  EXPECT_NEAR(std::abs(rho_hat(m0, {1.0, 0.0}) - Complex(0.5, 0.0)), 0.0, 1e-16);
  EXPECT_EQ(std::abs(rho_hat(m0, {1.0, -1.0})), 0.0);
  for (int n = -6; n <= 6; ++n) {
    if (n == 0) continue;
    EXPECT_LT(std::abs(rho_hat(m0, {n / 2.0, -n / 2.0})), 1e-16) << n;
  }
  const SymmetricAdditiveMeasure m1(Scalar::ratio(1, 4));
  const Complex v = rho_hat(m1, {0.3, -0.7});
  const Complex w = oracle::mu_hat_quadrature(0.25, 0.3) + oracle::mu_hat_quadrature(0.25, -0.7);
  EXPECT_LT(std::abs(v - w), 1e-11);
}

TEST(RhoHat, MatchesSegmentMeasureOnRandomFrequencies) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-30.0, 30.0);
  for (const char* t : {"0", "1/3", "-1/4", "sqrt(2)", "5/2"}) {
    const SymmetricAdditiveMeasure m(Scalar::parse(t));
    const SegmentMeasure s = m.to_segments();
    for (int i = 0; i < 1000; ++i) {
      const FrequencyPoint p{u(rng), u(rng)};
      EXPECT_LT(std::abs(rho_hat(m, p) - segment_measure_hat(s, p)), 1e-13) << t;
    }
  }
}

TEST(RhoHat, ConjugateSymmetryAndBound) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-40.0, 40.0);
  const SymmetricAdditiveMeasure m(Scalar::ratio(2, 7));
  for (int i = 0; i < 1000; ++i) {
    const FrequencyPoint p{u(rng), u(rng)};
    const Complex a = rho_hat(m, p);
    const Complex b = rho_hat(m, {-p.l1, -p.l2});
    EXPECT_LE(ulps(a.real(), b.real()), 4.0);
    EXPECT_LE(ulps(a.imag(), -b.imag()), 4.0);
    EXPECT_LE(std::abs(a), 1.0 + 1e-15);
  }
}

TEST(SegmentMeasure, GeneralSegmentAgreesWithQuadrature) {
  const SegmentMeasure s({Segment{{0.0, 0.0}, {1.0, 2.0}, 0.7}, Segment{{2.0, -1.0}, {3.0, -1.0}, 1.5}});
  EXPECT_NEAR(s.total_mass(), 0.7 * std::sqrt(5.0) + 1.5, 1e-15);
  const FrequencyPoint p{0.8, -1.3};
  const double len0 = std::sqrt(5.0);
  const Complex q0 = oracle::simpson(
      [&](double u) {
        const double x = u, y = 2.0 * u;
        return 0.7 * len0 * std::polar(1.0, -2.0 * std::numbers::pi * (p.l1 * x + p.l2 * y));
      },
      0.0, 1.0);
  const Complex q1 = oracle::simpson(
      [&](double u) {
        return 1.5 * std::polar(1.0, -2.0 * std::numbers::pi * (p.l1 * (2.0 + u) + p.l2 * -1.0));
      },
      0.0, 1.0);
  EXPECT_LT(std::abs(segment_measure_hat(s, p) - (q0 + q1)), 1e-11);
}

TEST(SegmentMeasure, RejectsDegenerateInput) {
  EXPECT_THROW(SegmentMeasure({}), Error);
  EXPECT_THROW(SegmentMeasure({Segment{{0, 0}, {0, 0}, 1.0}}), Error);
  EXPECT_THROW(SegmentMeasure({Segment{{0, 0}, {1, 0}, -1.0}}), Error);
  EXPECT_THROW(SegmentMeasure({Segment{{0, 0}, {2, 0}, 1.0}, Segment{{1, 0}, {3, 0}, 1.0}}), Error);
}

TEST(SymmetricAdditiveMeasure, PlusSpaceIsFlagged) {
  const SymmetricAdditiveMeasure m(Scalar::ratio(-1, 2));
  EXPECT_TRUE(m.is_plus_space());
  try {
    m.require_not_plus_space("zero-set");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.qualified_code(), "zero-set/PlusSpaceError");
  }
  EXPECT_FALSE(SymmetricAdditiveMeasure(Scalar(0)).is_plus_space());
  EXPECT_EQ(SymmetricAdditiveMeasure(Scalar::ratio(1, 4)).scale().rational(), Rational(3, 2));
}
