#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "oracles.hpp"
#include "segspec/error.hpp"
#include "segspec/zero_set.hpp"

using namespace segspec;

namespace {

std::vector<double> xs(const std::vector<LineRoot>& roots) {
  std::vector<double> out;
  for (const auto& r : roots) out.push_back(r.x);
  return out;
}

// Real profile of ρ̂ along line k, written out independently of the library.
double profile(double t, std::int64_t k, double x) {
  const double delta = static_cast<double>(k) / (2.0 * t + 1.0);
  auto s = [](double u) { return u == 0.0 ? 1.0 : std::sin(std::numbers::pi * u) / (std::numbers::pi * u); };
  return s(x) + ((k % 2 == 0) ? 1.0 : -1.0) * s(x + delta);
}

}  // namespace

TEST(IsZero, ReferencePoints) {
  const SymmetricAdditiveMeasure m(Scalar(0));
  EXPECT_TRUE(is_zero(m, {1.0, -1.0}));
  EXPECT_TRUE(is_zero(m, {0.5, -0.5}));
  EXPECT_TRUE(is_zero(m, {2.0, 3.0}));
  EXPECT_FALSE(is_zero(m, {1.0, 0.0}));
  EXPECT_FALSE(is_zero(m, {0.3, -0.3}));
  EXPECT_THROW((void)is_zero(m, {1.0, 1.0}, 0.0), Error);
}

TEST(Classify, ExactRationalMembership) {
  const SymmetricAdditiveMeasure m(Scalar::ratio(1, 4));
  const auto g = classify(m, Scalar(0), Scalar::ratio(2, 3));
  EXPECT_TRUE(g.exact);
  EXPECT_TRUE(g.in_h2);
  EXPECT_FALSE(g.in_h1);
  ASSERT_TRUE(g.k.has_value());
  EXPECT_EQ(*g.k, 1);
  EXPECT_EQ(g.residual, 0.0);

  const auto h = classify(m, Scalar(0), Scalar::ratio(2, 5));
  EXPECT_TRUE(h.exact);
  EXPECT_FALSE(h.in_h2);
  EXPECT_FALSE(h.k.has_value());
  EXPECT_NEAR(h.residual, 0.4, 1e-15);

  const auto i = classify(m, Scalar(3), Scalar(-1));
  EXPECT_TRUE(i.in_h1);
  EXPECT_TRUE(i.in_h2);
  EXPECT_EQ(*i.k, -6);
}

TEST(Classify, DoublePathUsesTolerance) {
  const SymmetricAdditiveMeasure m(Scalar::parse("sqrt(2)"));
  const double off = line_offset(m, 3);
  const auto g = classify(m, FrequencyPoint{0.7, 0.7 + off});
  EXPECT_TRUE(g.in_h2);
  EXPECT_EQ(*g.k, 3);
  EXPECT_FALSE(g.exact);
  EXPECT_FALSE(classify(m, FrequencyPoint{0.7, 0.7 + off + 1e-6}).in_h2);
}

TEST(Classify, PlusSpaceIsRejected) {
  const SymmetricAdditiveMeasure m(Scalar::ratio(-1, 2));
  try {
    (void)classify(m, FrequencyPoint{0.0, 1.0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::PlusSpace);
    EXPECT_EQ(e.module(), "zero-set");
  }
  EXPECT_THROW((void)line_roots(m, LineWindow{1, -1.0, 1.0}), Error);
  EXPECT_THROW((void)diagonal_zeros(m, -3.0, 3.0), Error);
}

TEST(LineRoots, FirstLineAtOrigin) {
  // Off the diagonal ρ̂(x, x+1) vanishes exactly where sinc(x) = sinc(x+1):
  // integers with x, x+1 both nonzero, and the midpoint -1/2.
  const SymmetricAdditiveMeasure m(Scalar(0));
  const auto roots = line_roots(m, LineWindow{1, -2.0, 1.0});
  const std::vector<double> expected{-2.0, -0.5, 1.0};
  ASSERT_EQ(roots.size(), expected.size());
  for (std::size_t i = 0; i < expected.size(); ++i) {
    EXPECT_NEAR(roots[i].x, expected[i], 1e-12);
    EXPECT_NEAR(roots[i].y, expected[i] + 1.0, 1e-12);
    EXPECT_LE(roots[i].abs_rho_hat, 1e-10);
    EXPECT_EQ(roots[i].k, 1);
  }
  // (-1, 0) and (0, 1) are not zeros: ρ̂ there is 1/2.
  EXPECT_NEAR(std::abs(rho_hat(m, {-1.0, 0.0})), 0.5, 1e-15);
  EXPECT_NEAR(std::abs(rho_hat(m, {0.0, 1.0})), 0.5, 1e-15);
}

TEST(LineRoots, IntegerRootsAreSnapped) {
  const SymmetricAdditiveMeasure m(Scalar(0));
  const auto roots = line_roots(m, LineWindow{2, -5.0, 5.0});
  for (const auto& r : roots) {
    if (std::fabs(r.x - std::nearbyint(r.x)) < 1e-6) EXPECT_EQ(r.x, std::nearbyint(r.x));
  }
}

TEST(DiagonalZeros, NonzeroIntegers) {
  const SymmetricAdditiveMeasure m(Scalar::ratio(1, 3));
  EXPECT_EQ(diagonal_zeros(m, -3.0, 3.0), (std::vector<std::int64_t>{-3, -2, -1, 1, 2, 3}));
  EXPECT_EQ(diagonal_zeros(m, 0.5, 2.5), (std::vector<std::int64_t>{1, 2}));
  const SymmetricAdditiveMeasure r(Scalar::parse("sqrt(3)"));
  EXPECT_EQ(diagonal_zeros(r, -2.2, 1.9), (std::vector<std::int64_t>{-2, -1, 1}));
}

TEST(LineRoots, SoundnessAndMembershipOnRandomLines) {
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> ut(-0.45, 3.0);
  for (int trial = 0; trial < 40; ++trial) {
    const double tv = ut(rng);
    const SymmetricAdditiveMeasure m(Scalar::from_double(tv));
    const std::int64_t k = static_cast<std::int64_t>(trial % 7) - 3;
    for (const auto& r : line_roots(m, LineWindow{k, -6.0, 6.0})) {
      EXPECT_LE(std::abs(rho_hat(m, r.point())), kMembershipTol);
      const auto c = classify(m, r.point());
      ASSERT_TRUE(c.in_h2);
      EXPECT_EQ(*c.k, k);
    }
  }
}

TEST(LineRoots, RefinedGridFindsNothingNew) {
  for (const char* t : {"0", "1/4", "sqrt(2)", "-1/3", "2"}) {
    const SymmetricAdditiveMeasure m(Scalar::parse(t));
    for (std::int64_t k = -4; k <= 4; ++k) {
      const auto coarse = xs(line_roots(m, LineWindow{k, -8.0, 8.0}, RootOptions{0.05}));
      const auto fine = xs(line_roots(m, LineWindow{k, -8.0, 8.0}, RootOptions{0.01}));
      ASSERT_EQ(coarse.size(), fine.size()) << t << " k=" << k;
      for (std::size_t i = 0; i < fine.size(); ++i) EXPECT_NEAR(coarse[i], fine[i], 1e-9);
    }
  }
}

TEST(LineRoots, MatchesSignChangeOracle) {
  // Count sign changes of the real line profile on a fine shifted grid; each
  // must match a library root and every transversal library root must
  // correspond to one.
  for (const double t : {0.0, 0.25, 0.6180339887, 1.7}) {
    const SymmetricAdditiveMeasure m(Scalar::from_double(t));
    for (std::int64_t k = 1; k <= 5; ++k) {
      const auto roots = line_roots(m, LineWindow{k, -7.0, 7.0});
      std::vector<double> changes;
      const double h = 1e-3;
      double prev_x = -7.0 + h * 0.371;
      double prev = profile(t, k, prev_x);
      for (double x = prev_x + h; x < 7.0; x += h) {
        const double v = profile(t, k, x);
        if ((v < 0.0) != (prev < 0.0)) changes.push_back(0.5 * (x + prev_x));
        prev = v;
        prev_x = x;
      }
      std::size_t transversal = 0;
      for (const auto& r : roots) transversal += r.tangential ? 0 : 1;
      EXPECT_GE(roots.size(), changes.size()) << "t=" << t << " k=" << k;
      for (double c : changes) {
        bool matched = false;
        for (const auto& r : roots) matched = matched || std::fabs(r.x - c) <= h;
        EXPECT_TRUE(matched) << "t=" << t << " k=" << k << " x=" << c;
      }
      EXPECT_LE(changes.size(), transversal + 2 * (roots.size() - transversal));
    }
  }
}

TEST(LineRoots, GridMinimaOracleAgrees) {
  const SymmetricAdditiveMeasure m(Scalar::ratio(1, 5));
  const auto roots = line_roots(m, LineWindow{2, -4.0, 4.0});
  const auto minima = oracle::grid_minima([&](double x) { return profile(0.2, 2, x); }, -4.0, 4.0, 1e-4, 1e-3);
  for (const auto& r : roots) {
    bool near = false;
    for (double x : minima) near = near || std::fabs(x - r.x) < 2e-4;
    EXPECT_TRUE(near) << r.x;
  }
}

TEST(MaxLineIndex, ClosedForm) {
  const SymmetricAdditiveMeasure m(Scalar(1));
  EXPECT_EQ(max_line_index(m, 2.0, 2.0), 18);
  EXPECT_THROW((void)max_line_index(m, 0.0, 2.0), Error);
  EXPECT_THROW((void)max_line_index(m, 1.0, 0.5), Error);
}

TEST(LineRoots, CsvHeader) {
  const SymmetricAdditiveMeasure m(Scalar(0));
  std::ostringstream out;
  write_roots_csv(out, line_roots(m, LineWindow{1, -2.0, 1.0}));
  const std::string text = out.str();
  EXPECT_EQ(text.substr(0, text.find('\n')), "k,x,y,abs_rho_hat,tangential");
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 4);
}
