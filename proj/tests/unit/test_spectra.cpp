#include <gtest/gtest.h>

#include <cmath>

#include "segspec/error.hpp"
#include "segspec/spectra.hpp"

using namespace segspec;

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

PeriodicLineSet antidiagonal() { return PeriodicLineSet{{kInvSqrt2, -kInvSqrt2}, kInvSqrt2, {0.0}}; }

WindowSet window_of(std::initializer_list<FrequencyPoint> pts) {
  WindowSet w;
  for (const auto& p : pts) w.points.push_back(SpectrumPoint{p});
  return w;
}

}  // namespace

TEST(Validate, RejectsMalformedCandidates) {
  EXPECT_NO_THROW(validate(antidiagonal()));
  EXPECT_NO_THROW(validate(window_of({{0, 0}, {1, -1}})));
  try {
    validate(WindowSet{});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::EmptyCandidate);
  }
  EXPECT_THROW(validate(window_of({{1, -1}})), Error);
  EXPECT_THROW(validate(window_of({{0, 0}, {1, 1}, {1, 1}})), Error);
  EXPECT_THROW(validate(PeriodicLineSet{{1.0, 1.0}, 1.0, {0.0}}), Error);
  EXPECT_THROW(validate(PeriodicLineSet{{1.0, 0.0}, 1.0, {0.5}}), Error);
  EXPECT_THROW(validate(PeriodicLineSet{{1.0, 0.0}, 1.0, {0.0, 1.0}}), Error);
  EXPECT_THROW(validate(PeriodicLineSet{{1.0, 0.0}, 1.0, {0.0, 0.5, 0.25}}), Error);
  EXPECT_THROW(validate(PeriodicLineSet{{1.0, 0.0}, 0.0, {0.0}}), Error);
}

TEST(Enumerate, AntidiagonalWindow) {
  const auto pts = enumerate(antidiagonal(), 2.0);
  ASSERT_EQ(pts.size(), 9u);
  EXPECT_EQ(pts[0].at, (FrequencyPoint{0.0, 0.0}));
  for (std::size_t i = 1; i < pts.size(); ++i) {
    EXPECT_LE(std::fabs(pts[i - 1].at.l1), std::fabs(pts[i].at.l1) + 1e-15);
    EXPECT_NEAR(pts[i].at.l1, -pts[i].at.l2, 1e-15);
    EXPECT_NEAR(2.0 * pts[i].at.l1, std::nearbyint(2.0 * pts[i].at.l1), 1e-14);
  }
}

TEST(Verify, ReferenceSpectrumIsOrthogonal) {
  const SymmetricAdditiveMeasure m(Scalar(0));
  const auto r = verify_orthogonal(m, antidiagonal(), 20.0);
  EXPECT_TRUE(r.ok);
  EXPECT_TRUE(r.violations.empty());
  EXPECT_EQ(r.point_count, 81u);
  EXPECT_EQ(r.pairs_checked, 81u * 80u / 2u);
  EXPECT_LE(r.max_abs_rho_hat, 1e-12);
}

TEST(Verify, ReportsViolatingPair) {
  const SymmetricAdditiveMeasure m(Scalar(0));
  const auto r = verify_orthogonal(m, window_of({{0, 0}, {0.3, -0.3}}), 1.0);
  EXPECT_FALSE(r.ok);
  ASSERT_EQ(r.violations.size(), 1u);
  const auto d = r.violations[0].second - r.violations[0].first;
  EXPECT_NEAR(std::fabs(d.l1), 0.3, 1e-15);
  EXPECT_GT(r.max_abs_rho_hat, 0.1);
}

TEST(Verify, IntegerLatticeIsNotOrthogonalForRho) {
  // (1,0) - (0,0) gives ρ̂ = 1/2.
  const SymmetricAdditiveMeasure m(Scalar::ratio(1, 3));
  EXPECT_FALSE(verify_orthogonal(m, window_of({{0, 0}, {1, 0}}), 2.0).ok);
  EXPECT_TRUE(verify_orthogonal(m, window_of({{0, 0}, {1, 2}, {2, 3}}), 4.0).ok);
}

TEST(Verify, PlusSpaceRejected) {
  const SymmetricAdditiveMeasure m(Scalar::ratio(-1, 2));
  EXPECT_THROW((void)verify_orthogonal(m, antidiagonal(), 2.0), Error);
  EXPECT_THROW((void)greedy_pack(m, 2.0, 0.05), Error);
}

TEST(Greedy, ReferenceMeasureRecoversAntidiagonal) {
  const SymmetricAdditiveMeasure m(Scalar(0));
  const WindowSet w = greedy_pack(m, 3.0, 0.05);
  ASSERT_EQ(w.points.size(), 13u);
  for (const auto& p : w.points) {
    EXPECT_EQ(p.at.l1, -p.at.l2);
    EXPECT_EQ(2.0 * p.at.l1, std::nearbyint(2.0 * p.at.l1));
    // Integer roots carry exact coordinates.
    if (p.at.l1 == std::nearbyint(p.at.l1)) {
      ASSERT_TRUE(p.is_exact());
      EXPECT_EQ(*p.exact_l1, -*p.exact_l2);
    }
  }
  const SymmetricAdditiveMeasure ref(Scalar(0));
  EXPECT_TRUE(verify_orthogonal(ref, w, 3.0).ok);
}

TEST(Greedy, LargerWindowExtendsSmallerOne) {
  for (const char* t : {"0", "1/2", "sqrt(2)"}) {
    const SymmetricAdditiveMeasure m(Scalar::parse(t));
    const auto small = greedy_pack(m, 2.0, 0.05).points;
    const auto large = greedy_pack(m, 3.5, 0.05).points;
    ASSERT_LE(small.size(), large.size()) << t;
    for (std::size_t i = 0; i < small.size(); ++i) {
      EXPECT_EQ(small[i].at, large[i].at) << t << " i=" << i;
    }
  }
}

TEST(Greedy, OutputIsMutuallyOrthogonal) {
  for (const char* t : {"1/4", "1", "-1/3", "sqrt(3)-1"}) {
    const SymmetricAdditiveMeasure m(Scalar::parse(t));
    const WindowSet w = greedy_pack(m, 3.0, 0.05);
    const auto r = verify_orthogonal(m, w, 1e9);
    EXPECT_TRUE(r.ok) << t;
  }
}

TEST(Greedy, IntegerModeStaysOnLattice) {
  const SymmetricAdditiveMeasure m(Scalar::ratio(1, 2));
  PackingOptions o;
  o.mode = PackingMode::integers;
  const WindowSet w = greedy_pack(m, 4.0, 0.05, o);
  for (const auto& p : w.points) {
    EXPECT_EQ(p.at.l1, std::nearbyint(p.at.l1));
    EXPECT_EQ(p.at.l2, std::nearbyint(p.at.l2));
  }
  EXPECT_TRUE(verify_orthogonal(m, w, 1e9).ok);
}

TEST(Greedy, CandidatesRespectSector) {
  const SymmetricAdditiveMeasure m(Scalar::ratio(1, 3));
  for (const auto& p : packing_candidates(m, 2.0, 0.05)) {
    EXPECT_LE(std::fabs(p.at.l1), 2.0 + 1e-12);
    EXPECT_LE(std::fabs(p.at.l2), 2.0 * std::fabs(p.at.l1) + 1.0 + 1e-9);
    EXPECT_FALSE(p.at.l1 == 0.0 && p.at.l2 == 0.0);
  }
}

TEST(Stats, SectorConstantExamples) {
  const SymmetricAdditiveMeasure m(Scalar(0));
  const auto a = packing_stats(m, window_of({{0, 0}, {1, -1}, {2, -2}}));
  ASSERT_TRUE(a.k_observed.has_value());
  EXPECT_DOUBLE_EQ(*a.k_observed, 1.0);
  const auto b = packing_stats(m, window_of({{0, 0}, {1, 2}}));
  EXPECT_DOUBLE_EQ(*b.k_observed, 2.0);
  const auto c = packing_stats(m, window_of({{0, 0}, {0, 1}}));
  EXPECT_FALSE(c.k_observed.has_value());
  EXPECT_EQ(c.axis_points.size(), 1u);
}

TEST(Stats, ReferencePackingHasSimpleAxes) {
  const SymmetricAdditiveMeasure m(Scalar(0));
  const auto st = packing_stats(m, greedy_pack(m, 3.0, 0.05));
  EXPECT_EQ(st.axis_multiplicity_first, 1u);
  EXPECT_EQ(st.axis_multiplicity_second, 1u);
  EXPECT_EQ(st.off_h2, 0u);
  ASSERT_TRUE(st.k_observed.has_value());
  EXPECT_DOUBLE_EQ(*st.k_observed, 1.0);
  for (double g : st.gaps) EXPECT_NEAR(g, 0.5, 1e-15);
  std::size_t total = 0;
  for (const auto& [k, n] : st.per_line_counts) total += n;
  EXPECT_EQ(total, 13u);
}
