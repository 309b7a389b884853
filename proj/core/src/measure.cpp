#include "segspec/measure.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "segspec/error.hpp"

namespace segspec {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSeriesCutoff = 1e-4;

// sin(πx) with exact zeros at the integers.
double sin_pi(double x) {
  const double n = std::nearbyint(x);
  const double r = x - n;
  const double s = std::sin(kPi * r);
  return std::fmod(n, 2.0) == 0.0 ? s : -s;
}

double cos_pi(double x) {
  const double n = std::nearbyint(x);
  const double r = x - n;
  const double c = std::cos(kPi * r);
  return std::fmod(n, 2.0) == 0.0 ? c : -c;
}

// e^{-2πi a} with a reduced to [-1/2, 1/2] first.
Complex phase(double a) {
  const double r = a - std::nearbyint(a);
  return {std::cos(2.0 * kPi * r), -std::sin(2.0 * kPi * r)};
}

}  // namespace

double norm(Vec2 a) { return std::hypot(a.x, a.y); }

double sinc(double x) {
  if (std::fabs(x) < kSeriesCutoff) {
    const double px2 = (kPi * x) * (kPi * x);
    return 1.0 - px2 / 6.0 + px2 * px2 / 120.0;
  }
  return sin_pi(x) / (kPi * x);
}

double sinc_derivative(double x) {
  if (std::fabs(x) < kSeriesCutoff) {
    const double p2 = kPi * kPi;
    return -p2 * x / 3.0 + p2 * p2 * x * x * x / 30.0;
  }
  return (cos_pi(x) * kPi * x - sin_pi(x)) / (kPi * x * x);
}

SegmentMeasure::SegmentMeasure(std::vector<Segment> segments) : segments_(std::move(segments)) {
  if (segments_.empty()) {
    throw Error("measure-core", ErrorCode::InvalidArgument, "segment measure needs at least one segment");
  }
  for (const auto& s : segments_) {
    if (!std::isfinite(s.a.x) || !std::isfinite(s.a.y) || !std::isfinite(s.b.x) || !std::isfinite(s.b.y)) {
      throw Error("measure-core", ErrorCode::InvalidArgument, "segment endpoints must be finite");
    }
    if (!(s.length() > 0.0)) {
      throw Error("measure-core", ErrorCode::InvalidArgument, "segment has zero length");
    }
    if (!(s.density > 0.0) || !std::isfinite(s.density)) {
      throw Error("measure-core", ErrorCode::InvalidArgument, "segment density must be positive");
    }
  }
  // Collinear segments may touch but not overlap along a positive length.
  for (std::size_t i = 0; i < segments_.size(); ++i) {
    for (std::size_t j = i + 1; j < segments_.size(); ++j) {
      const Segment& p = segments_[i];
      const Segment& q = segments_[j];
      const Vec2 d = p.b - p.a;
      const double len = p.length();
      const double scale = std::max({len, q.length(), 1.0});
      const double eps = 1e-12 * scale;
      if (std::fabs(cross(d, q.a - p.a)) / len > eps || std::fabs(cross(d, q.b - p.a)) / len > eps) continue;
      const double s0 = dot(q.a - p.a, d) / len;
      const double s1 = dot(q.b - p.a, d) / len;
      const double lo = std::max(0.0, std::min(s0, s1));
      const double hi = std::min(len, std::max(s0, s1));
      if (hi - lo > eps) {
        throw Error("measure-core", ErrorCode::InvalidArgument,
                    "segments " + std::to_string(i) + " and " + std::to_string(j) + " overlap");
      }
    }
  }
}

double SegmentMeasure::total_mass() const {
  double total = 0.0;
  for (const auto& s : segments_) total += s.mass();
  return total;
}

SymmetricAdditiveMeasure::SymmetricAdditiveMeasure(Scalar t)
    : t_(std::move(t)),
      scale_(Scalar(2) * t_ + Scalar(1)),
      t_double_(t_.to_double()),
      scale_double_(scale_.to_double()) {}

bool SymmetricAdditiveMeasure::is_plus_space() const noexcept {
  if (scale_.is_exact()) return scale_.rational() == 0;
  return scale_.to_real() == 0;
}

void SymmetricAdditiveMeasure::require_not_plus_space(const char* module) const {
  if (is_plus_space()) {
    throw Error(module, ErrorCode::PlusSpace,
                "t = -1/2 (plus space) is not supported by spectral analysis operations");
  }
}

SegmentMeasure SymmetricAdditiveMeasure::to_segments() const {
  const double t = t_double_;
  return SegmentMeasure({
      Segment{{t, 0.0}, {t + 1.0, 0.0}, 0.5},
      Segment{{0.0, t}, {0.0, t + 1.0}, 0.5},
  });
}

Complex mu_hat(double t, double xi) {
  // The midpoint phase xi*(t + 1/2) is reduced mod 1 inside phase().
  return 0.5 * sinc(xi) * phase(xi * (t + 0.5));
}

Complex rho_hat(const SymmetricAdditiveMeasure& m, FrequencyPoint lambda) {
  if (lambda.l1 == 0.0 && lambda.l2 == 0.0) return {1.0, 0.0};
  const double t = m.t_value();
  return mu_hat(t, lambda.l1) + mu_hat(t, lambda.l2);
}

Complex segment_measure_hat(const SegmentMeasure& m, FrequencyPoint lambda) {
  Complex total{0.0, 0.0};
  for (const auto& s : m.segments()) {
    const Vec2 mid = 0.5 * (s.a + s.b);
    const Vec2 d = s.b - s.a;
    const double proj_mid = lambda.l1 * mid.x + lambda.l2 * mid.y;
    const double proj_len = lambda.l1 * d.x + lambda.l2 * d.y;
    total += s.mass() * sinc(proj_len) * phase(proj_mid);
  }
  return total;
}

}  // namespace segspec
