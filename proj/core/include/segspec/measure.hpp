#pragma once

#include <complex>
#include <vector>

#include "segspec/scalar.hpp"

namespace segspec {

using Complex = std::complex<double>;

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
  friend bool operator==(const Vec2&, const Vec2&) = default;
};

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
double norm(Vec2 a);

/// A frequency λ = (λ1, λ2).
struct FrequencyPoint {
  double l1 = 0.0;
  double l2 = 0.0;

  friend FrequencyPoint operator-(FrequencyPoint a, FrequencyPoint b) {
    return {a.l1 - b.l1, a.l2 - b.l2};
  }
  friend bool operator==(const FrequencyPoint&, const FrequencyPoint&) = default;
};

/// sin(πx)/(πx) with sinc(0) = 1. The argument is reduced modulo integers
/// before taking the sine, so sinc(n) is exactly 0 for nonzero integer n.
double sinc(double x);

/// d/dx sinc(x).
double sinc_derivative(double x);

struct Segment {
  Vec2 a;
  Vec2 b;
  double density = 1.0;  // mass per unit length

  double length() const { return norm(b - a); }
  double mass() const { return density * length(); }
};

/// Weighted finite union of planar segments whose pairwise intersections
/// have zero length.
class SegmentMeasure {
 public:
  explicit SegmentMeasure(std::vector<Segment> segments);

  const std::vector<Segment>& segments() const noexcept { return segments_; }
  double total_mass() const;

 private:
  std::vector<Segment> segments_;
};

/// ρ = μ×δ0 + δ0×μ with μ one-half Lebesgue measure on [t, t+1].
class SymmetricAdditiveMeasure {
 public:
  explicit SymmetricAdditiveMeasure(Scalar t);

  const Scalar& t() const noexcept { return t_; }
  double t_value() const noexcept { return t_double_; }

  /// 2t + 1, carried exactly or at 128 bits.
  const Scalar& scale() const noexcept { return scale_; }
  double scale_value() const noexcept { return scale_double_; }

  /// t = -1/2: the two segments cross at their midpoints.
  bool is_plus_space() const noexcept;

  /// Throws Error{PlusSpace} tagged with the calling module.
  void require_not_plus_space(const char* module) const;

  /// Horizontal segment (t,0)-(t+1,0) followed by vertical (0,t)-(0,t+1),
  /// each with density 1/2.
  SegmentMeasure to_segments() const;

 private:
  Scalar t_;
  Scalar scale_;
  double t_double_;
  double scale_double_;
};

/// Transform of (1/2)·Lebesgue on [t, t+1] with ĝ(ξ) = ∫ e^{-2πiξx} dg(x).
Complex mu_hat(double t, double xi);
inline Complex mu_hat(const Scalar& t, double xi) { return mu_hat(t.to_double(), xi); }

Complex rho_hat(const SymmetricAdditiveMeasure& m, FrequencyPoint lambda);

Complex segment_measure_hat(const SegmentMeasure& m, FrequencyPoint lambda);

}  // namespace segspec
