#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "segspec/measure.hpp"
#include "segspec/spectra.hpp"
#include "segspec/tiling.hpp"

namespace segspec {

/// Line through the origin with unit direction u.
class ProjectionLine {
 public:
  ProjectionLine() = default;
  explicit ProjectionLine(Vec2 u);  // |u| = 1 within 1e-14

  static ProjectionLine along(Vec2 v);  // normalizes v
  static ProjectionLine from_angle(double theta);

  Vec2 u() const noexcept { return u_; }
  double angle() const;             // in [0, π)
  ProjectionLine canonical() const;  // same line, direction angle in [0, π)

 private:
  Vec2 u_{1.0, 0.0};
};

struct Atom {
  double position = 0.0;
  double mass = 0.0;
};

struct ProjectedMeasure {
  IntervalUnion density;  // piecewise-constant density in the u-coordinate
  std::vector<Atom> atoms;
  std::vector<std::pair<double, double>> overlap_regions;
  bool injective = false;

  double total_mass() const;
};

ProjectedMeasure project(const SegmentMeasure& s, const ProjectionLine& line);

/// No atoms and all density weights within tol (relative) of each other.
bool constancy_check(const ProjectedMeasure& p, double tol = 1e-9);

struct ConstantLine {
  ProjectionLine line;
  bool injective = false;
  bool approximate = false;  // found by grid search rather than solved
};

/// Lines onto which s projects to a constant multiple of Lebesgue measure.
/// Two segments are solved exactly: constancy means u ⊥ c1ℓ1·d2 ∓ c2ℓ2·d1.
/// A single segment reports its own direction. Three or more segments are
/// located by an angular grid plus Brent refinement. By default only
/// injective lines are kept; an empty result means no such line exists.
std::vector<ConstantLine> find_constant_projection_lines(const SegmentMeasure& s, int angular_grid = 360,
                                                         bool injective_only = true);

struct LineSpectrumResult {
  std::optional<PeriodicLineSet> candidate;
  // "constructed", "support-does-not-tile", "support-not-commensurable",
  // "tiling-undecided" or "search-exhausted".
  std::string reason;

  IntervalUnion normalized_support;  // support rescaled so the shortest interval has length 1
  double scale = 0.0;                // support length unit used for the rescaling
  std::optional<TilingDecision> tiling;

  // In cell units the spectrum is S + Z with S = cell_spectrum ⊂ [0, 1).
  std::vector<Rational> cell_spectrum;
  std::optional<TilingIdentityReport> identity;  // level |A| on S + Z
};

inline constexpr std::int64_t kDefaultSearchDenominator = 8;

/// Builds Λu ⊂ L from a spectrum Λ of the projected support.
/// Throws Error{NotInjective} or Error{NotConstant} when the preconditions fail.
LineSpectrumResult construct_line_spectrum(const SegmentMeasure& s, const ProjectionLine& line,
                                           std::int64_t search_denominator = kDefaultSearchDenominator);

}  // namespace segspec
