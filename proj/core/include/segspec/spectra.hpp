#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "segspec/measure.hpp"
#include "segspec/zero_set.hpp"

namespace segspec {

struct SpectrumPoint {
  FrequencyPoint at;
  // Exact coordinates when known; both present or both absent.
  std::optional<Rational> exact_l1;
  std::optional<Rational> exact_l2;
  std::optional<std::int64_t> line;  // k(λ) recorded at construction

  bool is_exact() const { return exact_l1.has_value() && exact_l2.has_value(); }
  static SpectrumPoint exact(const Rational& l1, const Rational& l2);
};

struct WindowSet {
  std::vector<SpectrumPoint> points;
};

/// {(o + n·period)·direction : o ∈ offsets, n ∈ Z}
struct PeriodicLineSet {
  Vec2 direction;
  double period = 1.0;
  std::vector<double> offsets;
};

using SpectrumCandidate = std::variant<WindowSet, PeriodicLineSet>;

/// Origin present, points distinct, offsets strictly increasing in [0, period)
/// starting at 0, |direction| = 1. Throws Error{InvalidArgument|EmptyCandidate}.
void validate(const SpectrumCandidate& c);

/// Points with max(|λ1|, |λ2|) <= window, sorted by (|λ1|, λ1, λ2).
std::vector<SpectrumPoint> enumerate(const SpectrumCandidate& c, double window);

struct OrthogonalityReport {
  bool ok = false;
  std::vector<std::pair<FrequencyPoint, FrequencyPoint>> violations;
  std::size_t point_count = 0;
  std::size_t pairs_checked = 0;
  double max_abs_rho_hat = 0.0;  // over all differences of distinct points
  double tol = 0.0;
  double window = 0.0;
};

/// Every difference of two enumerated points must lie in Z(ρ).
OrthogonalityReport verify_orthogonal(const SymmetricAdditiveMeasure& m, const SpectrumCandidate& c, double window,
                                      double tol = kMembershipTol);

enum class PackingMode {
  lines,     // roots on the lines of H2
  integers,  // points of Z^2
};

struct PackingOptions {
  PackingMode mode = PackingMode::lines;
  // Candidates satisfy |λ1| <= window and |λ2| <= sector_slope·|λ1| + sector_offset.
  double sector_slope = 2.0;
  double sector_offset = 1.0;
  double tol = kMembershipTol;
};

/// Greedy orthogonal packing from {(0,0)}: candidates are taken in
/// (|λ1|, λ1, λ2) order and kept when orthogonal to everything kept so far.
/// Root grids are anchored to multiples of step, so the result for a window
/// is a prefix of the result for any larger window.
WindowSet greedy_pack(const SymmetricAdditiveMeasure& m, double window, double step,
                      const PackingOptions& options = {});

/// Candidate points the packing scans, in scan order (origin excluded).
std::vector<SpectrumPoint> packing_candidates(const SymmetricAdditiveMeasure& m, double window, double step,
                                              const PackingOptions& options = {});

struct PackingStats {
  std::optional<double> k_observed;          // absent when no off-axis nonzero point exists
  std::vector<FrequencyPoint> axis_points;   // nonzero points with λ1 = 0 or λ2 = 0
  std::vector<double> gaps;                  // successive differences of sorted λ1
  std::map<std::int64_t, std::size_t> per_line_counts;
  std::size_t off_h2 = 0;                    // points classify() does not place in H2
  std::size_t axis_multiplicity_first = 0;   // most points sharing a λ1
  std::size_t axis_multiplicity_second = 0;  // most points sharing a λ2
};

PackingStats packing_stats(const SymmetricAdditiveMeasure& m, const WindowSet& c, double tol = kMembershipTol);

}  // namespace segspec
