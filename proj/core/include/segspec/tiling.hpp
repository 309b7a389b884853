#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "segspec/scalar.hpp"

namespace segspec {

struct WeightedInterval {
  Scalar left;
  Scalar right;
  double weight = 1.0;
};

/// Sorted, pairwise disjoint (up to endpoints) weighted intervals.
class IntervalUnion {
 public:
  IntervalUnion() = default;
  explicit IntervalUnion(std::vector<WeightedInterval> intervals);

  const std::vector<WeightedInterval>& intervals() const noexcept { return intervals_; }
  bool empty() const noexcept { return intervals_.empty(); }
  bool all_exact() const;
  double measure() const;       // total length
  double total_weight() const;  // Σ weight · length

 private:
  std::vector<WeightedInterval> intervals_;
};

/// {o + n·period : o ∈ offsets, n ∈ Z}
struct PeriodicPoints {
  double period = 1.0;
  std::vector<double> offsets;
};

using LineSample = std::variant<std::vector<double>, PeriodicPoints>;

struct TilingIdentityReport {
  double level = 0.0;
  double window = 0.0;
  std::vector<double> grid;
  std::vector<double> sums;
  std::vector<double> residuals;
  double max_residual = 0.0;
  double density_max = 0.0;       // most points of the sample in any unit interval
  double truncation_bound = 0.0;  // tail of Σ sinc² beyond the window
  double evaluation_slack = 0.0;  // floating-point allowance on the partial sums
  bool consistent = false;        // max_residual <= truncation_bound + evaluation_slack
};

/// Partial sums S(x) = Σ_{|λ - x| <= window} sinc²(x - λ) against a constant
/// level. The tail beyond the window is bounded by
/// 2·d_max·(1/window + 1/window²)/π², where d_max is measured from the data,
/// so "consistent" is always relative to a computable bound.
TilingIdentityReport tiling_identity_check(const LineSample& points, double level, std::span<const double> grid,
                                           double window);

/// Columns: x,S,residual
void write_identity_csv(std::ostream& out, const TilingIdentityReport& report);

enum class TilingStatus { tiles, does_not_tile, unknown };
std::string_view to_string(TilingStatus s) noexcept;

struct TilingComplement {
  std::vector<Rational> offsets;  // one period of translates
  Rational period;
  std::vector<std::int64_t> cell_offsets;
  std::int64_t period_cells = 0;
};

struct TilingDecision {
  TilingStatus status = TilingStatus::unknown;
  std::optional<TilingComplement> complement;
  std::optional<Rational> witness;  // over-covered point in the canonical left-to-right fill
  std::int64_t period_bound_used = 0;

  // How the decision was reached: "complement-found", "uniform-run-misalignment",
  // "coven-meyerowitz-T1", "coven-meyerowitz-T2", or "search-exhausted".
  std::string certificate;

  Rational origin;       // left end of the union
  Rational cell_length;  // coarsest grid carrying every endpoint
  std::vector<std::int64_t> cells;

  std::optional<bool> closed_form;  // two equal intervals only
  bool closed_form_agrees = true;
  std::int64_t search_nodes = 0;
};

inline constexpr std::int64_t kDefaultPeriodBound = 64;

/// Decides whether a finite union of intervals with rational endpoints tiles
/// the line by translation. Periods up to period_bound·(diam + 1) cells are
/// searched by depth-first fill of the leftmost uncovered cell.
TilingDecision tiles_line(const IntervalUnion& u, std::int64_t period_bound = kDefaultPeriodBound);

/// [0,L] ∪ [g+L, g+2L] tiles iff g/L is a nonnegative integer. Empty unless
/// the union is exactly two intervals of equal length.
std::optional<bool> two_interval_closed_form(const IntervalUnion& u);

struct GapComplexity {
  double quantum = 0.0;
  std::vector<double> representatives;
  std::vector<std::size_t> counts;
  std::size_t gap_count = 0;

  std::size_t distinct() const { return representatives.size(); }
};

GapComplexity gap_complexity(std::span<const double> sorted_points, double quantum);

struct PeriodDetection {
  std::optional<double> period;
  bool twice_period_integer = false;
  double span = 0.0;
  double quantum = 0.0;
};

/// Smallest T <= max_period with Λ + T = Λ on the overlap of the data span
/// with its shift, matched within quantum.
PeriodDetection detect_period(std::span<const double> sorted_points, double max_period, double quantum);

}  // namespace segspec
