#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "segspec/measure.hpp"

namespace segspec {

inline constexpr double kMembershipTol = 1e-10;
inline constexpr double kRootRefineTol = 1e-12;

/// Where a frequency sits relative to H1 = Z^2 and
/// H2 = {λ : (λ2 - λ1)(2t+1) ∈ Z}.
struct GroupMembership {
  bool in_h1 = false;
  bool in_h2 = false;
  std::optional<std::int64_t> k;  // line index, present iff in_h2
  double residual = 0.0;          // |(λ2 - λ1)(2t+1) - round(...)|
  bool exact = false;             // decided in exact arithmetic
};

/// Parameter range on the line λ2 - λ1 = k/(2t+1), points (x, x + k/(2t+1)).
struct LineWindow {
  std::int64_t k = 0;
  double x_min = 0.0;
  double x_max = 0.0;
};

struct LineRoot {
  std::int64_t k = 0;
  double x = 0.0;
  double y = 0.0;
  double abs_rho_hat = 0.0;
  bool tangential = false;

  FrequencyPoint point() const { return {x, y}; }
};

struct RootOptions {
  double initial_step = 0.05;
  double refine_tol = kRootRefineTol;
  double verify_tol = kMembershipTol;
};

bool is_zero(const SymmetricAdditiveMeasure& m, FrequencyPoint lambda, double tol = kMembershipTol);

GroupMembership classify(const SymmetricAdditiveMeasure& m, FrequencyPoint lambda, double tol = kMembershipTol);

/// Exact when t and both coordinates are exact rationals; otherwise the
/// products are formed at 128 bits and compared against tol.
GroupMembership classify(const SymmetricAdditiveMeasure& m, const Scalar& l1, const Scalar& l2,
                         double tol = kMembershipTol);

/// k/(2t+1), evaluated at 128 bits and rounded once.
double line_offset(const SymmetricAdditiveMeasure& m, std::int64_t k);

/// Largest |k| whose line can meet the strip 0 <= x <= C intersected with
/// the sectors K^-1|x| <= |y| <= K|x|: ceil((1 + K)·C·|2t+1|).
std::int64_t max_line_index(const SymmetricAdditiveMeasure& m, double strip_width, double sector_constant);

/// Zeros of ρ̂ on one line, sorted by x.
std::vector<LineRoot> line_roots(const SymmetricAdditiveMeasure& m, const LineWindow& w,
                                 const RootOptions& opts = {});

/// Nonzero integers n in [x_min, x_max]; (n, n) are the only diagonal zeros.
std::vector<std::int64_t> diagonal_zeros(const SymmetricAdditiveMeasure& m, double x_min, double x_max,
                                         const RootOptions& opts = {});

/// Columns: k,x,y,abs_rho_hat,tangential
void write_roots_csv(std::ostream& out, const std::vector<LineRoot>& roots);

}  // namespace segspec
