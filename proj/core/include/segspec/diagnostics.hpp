#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "segspec/measure.hpp"
#include "segspec/spectra.hpp"

namespace segspec {

/// 1 on the horizontal segment, 0 on the vertical one.
struct IndicatorHorizontal {};

/// exp(1 - 1/(1 - s²)) with s = (x - center)/radius, on the horizontal segment.
struct SmoothBump {
  double center = 0.0;
  double radius = 0.0;
};

/// e^{2πi x s} on the horizontal segment.
struct ExponentialProbe {
  double x = 0.0;
};

using TestFunction = std::variant<IndicatorHorizontal, SmoothBump, ExponentialProbe>;

/// Profile value of the bump at a point of the horizontal segment.
double bump_value(const SmoothBump& f, double s);

/// Throws Error{BumpOutOfRange} unless the bump support lies inside (t, t+1).
void validate(const SymmetricAdditiveMeasure& m, const TestFunction& f);

/// ⟨f, e_λ⟩ in L²(ρ). Closed forms for the indicator and the probe,
/// quadrature (absolute target 1e-12) for the bump.
Complex inner_product(const SymmetricAdditiveMeasure& m, const TestFunction& f, FrequencyPoint lambda);

/// Same quantity by adaptive quadrature for every variant.
Complex inner_product_quadrature(const SymmetricAdditiveMeasure& m, const TestFunction& f, FrequencyPoint lambda,
                                 double abs_tol = 1e-12);

/// ‖f‖² in L²(ρ).
double norm_sq(const SymmetricAdditiveMeasure& m, const TestFunction& f, double abs_tol = 1e-14);

inline constexpr double kBesselSlack = 1e-8;

struct DefectReport {
  double norm_sq = 0.0;
  double captured = 0.0;
  double defect = 0.0;
  std::optional<double> coefficient_decay;  // slope of log|⟨f,e_λ⟩| against log|λ1|
  std::size_t decay_samples = 0;
  double window = 0.0;
  std::size_t point_count = 0;
  std::optional<double> tail_bound;  // energy beyond the window, when a bound is available
  bool bessel_ok = false;            // captured <= norm_sq + kBesselSlack
};

DefectReport parseval_defect(const SymmetricAdditiveMeasure& m, const TestFunction& f, const SpectrumCandidate& c,
                             double window);

struct PeriodicityCertificate {
  Scalar t;
  Scalar period_component;  // T = (2t+1, -(2t+1))
  bool all_in_h2 = false;
  bool exact = false;  // every λ·T decided in exact arithmetic
  std::size_t point_count = 0;
  FrequencyPoint first_point;   // (1+2t, 0)
  FrequencyPoint second_point;  // (0, 1+2t)
  Complex first_value;          // truncated expansion at first_point
  Complex second_value;
  double agreement_gap = 0.0;
  double f_first = 0.0;  // actual values of f at the pair
  double f_second = 0.0;
  double value_contrast = 0.0;
  double max_period_residual = 0.0;  // max distance of λ·T to an integer
};

/// Term-wise T-periodicity of the expansion over H2 against the values of f.
/// Throws Error{WrongRegime} unless -1/2 < t < 0, Error{NotInH2} if some
/// point fails λ·T ∈ Z.
PeriodicityCertificate periodicity_certificate(const SymmetricAdditiveMeasure& m, const SpectrumCandidate& c,
                                               const SmoothBump& f, double window);

struct FractionalPartReport {
  double precision = 0.0;
  int precision_bits = kHighRealBits;
  bool exact = false;                 // rational t: values computed exactly
  std::vector<std::string> values;    // cluster representatives of {2(λ2 - λ1)}, 40 digits
  std::size_t distinct_count = 0;
  std::vector<std::int64_t> k_values;
  std::map<std::int64_t, std::size_t> per_line_counts;
  std::size_t off_h2 = 0;
  std::size_t max_on_nonzero_line = 0;
  bool one_value_per_line = false;  // distinct_count equals the number of occupied lines
};

FractionalPartReport fractional_part_analysis(const SymmetricAdditiveMeasure& m, const SpectrumCandidate& c,
                                              double precision, double window);

}  // namespace segspec
