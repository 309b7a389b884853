#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "segspec/json_io.hpp"

namespace segspec::acceptance {

// Tolerances and sizes are fixed here so that every run checks the same thing.
inline constexpr double kOrthogonalityTol = 1e-10;
inline constexpr double kOrthogonalityWindow = 50.0;
inline constexpr double kIdentityWindow = 400.0;
inline constexpr int kIdentityGridPoints = 101;
inline constexpr double kRootTol = 1e-10;
inline constexpr double kRootMatchTol = 1e-9;
inline constexpr int kTilingInstances = 200;
inline constexpr std::int64_t kTilingMaxDenominator = 12;
inline constexpr double kCertificateGapTol = 1e-10;
inline constexpr double kFractionalPrecision = 1e-9;
inline constexpr int kCrossValidationSamples = 1000;
inline constexpr int kInnerProductSamples = 200;
inline constexpr double kCrossValidationTol = 1e-10;
inline constexpr double kPackingStep = 0.05;
inline constexpr std::uint64_t kSeed = 20240611;

struct CriterionResult {
  int id = 0;
  std::string title;
  bool pass = false;
  std::string detail;  // one line
  Json report;
};

/// Candidates produced while checking criteria 1-6; criterion 8 reuses them.
struct Collected {
  std::string label;
  Scalar t;
  SpectrumCandidate candidate;
  double window = 0.0;
};

class Suite {
 public:
  CriterionResult run(int id);
  std::vector<CriterionResult> run_all();

  static std::vector<int> ids() { return {1, 2, 3, 4, 5, 6, 7, 8}; }

 private:
  CriterionResult reference_spectrum();
  CriterionResult projection_construction();
  CriterionResult zero_set_structure();
  CriterionResult two_interval_oracle();
  CriterionResult intersecting_certificate();
  CriterionResult irrational_diagnostics();
  CriterionResult cross_validation();
  CriterionResult bessel_suite();

  void collect(std::string label, const Scalar& t, SpectrumCandidate c, double window);
  bool collected_through_ = false;
  std::vector<Collected> collected_;
};

/// "[PASS] 3 zero-set structure: ..." style line.
std::string summary_line(const CriterionResult& r);

}  // namespace segspec::acceptance
