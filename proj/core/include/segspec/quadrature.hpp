#pragma once

#include <complex>
#include <functional>

namespace segspec {

struct QuadratureResult {
  std::complex<double> value;
  double error_estimate = 0.0;
  int panels = 0;
  bool converged = false;
};

/// Globally adaptive 15/31-point Gauss–Kronrod integration of a complex
/// integrand on [a, b] to an absolute error target. Panels are bisected in
/// order of largest error estimate until the summed estimate meets abs_tol or
/// max_panels is reached.
QuadratureResult integrate(const std::function<std::complex<double>(double)>& f, double a, double b,
                           double abs_tol = 1e-12, int max_panels = 2000);

}  // namespace segspec
