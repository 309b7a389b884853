#include "segspec/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace segspec {
namespace {

using Kronrod = boost::math::quadrature::gauss_kronrod<double, 31>;
using Gauss = boost::math::quadrature::gauss<double, 15>;

struct Panel {
  double a;
  double b;
  std::complex<double> value;
  double error;

  bool operator<(const Panel& other) const { return error < other.error; }
};

// Kronrod abscissae are stored non-negative; the Gauss nodes are the even
// indices of that table.
Panel evaluate_panel(const std::function<std::complex<double>(double)>& f, double a, double b) {
  const auto& xk = Kronrod::abscissa();
  const auto& wk = Kronrod::weights();
  const auto& wg = Gauss::weights();
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);

  const std::complex<double> f0 = f(mid);
  std::complex<double> kron = wk[0] * f0;
  std::complex<double> gauss = wg[0] * f0;
  for (std::size_t i = 1; i < xk.size(); ++i) {
    const double dx = half * xk[i];
    const std::complex<double> pair = f(mid - dx) + f(mid + dx);
    kron += wk[i] * pair;
    if (i % 2 == 0) gauss += wg[i / 2] * pair;
  }
  kron *= half;
  gauss *= half;
  // Panel error floor: a few ulps of the panel magnitude.
  const double floor = 50.0 * std::numeric_limits<double>::epsilon() * std::abs(kron);
  return Panel{a, b, kron, std::max(std::abs(kron - gauss), floor)};
}

}  // namespace

QuadratureResult integrate(const std::function<std::complex<double>(double)>& f, double a, double b,
                           double abs_tol, int max_panels) {
  QuadratureResult result;
  if (a == b) {
    result.converged = true;
    return result;
  }
  std::priority_queue<Panel> queue;
  queue.push(evaluate_panel(f, a, b));
  double total_error = queue.top().error;
  int panels = 1;
  while (total_error > abs_tol && panels < max_panels) {
    Panel worst = queue.top();
    queue.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (mid <= worst.a || mid >= worst.b) {
      queue.push(worst);
      break;
    }
    Panel left = evaluate_panel(f, worst.a, mid);
    Panel right = evaluate_panel(f, mid, worst.b);
    total_error += left.error + right.error - worst.error;
    queue.push(left);
    queue.push(right);
    ++panels;
  }
  // Re-sum to avoid drift in the running totals.
  std::vector<Panel> all;
  all.reserve(queue.size());
  while (!queue.empty()) {
    all.push_back(queue.top());
    queue.pop();
  }
  std::sort(all.begin(), all.end(), [](const Panel& p, const Panel& q) { return p.a < q.a; });
  std::complex<double> sum{0.0, 0.0};
  double err = 0.0;
  for (const auto& p : all) {
    sum += p.value;
    err += p.error;
  }
  result.value = sum;
  result.error_estimate = err;
  result.panels = panels;
  result.converged = err <= abs_tol;
  return result;
}

}  // namespace segspec
