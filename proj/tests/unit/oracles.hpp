#pragma once

// Reference computations kept independent of the library code paths.

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <numbers>
#include <set>
#include <vector>

namespace oracle {

using Complex = std::complex<double>;

// Composite Simpson rule; n must be even.
inline Complex simpson(const std::function<Complex(double)>& f, double a, double b, int n = 20000) {
  const double h = (b - a) / n;
  Complex sum = f(a) + f(b);
  for (int i = 1; i < n; ++i) sum += (i % 2 == 1 ? 4.0 : 2.0) * f(a + i * h);
  return sum * (h / 3.0);
}

// sin(πx)/(πx) from the Taylor series in long double.
inline long double sinc_series(long double x) {
  const long double z = std::numbers::pi_v<long double> * x;
  long double term = 1.0L;
  long double sum = 1.0L;
  for (int n = 1; n < 60; ++n) {
    term *= -z * z / static_cast<long double>((2 * n) * (2 * n + 1));
    sum += term;
  }
  return sum;
}

// ½∫_t^{t+1} e^{-2πiξs} ds by Simpson.
inline Complex mu_hat_quadrature(double t, double xi) {
  return simpson([&](double s) { return 0.5 * std::polar(1.0, -2.0 * std::numbers::pi * xi * s); }, t, t + 1.0);
}

// Does A + B = Z_M for some B? Exhaustive: the smallest uncovered residue
// must be covered by some translate, so try each in turn.
inline bool tiles_cyclic_bruteforce(const std::vector<std::int64_t>& a, std::int64_t m) {
  const auto n = static_cast<std::int64_t>(a.size());
  if (m % n != 0) return false;
  std::vector<int> cover(static_cast<std::size_t>(m), 0);
  auto idx = [m](std::int64_t x) { return static_cast<std::size_t>(((x % m) + m) % m); };
  // A must stay injective mod m, or one translate would cover a cell twice.
  std::set<std::size_t> residues;
  for (auto z : a) residues.insert(idx(z));
  if (static_cast<std::int64_t>(residues.size()) != n) return false;
  std::function<bool(std::int64_t)> rec = [&](std::int64_t from) -> bool {
    std::int64_t r = from;
    while (r < m && cover[static_cast<std::size_t>(r)] != 0) ++r;
    if (r == m) return true;
    for (auto y : a) {
      const std::int64_t shift = r - y;
      bool fits = true;
      for (auto z : a) fits = fits && cover[idx(shift + z)] == 0;
      if (!fits) continue;
      for (auto z : a) cover[idx(shift + z)] = 1;
      if (rec(r + 1)) return true;
      for (auto z : a) cover[idx(shift + z)] = 0;
    }
    return false;
  };
  return rec(0);
}

// Every tiling of Z by a finite set of diameter D is periodic with period at
// most 2^(D+1), so checking periods up to that bound decides tiling.
inline bool tiles_integers_bruteforce(const std::vector<std::int64_t>& a) {
  std::int64_t diam = 0;
  for (auto x : a) diam = std::max(diam, x);
  const std::int64_t cap = std::int64_t{1} << (diam + 1);
  for (std::int64_t m = static_cast<std::int64_t>(a.size()); m <= cap; m += static_cast<std::int64_t>(a.size())) {
    if (tiles_cyclic_bruteforce(a, m)) return true;
  }
  return false;
}

// Local minima of |g| on a fine grid that dip below tol: a crude root count.
inline std::vector<double> grid_minima(const std::function<double(double)>& g, double a, double b, double h,
                                       double tol) {
  std::vector<double> out;
  const int n = static_cast<int>(std::ceil((b - a) / h));
  std::vector<double> x(n + 1), v(n + 1);
  for (int i = 0; i <= n; ++i) {
    x[i] = a + (b - a) * i / n;
    v[i] = std::fabs(g(x[i]));
  }
  for (int i = 0; i <= n; ++i) {
    const bool left = i == 0 || v[i] <= v[i - 1];
    const bool right = i == n || v[i] <= v[i + 1];
    if (left && right && v[i] < tol) out.push_back(x[i]);
  }
  return out;
}

}  // namespace oracle
