#include "segspec/zero_set.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "segspec/error.hpp"

namespace segspec {
namespace {

constexpr const char* kModule = "zero-set";

bool is_integer(const Rational& q) { return boost::multiprecision::denominator(q) == 1; }

double distance_to_integer(const HighReal& v) {
  const HighReal r = v - boost::multiprecision::round(v);
  return boost::multiprecision::abs(r).convert_to<double>();
}

// Along the line (x, x + delta) the transform factors as
//   ρ̂ = (1/2) e^{-2πi x (t+1/2)} [sinc(x) + (-1)^k sinc(x + delta)],
// so the zeros are the zeros of the real function below.
struct LineFunction {
  double delta;
  double sign;  // (-1)^k

  double value(double x) const { return sinc(x) + sign * sinc(x + delta); }
  double slope(double x) const { return sinc_derivative(x) + sign * sinc_derivative(x + delta); }
};

template <typename F>
double bisect(F&& f, double a, double b, double fa, double tol) {
  for (int iter = 0; iter < 200 && b - a > tol; ++iter) {
    const double mid = 0.5 * (a + b);
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm < 0.0) == (fa < 0.0)) {
      a = mid;
      fa = fm;
    } else {
      b = mid;
    }
  }
  return 0.5 * (a + b);
}

struct RawRoot {
  double x;
  bool tangential;
};

void scan_cell(const LineFunction& g, double a, double b, double ga, double gb, const RootOptions& opts,
               std::vector<RawRoot>& out, int depth = 0) {
  if (gb == 0.0) return;  // picked up as the left node of the next cell
  if (ga == 0.0) {
    out.push_back({a, false});
    return;
  }
  const double da = g.slope(a);
  const double db = g.slope(b);
  if ((da < 0.0) != (db < 0.0) && da != 0.0 && db != 0.0) {
    // Interior extremum: split there so that close pairs and tangencies are
    // not hidden inside one cell.
    const double c = bisect([&](double x) { return g.slope(x); }, a, b, da, opts.refine_tol);
    const double gc = g.value(c);
    if (c > a && c < b) {
      if (std::fabs(gc) <= opts.verify_tol && (gc < 0.0) == (ga < 0.0) && (gc < 0.0) == (gb < 0.0)) {
        out.push_back({c, true});
        return;
      }
      if (gc == 0.0) {
        out.push_back({c, true});
        return;
      }
      if (depth < 8) {
        scan_cell(g, a, c, ga, gc, opts, out, depth + 1);
        scan_cell(g, c, b, gc, gb, opts, out, depth + 1);
        return;
      }
    }
  }
  if ((ga < 0.0) != (gb < 0.0)) {
    out.push_back({bisect([&](double x) { return g.value(x); }, a, b, ga, opts.refine_tol), false});
  }
}

}  // namespace

bool is_zero(const SymmetricAdditiveMeasure& m, FrequencyPoint lambda, double tol) {
  if (!(tol > 0.0)) throw Error(kModule, ErrorCode::InvalidArgument, "tolerance must be positive");
  return std::abs(rho_hat(m, lambda)) <= tol;
}

GroupMembership classify(const SymmetricAdditiveMeasure& m, FrequencyPoint lambda, double tol) {
  m.require_not_plus_space(kModule);
  GroupMembership g;
  g.in_h1 = std::fabs(lambda.l1 - std::nearbyint(lambda.l1)) <= tol &&
            std::fabs(lambda.l2 - std::nearbyint(lambda.l2)) <= tol;
  const double d = (lambda.l2 - lambda.l1) * m.scale_value();
  const double nearest = std::nearbyint(d);
  g.residual = std::fabs(d - nearest);
  g.in_h2 = g.residual <= tol;
  if (g.in_h2) g.k = static_cast<std::int64_t>(nearest);
  return g;
}

GroupMembership classify(const SymmetricAdditiveMeasure& m, const Scalar& l1, const Scalar& l2, double tol) {
  m.require_not_plus_space(kModule);
  GroupMembership g;
  if (m.scale().is_exact() && l1.is_exact() && l2.is_exact()) {
    g.exact = true;
    g.in_h1 = is_integer(l1.rational()) && is_integer(l2.rational());
    const Rational d = (l2.rational() - l1.rational()) * m.scale().rational();
    g.in_h2 = is_integer(d);
    g.residual = distance_to_integer(Scalar(d).to_real());
    if (g.in_h2) g.k = boost::multiprecision::numerator(d).convert_to<std::int64_t>();
    return g;
  }
  const HighReal a = l1.to_real();
  const HighReal b = l2.to_real();
  g.in_h1 = distance_to_integer(a) <= tol && distance_to_integer(b) <= tol;
  const HighReal d = (b - a) * m.scale().to_real();
  g.residual = distance_to_integer(d);
  g.in_h2 = g.residual <= tol;
  if (g.in_h2) g.k = boost::multiprecision::round(d).convert_to<std::int64_t>();
  return g;
}

double line_offset(const SymmetricAdditiveMeasure& m, std::int64_t k) {
  m.require_not_plus_space(kModule);
  return (Scalar(k) / m.scale()).to_double();
}

std::int64_t max_line_index(const SymmetricAdditiveMeasure& m, double strip_width, double sector_constant) {
  if (!(strip_width > 0.0) || !(sector_constant >= 1.0)) {
    throw Error(kModule, ErrorCode::InvalidArgument, "strip width must be positive and sector constant >= 1");
  }
  return static_cast<std::int64_t>(
      std::ceil((1.0 + sector_constant) * strip_width * std::fabs(m.scale_value())));
}

std::vector<LineRoot> line_roots(const SymmetricAdditiveMeasure& m, const LineWindow& w, const RootOptions& opts) {
  m.require_not_plus_space(kModule);
  if (!(w.x_min < w.x_max)) throw Error(kModule, ErrorCode::InvalidArgument, "line window must have x_min < x_max");
  if (!(opts.initial_step > 0.0)) throw Error(kModule, ErrorCode::InvalidArgument, "grid step must be positive");

  const LineFunction g{line_offset(m, w.k), (w.k % 2 == 0) ? 1.0 : -1.0};
  // Interior nodes sit on global multiples of the step, so overlapping windows
  // see identical cells and return bit-identical roots.
  const double h = opts.initial_step;
  std::vector<double> nodes{w.x_min};
  for (auto i = static_cast<std::int64_t>(std::floor(w.x_min / h)) + 1;; ++i) {
    const double x = static_cast<double>(i) * h;
    if (x >= w.x_max) break;
    if (x > w.x_min) nodes.push_back(x);
  }
  nodes.push_back(w.x_max);

  std::vector<RawRoot> raw;
  double a = w.x_min;
  double ga = g.value(a);
  for (std::size_t i = 1; i < nodes.size(); ++i) {
    const double b = nodes[i];
    const double gb = g.value(b);
    scan_cell(g, a, b, ga, gb, opts, raw);
    a = b;
    ga = gb;
  }
  if (ga == 0.0) raw.push_back({a, false});

  // Snap to integers where both factors vanish exactly.
  for (auto& r : raw) {
    const double n = std::nearbyint(r.x);
    if (std::fabs(r.x - n) <= 1e-9 && g.value(n) == 0.0) r.x = n;
  }
  std::sort(raw.begin(), raw.end(), [](const RawRoot& p, const RawRoot& q) { return p.x < q.x; });

  std::vector<LineRoot> roots;
  for (const auto& r : raw) {
    if (r.x < w.x_min || r.x > w.x_max) continue;
    const FrequencyPoint p{r.x, r.x + g.delta};
    const double mag = std::abs(rho_hat(m, p));
    if (mag > opts.verify_tol) continue;
    if (!roots.empty() && std::fabs(roots.back().x - r.x) <= 1e-9) {
      if (mag < roots.back().abs_rho_hat) {
        roots.back().x = r.x;
        roots.back().y = p.l2;
        roots.back().abs_rho_hat = mag;
      }
      roots.back().tangential = roots.back().tangential || r.tangential;
      continue;
    }
    roots.push_back(LineRoot{w.k, r.x, p.l2, mag, r.tangential});
  }
  return roots;
}

std::vector<std::int64_t> diagonal_zeros(const SymmetricAdditiveMeasure& m, double x_min, double x_max,
                                         const RootOptions& opts) {
  const auto roots = line_roots(m, LineWindow{0, x_min, x_max}, opts);
  std::vector<std::int64_t> found;
  found.reserve(roots.size());
  for (const auto& r : roots) found.push_back(static_cast<std::int64_t>(std::nearbyint(r.x)));

  std::vector<std::int64_t> expected;
  for (auto n = static_cast<std::int64_t>(std::ceil(x_min)); n <= static_cast<std::int64_t>(std::floor(x_max)); ++n) {
    if (n != 0) expected.push_back(n);
  }
  bool agree = found == expected;
  for (const auto& r : roots) agree = agree && r.x == std::nearbyint(r.x);
  if (!agree) throw std::logic_error("diagonal root scan disagrees with the nonzero-integer closed form");
  return found;
}

void write_roots_csv(std::ostream& out, const std::vector<LineRoot>& roots) {
  const auto old_precision = out.precision(17);
  out << "k,x,y,abs_rho_hat,tangential\n";
  for (const auto& r : roots) {
    out << r.k << ',' << r.x << ',' << r.y << ',' << r.abs_rho_hat << ',' << (r.tangential ? 1 : 0) << '\n';
  }
  out.precision(old_precision);
}

}  // namespace segspec
