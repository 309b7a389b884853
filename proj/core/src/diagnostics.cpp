#include "segspec/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "segspec/error.hpp"
#include "segspec/quadrature.hpp"

namespace segspec {
namespace {

constexpr const char* kModule = "diagnostics";
constexpr double kPeriodTol = 1e-9;
// Coefficients below ten times the quadrature target are noise, not decay.
constexpr double kDecayFloor = 1e-11;

struct Support {
  double lo;
  double hi;
};

Support support(const SymmetricAdditiveMeasure& m, const TestFunction& f) {
  if (const auto* b = std::get_if<SmoothBump>(&f)) return {b->center - b->radius, b->center + b->radius};
  return {m.t_value(), m.t_value() + 1.0};
}

Complex horizontal_value(const TestFunction& f, double s) {
  if (std::holds_alternative<IndicatorHorizontal>(f)) return {1.0, 0.0};
  if (const auto* b = std::get_if<SmoothBump>(&f)) return {bump_value(*b, s), 0.0};
  const double x = std::get<ExponentialProbe>(f).x;
  return std::polar(1.0, 2.0 * std::numbers::pi * x * s);
}

// e^{2πi v} with v reduced modulo 1 at 128 bits first.
Complex unit_phase(const HighReal& v) {
  const HighReal frac = v - boost::multiprecision::floor(v);
  return std::polar(1.0, 2.0 * std::numbers::pi * frac.convert_to<double>());
}

double distance_to_integer(const HighReal& v) {
  return boost::multiprecision::abs(v - boost::multiprecision::round(v)).convert_to<double>();
}

std::optional<double> decay_fit(const std::vector<std::pair<double, double>>& samples, std::size_t& used) {
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  used = 0;
  for (const auto& [lam, mag] : samples) {
    if (!(mag > kDecayFloor) || !(lam > 0.0)) continue;
    const double x = std::log(lam);
    const double y = std::log(mag);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++used;
  }
  if (used < 2) return std::nullopt;
  const double n = static_cast<double>(used);
  const double denom = n * sxx - sx * sx;
  if (std::fabs(denom) <= 1e-300) return std::nullopt;
  return (n * sxy - sx * sy) / denom;
}

}  // namespace

double bump_value(const SmoothBump& f, double s) {
  const double u = (s - f.center) / f.radius;
  if (!(std::fabs(u) < 1.0)) return 0.0;
  return std::exp(1.0 - 1.0 / (1.0 - u * u));
}

void validate(const SymmetricAdditiveMeasure& m, const TestFunction& f) {
  const auto* b = std::get_if<SmoothBump>(&f);
  if (b == nullptr) return;
  if (!(b->radius > 0.0) || !std::isfinite(b->center) || !std::isfinite(b->radius)) {
    throw Error(kModule, ErrorCode::BumpOutOfRange, "bump radius must be positive and finite");
  }
  if (!(b->center - b->radius > m.t_value()) || !(b->center + b->radius < m.t_value() + 1.0)) {
    throw Error(kModule, ErrorCode::BumpOutOfRange, "bump support must lie inside the open horizontal segment");
  }
}

Complex inner_product(const SymmetricAdditiveMeasure& m, const TestFunction& f, FrequencyPoint lambda) {
  validate(m, f);
  if (std::holds_alternative<IndicatorHorizontal>(f)) return mu_hat(m.t_value(), lambda.l1);
  if (const auto* p = std::get_if<ExponentialProbe>(&f)) return mu_hat(m.t_value(), lambda.l1 - p->x);
  return inner_product_quadrature(m, f, lambda);
}

Complex inner_product_quadrature(const SymmetricAdditiveMeasure& m, const TestFunction& f, FrequencyPoint lambda,
                                 double abs_tol) {
  validate(m, f);
  const Support sup = support(m, f);
  const double two_pi = 2.0 * std::numbers::pi;
  const auto r = integrate(
      [&](double s) {
        return 0.5 * horizontal_value(f, s) * std::polar(1.0, -two_pi * std::remainder(lambda.l1 * s, 1.0));
      },
      sup.lo, sup.hi, abs_tol);
  return r.value;
}

double norm_sq(const SymmetricAdditiveMeasure& m, const TestFunction& f, double abs_tol) {
  validate(m, f);
  const auto* b = std::get_if<SmoothBump>(&f);
  if (b == nullptr) return 0.5;
  const auto r = integrate(
      [&](double s) {
        const double v = bump_value(*b, s);
        return Complex(0.5 * v * v, 0.0);
      },
      b->center - b->radius, b->center + b->radius, abs_tol);
  return r.value.real();
}

DefectReport parseval_defect(const SymmetricAdditiveMeasure& m, const TestFunction& f, const SpectrumCandidate& c,
                             double window) {
  validate(m, f);
  DefectReport rep;
  rep.window = window;
  rep.norm_sq = norm_sq(m, f);
  const auto pts = enumerate(c, window);
  rep.point_count = pts.size();

  std::vector<std::pair<double, double>> outer;
  for (const auto& p : pts) {
    const Complex a = inner_product(m, f, p.at);
    rep.captured += std::norm(a);
    if (std::fabs(p.at.l1) >= 0.5 * window) outer.emplace_back(std::fabs(p.at.l1), std::abs(a));
  }
  rep.defect = rep.norm_sq - rep.captured;
  rep.coefficient_decay = decay_fit(outer, rep.decay_samples);
  rep.bessel_ok = rep.captured <= rep.norm_sq + kBesselSlack;

  // For the indicator and the probe |⟨f,e_λ⟩|² = sinc²(λ1 - x)/4; the sinc²
  // tail bounds the energy missed by a periodic line set.
  const auto* line = std::get_if<PeriodicLineSet>(&c);
  if (line != nullptr && !std::holds_alternative<SmoothBump>(f)) {
    const double shift = std::holds_alternative<ExponentialProbe>(f) ? std::fabs(std::get<ExponentialProbe>(f).x) : 0.0;
    const double ux = std::fabs(line->direction.x);
    const double reach = std::max(ux, std::fabs(line->direction.y));
    const double w1 = window / reach * ux - shift;
    if (ux > 0.0 && w1 > 1.0) {
      const double d_max = static_cast<double>(line->offsets.size()) * (1.0 / (line->period * ux) + 1.0);
      const double pi2 = std::numbers::pi * std::numbers::pi;
      rep.tail_bound = 0.25 * 2.0 * d_max * (1.0 / w1 + 1.0 / (w1 * w1)) / pi2;
    }
  }
  return rep;
}

PeriodicityCertificate periodicity_certificate(const SymmetricAdditiveMeasure& m, const SpectrumCandidate& c,
                                               const SmoothBump& f, double window) {
  m.require_not_plus_space(kModule);
  if (!(m.t() > Scalar::ratio(-1, 2)) || !(m.t() < Scalar(0))) {
    throw Error(kModule, ErrorCode::WrongRegime, "the certificate applies to -1/2 < t < 0");
  }
  const TestFunction tf = f;
  validate(m, tf);

  PeriodicityCertificate cert;
  cert.t = m.t();
  cert.period_component = m.scale();
  const double s = m.scale_value();
  cert.first_point = {s, 0.0};
  cert.second_point = {0.0, s};
  cert.exact = m.t().is_exact();

  const auto pts = enumerate(c, window);
  cert.point_count = pts.size();
  const HighReal scale = m.scale().to_real();
  for (const auto& p : pts) {
    if (p.is_exact() && m.t().is_exact()) {
      const Rational v = (*p.exact_l1 - *p.exact_l2) * m.scale().rational();
      if (boost::multiprecision::denominator(v) != 1) {
        throw Error(kModule, ErrorCode::NotInH2, "point with λ·T not an integer");
      }
    } else {
      cert.exact = false;
      const HighReal v = (HighReal(p.at.l1) - HighReal(p.at.l2)) * scale;
      const double r = distance_to_integer(v);
      cert.max_period_residual = std::max(cert.max_period_residual, r);
      if (r > kPeriodTol) throw Error(kModule, ErrorCode::NotInH2, "point with λ·T not an integer");
    }
    const Complex a = inner_product(m, tf, p.at);
    cert.first_value += a * unit_phase(HighReal(p.at.l1) * scale);
    cert.second_value += a * unit_phase(HighReal(p.at.l2) * scale);
  }
  cert.all_in_h2 = true;
  cert.agreement_gap = std::abs(cert.first_value - cert.second_value);
  cert.f_first = bump_value(f, s);
  cert.f_second = 0.0;
  cert.value_contrast = std::fabs(cert.f_first - cert.f_second);
  return cert;
}

FractionalPartReport fractional_part_analysis(const SymmetricAdditiveMeasure& m, const SpectrumCandidate& c,
                                              double precision, double window) {
  m.require_not_plus_space(kModule);
  if (!(precision > 0.0)) throw Error(kModule, ErrorCode::InvalidArgument, "precision must be positive");
  FractionalPartReport rep;
  rep.precision = precision;
  rep.exact = m.t().is_exact();

  std::vector<HighReal> fracs;
  for (const auto& p : enumerate(c, window)) {
    const GroupMembership g = p.is_exact() ? classify(m, Scalar(*p.exact_l1), Scalar(*p.exact_l2))
                                           : classify(m, p.at);
    Scalar v;
    if (g.k) {
      ++rep.per_line_counts[*g.k];
      // 2(λ2 - λ1) = 2k/(2t+1) on the line.
      v = Scalar(2 * *g.k) / m.scale();
    } else {
      ++rep.off_h2;
      rep.exact = false;
      v = Scalar::real(2 * (HighReal(p.at.l2) - HighReal(p.at.l1)));
    }
    fracs.push_back(fractional_part(v).to_real());
  }
  for (const auto& [k, n] : rep.per_line_counts) {
    rep.k_values.push_back(k);
    if (k != 0) rep.max_on_nonzero_line = std::max(rep.max_on_nonzero_line, n);
  }

  // Cluster on the circle R/Z.
  std::sort(fracs.begin(), fracs.end());
  std::vector<HighReal> reps;
  const HighReal q(precision);
  for (const auto& v : fracs) {
    if (reps.empty() || v - reps.back() > q) reps.push_back(v);
  }
  if (reps.size() > 1 && reps.front() + 1 - fracs.back() <= q) reps.pop_back();
  rep.distinct_count = reps.size();
  for (const auto& r : reps) rep.values.push_back(Scalar::real(r).to_string());
  rep.one_value_per_line = rep.off_h2 == 0 && rep.distinct_count == rep.per_line_counts.size();
  return rep;
}

}  // namespace segspec
