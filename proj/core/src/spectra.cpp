#include "segspec/spectra.hpp"

#include <algorithm>
#include <cmath>

#include "segspec/error.hpp"

namespace segspec {
namespace {

constexpr const char* kModule = "spectra";

bool scan_order(const SpectrumPoint& a, const SpectrumPoint& b) {
  const double aa = std::fabs(a.at.l1);
  const double ab = std::fabs(b.at.l1);
  if (aa != ab) return aa < ab;
  if (a.at.l1 != b.at.l1) return a.at.l1 < b.at.l1;
  return a.at.l2 < b.at.l2;
}

FrequencyPoint difference(const SpectrumPoint& a, const SpectrumPoint& b) {
  if (a.is_exact() && b.is_exact()) {
    return {Scalar(*a.exact_l1 - *b.exact_l1).to_double(), Scalar(*a.exact_l2 - *b.exact_l2).to_double()};
  }
  return a.at - b.at;
}

std::size_t max_cluster(std::vector<double> v, double quantum) {
  if (v.empty()) return 0;
  std::sort(v.begin(), v.end());
  std::size_t best = 1;
  std::size_t run = 1;
  for (std::size_t i = 1; i < v.size(); ++i) {
    run = (v[i] - v[i - 1] <= quantum) ? run + 1 : 1;
    best = std::max(best, run);
  }
  return best;
}

}  // namespace

SpectrumPoint SpectrumPoint::exact(const Rational& l1, const Rational& l2) {
  SpectrumPoint p;
  p.at = {Scalar(l1).to_double(), Scalar(l2).to_double()};
  p.exact_l1 = l1;
  p.exact_l2 = l2;
  return p;
}

void validate(const SpectrumCandidate& c) {
  if (const auto* w = std::get_if<WindowSet>(&c)) {
    if (w->points.empty()) throw Error(kModule, ErrorCode::EmptyCandidate, "window set has no points");
    bool has_origin = false;
    std::vector<FrequencyPoint> pts;
    for (const auto& p : w->points) {
      if (!std::isfinite(p.at.l1) || !std::isfinite(p.at.l2)) {
        throw Error(kModule, ErrorCode::InvalidArgument, "frequency points must be finite");
      }
      if (p.exact_l1.has_value() != p.exact_l2.has_value()) {
        throw Error(kModule, ErrorCode::InvalidArgument, "exact coordinates must be given for both axes");
      }
      has_origin = has_origin || (p.at.l1 == 0.0 && p.at.l2 == 0.0);
      pts.push_back(p.at);
    }
    if (!has_origin) throw Error(kModule, ErrorCode::InvalidArgument, "candidate must contain the origin");
    std::sort(pts.begin(), pts.end(),
              [](const FrequencyPoint& a, const FrequencyPoint& b) { return a.l1 != b.l1 ? a.l1 < b.l1 : a.l2 < b.l2; });
    if (std::adjacent_find(pts.begin(), pts.end()) != pts.end()) {
      throw Error(kModule, ErrorCode::InvalidArgument, "window set points must be distinct");
    }
    return;
  }
  const auto& p = std::get<PeriodicLineSet>(c);
  if (std::fabs(norm(p.direction) - 1.0) > 1e-14) {
    throw Error(kModule, ErrorCode::InvalidArgument, "direction must be a unit vector");
  }
  if (!(p.period > 0.0) || !std::isfinite(p.period)) {
    throw Error(kModule, ErrorCode::InvalidArgument, "period must be positive");
  }
  if (p.offsets.empty()) throw Error(kModule, ErrorCode::EmptyCandidate, "periodic set has no offsets");
  if (p.offsets.front() != 0.0) throw Error(kModule, ErrorCode::InvalidArgument, "offsets must start at 0");
  for (std::size_t i = 0; i < p.offsets.size(); ++i) {
    if (!(p.offsets[i] >= 0.0 && p.offsets[i] < p.period)) {
      throw Error(kModule, ErrorCode::InvalidArgument, "offsets must lie in [0, period)");
    }
    if (i > 0 && !(p.offsets[i - 1] < p.offsets[i])) {
      throw Error(kModule, ErrorCode::InvalidArgument, "offsets must be strictly increasing");
    }
  }
}

std::vector<SpectrumPoint> enumerate(const SpectrumCandidate& c, double window) {
  if (!(window > 0.0)) throw Error(kModule, ErrorCode::InvalidArgument, "window must be positive");
  validate(c);
  std::vector<SpectrumPoint> out;
  const double edge = window * (1.0 + 1e-12);
  auto inside = [&](FrequencyPoint p) { return std::max(std::fabs(p.l1), std::fabs(p.l2)) <= edge; };

  if (const auto* w = std::get_if<WindowSet>(&c)) {
    for (const auto& p : w->points) {
      if (inside(p.at)) out.push_back(p);
    }
  } else {
    const auto& p = std::get<PeriodicLineSet>(c);
    const double reach = std::max(std::fabs(p.direction.x), std::fabs(p.direction.y));
    const double s_max = edge / reach;
    for (double o : p.offsets) {
      const auto n0 = static_cast<std::int64_t>(std::ceil((-s_max - o) / p.period));
      const auto n1 = static_cast<std::int64_t>(std::floor((s_max - o) / p.period));
      for (std::int64_t n = n0; n <= n1; ++n) {
        const double s = o + static_cast<double>(n) * p.period;
        SpectrumPoint sp;
        sp.at = {s * p.direction.x, s * p.direction.y};
        if (inside(sp.at)) out.push_back(sp);
      }
    }
  }
  std::sort(out.begin(), out.end(), scan_order);
  return out;
}

OrthogonalityReport verify_orthogonal(const SymmetricAdditiveMeasure& m, const SpectrumCandidate& c, double window,
                                      double tol) {
  m.require_not_plus_space(kModule);
  if (!(tol > 0.0)) throw Error(kModule, ErrorCode::InvalidArgument, "tolerance must be positive");
  const auto pts = enumerate(c, window);
  OrthogonalityReport rep;
  rep.tol = tol;
  rep.window = window;
  rep.point_count = pts.size();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      const double mag = std::abs(rho_hat(m, difference(pts[j], pts[i])));
      rep.max_abs_rho_hat = std::max(rep.max_abs_rho_hat, mag);
      ++rep.pairs_checked;
      if (mag > tol) rep.violations.emplace_back(pts[i].at, pts[j].at);
    }
  }
  rep.ok = rep.violations.empty();
  return rep;
}

std::vector<SpectrumPoint> packing_candidates(const SymmetricAdditiveMeasure& m, double window, double step,
                                              const PackingOptions& options) {
  m.require_not_plus_space(kModule);
  if (!(window > 0.0) || !(step > 0.0)) {
    throw Error(kModule, ErrorCode::InvalidArgument, "window and step must be positive");
  }
  if (!(options.sector_slope >= 1.0) || !(options.sector_offset >= 0.0)) {
    throw Error(kModule, ErrorCode::InvalidArgument, "sector slope must be >= 1 and offset >= 0");
  }
  auto in_sector = [&](double x, double y) {
    return std::fabs(x) <= window && std::fabs(y) <= options.sector_slope * std::fabs(x) + options.sector_offset;
  };

  std::vector<SpectrumPoint> out;
  if (options.mode == PackingMode::integers) {
    const auto w = static_cast<std::int64_t>(std::floor(window));
    for (std::int64_t a = -w; a <= w; ++a) {
      const auto reach = static_cast<std::int64_t>(
          std::floor(options.sector_slope * static_cast<double>(std::abs(a)) + options.sector_offset));
      for (std::int64_t b = -reach; b <= reach; ++b) {
        if (a == 0 && b == 0) continue;
        auto p = SpectrumPoint::exact(Rational(a), Rational(b));
        const auto g = classify(m, Scalar(a), Scalar(b));
        p.line = g.k;
        out.push_back(std::move(p));
      }
    }
  } else {
    // Scan a range snapped outward to the step grid so that every cell a
    // smaller window sees is also a cell of any larger window.
    const double reach = (std::floor(window / step) + 2.0) * step;
    const double strip = (options.sector_slope + 1.0) * window + options.sector_offset;
    const auto k_max = static_cast<std::int64_t>(std::ceil(strip * std::fabs(m.scale_value())));
    RootOptions ro;
    ro.initial_step = step;
    for (std::int64_t k = -k_max; k <= k_max; ++k) {
      for (const auto& r : line_roots(m, LineWindow{k, -reach, reach}, ro)) {
        if (!in_sector(r.x, r.y)) continue;
        SpectrumPoint p;
        p.at = r.point();
        p.line = k;
        if (m.t().is_exact() && r.x == std::nearbyint(r.x)) {
          p.exact_l1 = Rational(static_cast<std::int64_t>(r.x));
          p.exact_l2 = *p.exact_l1 + Rational(k) / m.scale().rational();
        }
        out.push_back(std::move(p));
      }
    }
  }
  out.erase(std::remove_if(out.begin(), out.end(),
                           [&](const SpectrumPoint& p) { return std::abs(rho_hat(m, p.at)) > options.tol; }),
            out.end());
  std::sort(out.begin(), out.end(), scan_order);
  return out;
}

WindowSet greedy_pack(const SymmetricAdditiveMeasure& m, double window, double step, const PackingOptions& options) {
  WindowSet set;
  set.points.push_back(SpectrumPoint::exact(Rational(0), Rational(0)));
  set.points.back().line = 0;
  for (auto& cand : packing_candidates(m, window, step, options)) {
    const bool fits = std::all_of(set.points.begin(), set.points.end(), [&](const SpectrumPoint& q) {
      return std::abs(rho_hat(m, difference(cand, q))) <= options.tol;
    });
    if (fits) set.points.push_back(std::move(cand));
  }
  return set;
}

PackingStats packing_stats(const SymmetricAdditiveMeasure& m, const WindowSet& c, double tol) {
  PackingStats st;
  std::vector<double> first;
  std::vector<double> second;
  for (const auto& p : c.points) {
    first.push_back(p.at.l1);
    second.push_back(p.at.l2);
    const GroupMembership g = p.is_exact() ? classify(m, Scalar(*p.exact_l1), Scalar(*p.exact_l2), tol)
                                           : classify(m, p.at, tol);
    if (g.k) {
      ++st.per_line_counts[*g.k];
    } else {
      ++st.off_h2;
    }
    if (p.at.l1 == 0.0 && p.at.l2 == 0.0) continue;
    if (p.at.l1 == 0.0 || p.at.l2 == 0.0) {
      st.axis_points.push_back(p.at);
      continue;
    }
    const double a = std::fabs(p.at.l1);
    const double b = std::fabs(p.at.l2);
    const double ratio = std::max(a / b, b / a);
    st.k_observed = st.k_observed ? std::max(*st.k_observed, ratio) : ratio;
  }
  std::vector<double> sorted = first;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 1; i < sorted.size(); ++i) st.gaps.push_back(sorted[i] - sorted[i - 1]);
  st.axis_multiplicity_first = max_cluster(first, 1e-9);
  st.axis_multiplicity_second = max_cluster(second, 1e-9);
  return st;
}

}  // namespace segspec
