#include "segspec/projection.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

#include <boost/math/tools/minima.hpp>

#include "segspec/error.hpp"

namespace segspec {
namespace {

constexpr const char* kModule = "projection";
constexpr double kPerpendicularTol = 1e-14;
constexpr double kConstancyTol = 1e-9;
constexpr std::int64_t kRationalizeDen = 64;
constexpr double kRationalizeTol = 1e-9;
constexpr std::int64_t kSpectrumSearchBudget = 1'000'000;

struct Piece {
  double left;
  double right;
  double density;
};

// Representatives of endpoint clusters closer than eps, so that shadows
// meeting at a shared point are not split by rounding.
class EndpointSnap {
 public:
  EndpointSnap(std::vector<double> xs, double eps) {
    std::sort(xs.begin(), xs.end());
    for (double x : xs) {
      if (reps_.empty() || x - reps_.back() > eps) reps_.push_back(x);
    }
    eps_ = eps;
  }

  double operator()(double x) const {
    auto it = std::lower_bound(reps_.begin(), reps_.end(), x - eps_);
    return (it != reps_.end() && std::fabs(*it - x) <= eps_) ? *it : x;
  }

  const std::vector<double>& points() const { return reps_; }

 private:
  std::vector<double> reps_;
  double eps_ = 0.0;
};

bool same_density(double a, double b) { return std::fabs(a - b) <= 1e-12 * std::max(std::fabs(a), std::fabs(b)); }

// Relative spread of the projected densities; 1 when some segment is
// (numerically) perpendicular to u.
double nonconstancy(const SegmentMeasure& s, Vec2 u) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (const auto& seg : s.segments()) {
    const Vec2 d = seg.b - seg.a;
    const double along = std::fabs(dot(u, d));
    if (along <= 1e-12 * seg.length()) return 1.0;
    const double dens = seg.mass() / along;
    lo = std::min(lo, dens);
    hi = std::max(hi, dens);
  }
  return (hi - lo) / hi;
}

// Clique search on Z_N for S ∋ 0 with |S| = n and S - S inside the zero set of the mask.
class SpectrumSearch {
 public:
  SpectrumSearch(const std::vector<std::int64_t>& cells, std::int64_t modulus)
      : n_(static_cast<std::int64_t>(cells.size())), modulus_(modulus), zero_(static_cast<std::size_t>(modulus), 0) {
    const double two_pi = 2.0 * std::numbers::pi;
    for (std::int64_t j = 1; j < modulus; ++j) {
      std::complex<double> sum{0.0, 0.0};
      for (std::int64_t a : cells) {
        const double angle = two_pi * static_cast<double>((a * j) % modulus) / static_cast<double>(modulus);
        sum += std::complex<double>(std::cos(angle), std::sin(angle));
      }
      zero_[static_cast<std::size_t>(j)] = std::abs(sum) <= 1e-9 * static_cast<double>(n_);
    }
  }

  bool run() {
    chosen_ = {0};
    return extend(1);
  }

  const std::vector<std::int64_t>& chosen() const { return chosen_; }
  bool budget_exhausted() const { return nodes_ >= kSpectrumSearchBudget; }

 private:
  bool compatible(std::int64_t j) const {
    for (std::int64_t s : chosen_) {
      if (!zero_[static_cast<std::size_t>(((j - s) % modulus_ + modulus_) % modulus_)]) return false;
    }
    return true;
  }

  bool extend(std::int64_t from) {
    if (static_cast<std::int64_t>(chosen_.size()) == n_) return true;
    if (++nodes_ >= kSpectrumSearchBudget) return false;
    for (std::int64_t j = from; j < modulus_; ++j) {
      if (!compatible(j)) continue;
      chosen_.push_back(j);
      if (extend(j + 1)) return true;
      chosen_.pop_back();
      if (nodes_ >= kSpectrumSearchBudget) return false;
    }
    return false;
  }

  std::int64_t n_;
  std::int64_t modulus_;
  std::vector<char> zero_;
  std::vector<std::int64_t> chosen_;
  std::int64_t nodes_ = 0;
};

}  // namespace

// --- ProjectionLine -----------------------------------------------------------

ProjectionLine::ProjectionLine(Vec2 u) : u_(u) {
  if (!std::isfinite(u.x) || !std::isfinite(u.y) || std::fabs(norm(u) - 1.0) > 1e-14) {
    throw Error(kModule, ErrorCode::InvalidArgument, "projection direction must be a unit vector");
  }
}

ProjectionLine ProjectionLine::along(Vec2 v) {
  const double len = norm(v);
  if (!(len > 0.0) || !std::isfinite(len)) {
    throw Error(kModule, ErrorCode::InvalidArgument, "direction must be a nonzero finite vector");
  }
  ProjectionLine l;
  l.u_ = {v.x / len, v.y / len};
  return l;
}

ProjectionLine ProjectionLine::from_angle(double theta) {
  ProjectionLine l;
  l.u_ = {std::cos(theta), std::sin(theta)};
  return l;
}

double ProjectionLine::angle() const {
  double a = std::atan2(u_.y, u_.x);
  if (a < 0.0) a += std::numbers::pi;
  if (a >= std::numbers::pi) a -= std::numbers::pi;
  return a;
}

ProjectionLine ProjectionLine::canonical() const {
  ProjectionLine l = *this;
  if (u_.y < 0.0 || (u_.y == 0.0 && u_.x < 0.0)) l.u_ = {-u_.x, -u_.y};
  if (l.u_.y == 0.0) l.u_.y = 0.0;  // drop a negative zero
  return l;
}

// --- project ------------------------------------------------------------------

double ProjectedMeasure::total_mass() const {
  double m = density.total_weight();
  for (const auto& a : atoms) m += a.mass;
  return m;
}

ProjectedMeasure project(const SegmentMeasure& s, const ProjectionLine& line) {
  const Vec2 u = line.u();
  ProjectedMeasure out;
  std::vector<Piece> pieces;
  double scale = 1.0;
  for (const auto& seg : s.segments()) {
    const double pa = dot(u, seg.a);
    const double pb = dot(u, seg.b);
    scale = std::max({scale, std::fabs(pa), std::fabs(pb)});
    const double along = std::fabs(pb - pa);
    if (along <= kPerpendicularTol * seg.length()) {
      out.atoms.push_back({pa, seg.mass()});
    } else {
      pieces.push_back({std::min(pa, pb), std::max(pa, pb), seg.mass() / along});
    }
  }
  std::sort(out.atoms.begin(), out.atoms.end(), [](const Atom& a, const Atom& b) { return a.position < b.position; });

  std::vector<double> ends;
  for (const auto& p : pieces) {
    ends.push_back(p.left);
    ends.push_back(p.right);
  }
  const EndpointSnap snap(ends, 1e-12 * scale);
  for (auto& p : pieces) {
    p.left = snap(p.left);
    p.right = snap(p.right);
  }

  // Elementary intervals between consecutive endpoints, with summed density.
  std::vector<Piece> elementary;
  const auto& pts = snap.points();
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const double a = pts[i];
    const double b = pts[i + 1];
    const double mid = 0.5 * (a + b);
    double dens = 0.0;
    int cover = 0;
    for (const auto& p : pieces) {
      if (p.left < mid && mid < p.right) {
        dens += p.density;
        ++cover;
      }
    }
    if (cover >= 2) {
      if (!out.overlap_regions.empty() && out.overlap_regions.back().second == a) {
        out.overlap_regions.back().second = b;
      } else {
        out.overlap_regions.emplace_back(a, b);
      }
    }
    if (cover == 0) continue;
    if (!elementary.empty() && elementary.back().right == a && same_density(elementary.back().density, dens)) {
      elementary.back().right = b;
    } else {
      elementary.push_back({a, b, dens});
    }
  }

  std::vector<WeightedInterval> ivs;
  for (const auto& e : elementary) {
    ivs.push_back({Scalar::from_double(e.left), Scalar::from_double(e.right), e.density});
  }
  out.density = IntervalUnion(std::move(ivs));
  out.injective = out.atoms.empty() && out.overlap_regions.empty();
  return out;
}

bool constancy_check(const ProjectedMeasure& p, double tol) {
  if (!p.atoms.empty() || p.density.empty()) return false;
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (const auto& iv : p.density.intervals()) {
    lo = std::min(lo, iv.weight);
    hi = std::max(hi, iv.weight);
  }
  return hi - lo <= tol * hi;
}

// --- constant lines -----------------------------------------------------------

std::vector<ConstantLine> find_constant_projection_lines(const SegmentMeasure& s, int angular_grid,
                                                         bool injective_only) {
  if (angular_grid < 8) throw Error(kModule, ErrorCode::InvalidArgument, "angular grid must have >= 8 points");
  const auto& segs = s.segments();

  std::vector<ConstantLine> found;
  auto consider = [&](ProjectionLine line, bool approximate) {
    line = line.canonical();
    const ProjectedMeasure pm = project(s, line);
    if (!constancy_check(pm, approximate ? 1e-6 : kConstancyTol)) return;
    if (injective_only && !pm.injective) return;
    for (const auto& f : found) {
      if (std::fabs(f.line.angle() - line.angle()) <= 1e-12) return;
    }
    found.push_back({line, pm.injective, approximate});
  };

  if (segs.size() == 1) {
    consider(ProjectionLine::along(segs[0].b - segs[0].a), false);
  } else if (segs.size() == 2) {
    const Vec2 d1 = segs[0].b - segs[0].a;
    const Vec2 d2 = segs[1].b - segs[1].a;
    const double m1 = segs[0].mass();
    const double m2 = segs[1].mass();
    for (double sign : {1.0, -1.0}) {
      const Vec2 w = m1 * d2 - (sign * m2) * d1;
      if (norm(w) > 1e-12 * (m1 * norm(d2) + m2 * norm(d1))) {
        consider(ProjectionLine::along({-w.y, w.x}), false);
      } else {
        // Parallel segments of matching density: every transversal line works.
        consider(ProjectionLine::along(d1), false);
      }
    }
  } else {
    const double pi = std::numbers::pi;
    auto objective = [&](double theta) { return nonconstancy(s, {std::cos(theta), std::sin(theta)}); };
    std::vector<double> f(static_cast<std::size_t>(angular_grid));
    const double h = pi / angular_grid;
    for (int j = 0; j < angular_grid; ++j) f[static_cast<std::size_t>(j)] = objective(j * h);
    for (int j = 0; j < angular_grid; ++j) {
      const double prev = f[static_cast<std::size_t>((j + angular_grid - 1) % angular_grid)];
      const double next = f[static_cast<std::size_t>((j + 1) % angular_grid)];
      const double here = f[static_cast<std::size_t>(j)];
      if (here > prev || here > next) continue;
      const auto [theta, value] = boost::math::tools::brent_find_minima(objective, (j - 1) * h, (j + 1) * h, 50);
      if (value < 1e-7) consider(ProjectionLine::from_angle(theta), true);
    }
  }
  std::sort(found.begin(), found.end(),
            [](const ConstantLine& a, const ConstantLine& b) { return a.line.angle() < b.line.angle(); });
  return found;
}

// --- line spectra -------------------------------------------------------------

LineSpectrumResult construct_line_spectrum(const SegmentMeasure& s, const ProjectionLine& line,
                                           std::int64_t search_denominator) {
  if (search_denominator < 1) throw Error(kModule, ErrorCode::InvalidArgument, "search denominator must be >= 1");
  const ProjectedMeasure pm = project(s, line);
  if (pm.density.empty()) throw Error(kModule, ErrorCode::NotConstant, "projected support has zero length");
  if (!pm.injective) throw Error(kModule, ErrorCode::NotInjective, "projection is not one-to-one");
  if (!constancy_check(pm, kConstancyTol)) {
    throw Error(kModule, ErrorCode::NotConstant, "projected density is not constant");
  }

  LineSpectrumResult res;
  const auto& ivs = pm.density.intervals();
  const double origin = ivs.front().left.to_double();
  double unit = std::numeric_limits<double>::infinity();
  for (const auto& iv : ivs) unit = std::min(unit, (iv.right - iv.left).to_double());
  res.scale = unit;

  std::vector<WeightedInterval> normalized;
  for (const auto& iv : ivs) {
    Rational l;
    Rational r;
    const double xl = (iv.left.to_double() - origin) / unit;
    const double xr = (iv.right.to_double() - origin) / unit;
    if (!rationalize(xl, kRationalizeDen, kRationalizeTol * std::max(1.0, std::fabs(xl)), l) ||
        !rationalize(xr, kRationalizeDen, kRationalizeTol * std::max(1.0, std::fabs(xr)), r) || !(l < r)) {
      res.reason = "support-not-commensurable";
      return res;
    }
    normalized.push_back({Scalar(l), Scalar(r), 1.0});
  }
  res.normalized_support = IntervalUnion(normalized);
  res.tiling = tiles_line(res.normalized_support);
  if (res.tiling->status == TilingStatus::does_not_tile) {
    res.reason = "support-does-not-tile";
    return res;
  }
  if (res.tiling->status == TilingStatus::unknown) {
    res.reason = "tiling-undecided";
    return res;
  }

  // In cell units the support is A + [0, 1]; Λ = S + Z is a spectrum when
  // |S| = |A| and A(e^{2πi(s - s')}) = 0 for distinct s, s' ∈ S.
  const auto& cells = res.tiling->cells;
  const std::int64_t period = res.tiling->complement->period_cells;
  for (std::int64_t m = 1; m <= search_denominator; ++m) {
    const std::int64_t modulus = m * period;
    SpectrumSearch search(cells, modulus);
    if (!search.run()) continue;

    std::vector<double> offsets;
    std::vector<Rational> exact;
    for (std::int64_t j : search.chosen()) {
      exact.emplace_back(j, modulus);
      offsets.push_back(static_cast<double>(j) / static_cast<double>(modulus));
    }
    std::vector<double> grid;
    for (int i = 0; i < 64; ++i) grid.push_back(i / 64.0);
    const auto identity = tiling_identity_check(PeriodicPoints{1.0, offsets}, static_cast<double>(cells.size()), grid,
                                                100.0);
    if (!identity.consistent) continue;

    // Cell length in the u-coordinate; the spectrum scales inversely.
    const double cell = unit * Scalar(res.tiling->cell_length).to_double();
    PeriodicLineSet cand;
    cand.direction = line.u();
    cand.period = 1.0 / cell;
    for (double o : offsets) cand.offsets.push_back(o / cell);
    res.candidate = std::move(cand);
    res.cell_spectrum = std::move(exact);
    res.identity = identity;
    res.reason = "constructed";
    return res;
  }
  res.reason = "search-exhausted";
  return res;
}

}  // namespace segspec
