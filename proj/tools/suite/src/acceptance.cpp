#include "segspec/acceptance.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "segspec/error.hpp"
#include "segspec/quadrature.hpp"

namespace segspec::acceptance {
namespace {

const ProjectionLine& anti_diagonal() {
  static const ProjectionLine line({1.0 / std::numbers::sqrt2, -1.0 / std::numbers::sqrt2});
  return line;
}

PeriodicLineSet reference_candidate() {
  return PeriodicLineSet{anti_diagonal().u(), 1.0 / std::numbers::sqrt2, {0.0}};
}

std::vector<double> unit_grid(int n) {
  std::vector<double> g;
  for (int i = 0; i < n; ++i) g.push_back(static_cast<double>(i) / (n - 1));
  return g;
}

// First coordinates of a periodic line set, as a periodic sample on R.
PeriodicPoints first_coordinates(const PeriodicLineSet& c) {
  PeriodicPoints p;
  p.period = c.period * std::fabs(c.direction.x);
  for (double o : c.offsets) p.offsets.push_back(o * c.direction.x);
  return p;
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(3);
  os << v;
  return os.str();
}

struct ReferenceCheck {
  bool pass = false;
  Json report;
  std::string detail;
};

// Orthogonality over the window plus the level-2 identity on the first coordinates.
ReferenceCheck check_line_candidate(const SymmetricAdditiveMeasure& m, const PeriodicLineSet& c) {
  ReferenceCheck out;
  const auto orth = verify_orthogonal(m, c, kOrthogonalityWindow, kOrthogonalityTol);
  const auto grid = unit_grid(kIdentityGridPoints);
  const auto id = tiling_identity_check(first_coordinates(c), 2.0, grid, kIdentityWindow);
  out.pass = orth.ok && id.max_residual <= id.truncation_bound;
  Json idj = to_json(id);
  idj.erase("grid");
  idj.erase("sums");
  idj.erase("residuals");
  out.report = Json{{"orthogonality", to_json(orth)}, {"identity", idj}};
  out.detail = "max|rho_hat|=" + fmt(orth.max_abs_rho_hat) + " residual=" + fmt(id.max_residual) +
               " bound=" + fmt(id.truncation_bound);
  return out;
}

Rational random_rational(std::mt19937_64& rng, std::int64_t num_lo, std::int64_t num_hi_per_den) {
  std::uniform_int_distribution<std::int64_t> den_dist(1, kTilingMaxDenominator);
  const std::int64_t q = den_dist(rng);
  std::uniform_int_distribution<std::int64_t> num_dist(num_lo * q, num_hi_per_den * q);
  return Rational(num_dist(rng), q);
}

}  // namespace

std::string summary_line(const CriterionResult& r) {
  return std::string(r.pass ? "[PASS] " : "[FAIL] ") + std::to_string(r.id) + " " + r.title + ": " + r.detail;
}

void Suite::collect(std::string label, const Scalar& t, SpectrumCandidate c, double window) {
  collected_.push_back({std::move(label), t, std::move(c), window});
}

CriterionResult Suite::run(int id) {
  switch (id) {
    case 1: return reference_spectrum();
    case 2: return projection_construction();
    case 3: return zero_set_structure();
    case 4: return two_interval_oracle();
    case 5: return intersecting_certificate();
    case 6: return irrational_diagnostics();
    case 7: return cross_validation();
    case 8: return bessel_suite();
    default: throw Error("cli", ErrorCode::InvalidArgument, "no acceptance criterion " + std::to_string(id));
  }
}

std::vector<CriterionResult> Suite::run_all() {
  std::vector<CriterionResult> out;
  for (int id : ids()) out.push_back(run(id));
  return out;
}

CriterionResult Suite::reference_spectrum() {
  CriterionResult r{1, "t=0 reference spectrum", false, {}, {}};
  const SymmetricAdditiveMeasure m(Scalar(0));
  const auto c = reference_candidate();
  const auto check = check_line_candidate(m, c);
  collect("t=0 reference", m.t(), c, kOrthogonalityWindow);
  r.pass = check.pass;
  r.detail = check.detail;
  r.report = check.report;
  return r;
}

CriterionResult Suite::projection_construction() {
  CriterionResult r{2, "projection construction", true, {}, Json::array()};
  int built = 0;
  int refused = 0;
  for (const char* t : {"0", "1/2", "1", "3/2", "2"}) {
    const SymmetricAdditiveMeasure m(Scalar::parse(t));
    const auto res = construct_line_spectrum(m.to_segments(), anti_diagonal());
    Json entry{{"t", t}, {"reason", res.reason}};
    bool ok = res.candidate.has_value();
    if (ok) {
      const auto check = check_line_candidate(m, *res.candidate);
      ok = check.pass;
      entry["checks"] = check.report;
      entry["period"] = res.candidate->period;
      entry["offsets"] = res.candidate->offsets;
      collect(std::string("t=") + t + " projection", m.t(), *res.candidate, kOrthogonalityWindow);
    }
    built += ok ? 1 : 0;
    entry["pass"] = ok;
    r.pass = r.pass && ok;
    r.report.push_back(std::move(entry));
  }
  for (const char* t : {"1/4", "1/3", "3/4"}) {
    const SymmetricAdditiveMeasure m(Scalar::parse(t));
    const auto res = construct_line_spectrum(m.to_segments(), anti_diagonal());
    const bool ok = !res.candidate && res.reason == "support-does-not-tile";
    refused += ok ? 1 : 0;
    r.pass = r.pass && ok;
    r.report.push_back(Json{{"t", t}, {"reason", res.reason}, {"pass", ok}});
  }
  r.detail = std::to_string(built) + "/5 constructed and verified, " + std::to_string(refused) +
             "/3 refused as support-does-not-tile";
  return r;
}

CriterionResult Suite::zero_set_structure() {
  CriterionResult r{3, "zero-set structure", true, {}, Json::object()};
  std::vector<std::int64_t> expected;
  for (std::int64_t n = -10; n <= 10; ++n) {
    if (n != 0) expected.push_back(n);
  }
  Json diag = Json::array();
  int diag_ok = 0;
  for (const char* t : {"-1/4", "0", "1/3", "1", "sqrt(2)"}) {
    const SymmetricAdditiveMeasure m(Scalar::parse(t));
    bool ok = false;
    try {
      ok = diagonal_zeros(m, -10.5, 10.5) == expected;
    } catch (const std::logic_error&) {
      ok = false;
    }
    diag_ok += ok ? 1 : 0;
    r.pass = r.pass && ok;
    diag.push_back(Json{{"t", t}, {"pass", ok}});
  }
  r.report["diagonal"] = std::move(diag);

  const SymmetricAdditiveMeasure m0(Scalar(0));
  const std::vector<double> target{-2.0, -1.0, -0.5, 0.0, 1.0};
  const auto roots = line_roots(m0, LineWindow{1, -2.2, 1.2});
  bool line_ok = roots.size() == target.size();
  for (std::size_t i = 0; line_ok && i < roots.size(); ++i) {
    line_ok = std::fabs(roots[i].x - target[i]) <= kRootMatchTol && roots[i].abs_rho_hat <= kRootTol;
  }
  Json found = Json::array();
  std::string found_text;
  for (const auto& root : roots) {
    found.push_back(to_json(root));
    found_text += (found_text.empty() ? "" : ",") + fmt(root.x);
  }
  // Residuals at the expected points show which of them are zeros at all.
  Json at_target = Json::array();
  for (double x : target) {
    at_target.push_back(Json{{"x", x}, {"abs_rho_hat", std::abs(rho_hat(m0, {x, x + 1.0}))}});
  }
  r.report["line_k1"] = Json{{"expected", target}, {"found", found}, {"abs_rho_hat_at_expected", at_target},
                             {"pass", line_ok}};
  r.pass = r.pass && line_ok;
  r.detail = std::to_string(diag_ok) + "/5 diagonal sets exact; line k=1 roots {" + found_text +
             "} vs expected {-2,-1,-0.5,0,1}";
  return r;
}

CriterionResult Suite::two_interval_oracle() {
  CriterionResult r{4, "two-interval tiling oracle", false, {}, Json::object()};
  std::mt19937_64 rng(kSeed);
  std::bernoulli_distribution integer_ratio(0.5);
  std::uniform_int_distribution<std::int64_t> multiple(0, 5);
  int decided = 0, agree = 0, unknown = 0, tiles = 0;
  Json failures = Json::array();
  for (int i = 0; i < kTilingInstances; ++i) {
    const Rational a = random_rational(rng, -2, 2);
    Rational len = random_rational(rng, 0, 2);
    if (len == 0) len = Rational(1, 12);
    const Rational gap = integer_ratio(rng) ? Rational(multiple(rng)) * len : random_rational(rng, 0, 4);
    const IntervalUnion u({{Scalar(a), Scalar(a + len), 1.0}, {Scalar(a + len + gap), Scalar(a + 2 * len + gap), 1.0}});
    const auto d = tiles_line(u);
    const bool closed = boost::multiprecision::denominator(Rational(gap / len)) == 1;
    if (d.status == TilingStatus::unknown) {
      ++unknown;
    } else {
      ++decided;
      const bool match = (d.status == TilingStatus::tiles) == closed;
      agree += match ? 1 : 0;
      tiles += d.status == TilingStatus::tiles ? 1 : 0;
      if (!match) failures.push_back(to_json(u));
    }
  }
  r.pass = decided == agree && unknown == 0;
  r.report = Json{{"instances", kTilingInstances}, {"decided", decided}, {"agree", agree},
                  {"unknown", unknown}, {"tiles", tiles}, {"seed", kSeed}, {"disagreements", failures}};
  r.detail = std::to_string(agree) + "/" + std::to_string(decided) + " decided cases agree, " +
             std::to_string(unknown) + " unknown, " + std::to_string(tiles) + " tile";
  return r;
}

CriterionResult Suite::intersecting_certificate() {
  CriterionResult r{5, "intersecting-regime certificate (t=-1/4)", false, {}, Json::object()};
  const SymmetricAdditiveMeasure m(Scalar::ratio(-1, 4));
  const SmoothBump bump{0.5, 0.1};

  const auto pack = greedy_pack(m, 20.0, kPackingStep);
  bool all_h2 = true;
  for (const auto& p : pack.points) {
    const auto g = p.is_exact() ? classify(m, Scalar(*p.exact_l1), Scalar(*p.exact_l2)) : classify(m, p.at);
    all_h2 = all_h2 && g.in_h2;
  }
  const auto cert = periodicity_certificate(m, pack, bump, 20.0);
  collect("t=-1/4 greedy window 20", m.t(), pack, 20.0);

  Json trajectory = Json::array();
  bool monotone = true;
  bool nonnegative = true;
  std::optional<double> previous;
  for (double w : {10.0, 20.0, 30.0}) {
    const auto c = greedy_pack(m, w, kPackingStep);
    collect("t=-1/4 greedy window " + fmt(w), m.t(), c, w);
    const auto rep = parseval_defect(m, bump, c, w);
    if (previous && rep.defect > *previous) monotone = false;
    if (rep.defect < -kBesselSlack) nonnegative = false;
    previous = rep.defect;
    trajectory.push_back(to_json(rep));
  }
  const bool cert_ok = cert.all_in_h2 && cert.agreement_gap <= kCertificateGapTol && cert.value_contrast == 1.0;
  r.pass = all_h2 && cert_ok && monotone && nonnegative;
  r.report = Json{{"pack_size", pack.points.size()}, {"all_in_h2", all_h2}, {"certificate", to_json(cert)},
                  {"defect_trajectory", trajectory}, {"monotone", monotone}, {"nonnegative", nonnegative}};
  std::string traj;
  for (const auto& e : trajectory) traj += (traj.empty() ? "" : ",") + fmt(e.at("defect").get<double>());
  r.detail = "gap=" + fmt(cert.agreement_gap) + " contrast=" + fmt(cert.value_contrast) + " defects {" + traj + "}";
  return r;
}

CriterionResult Suite::irrational_diagnostics() {
  CriterionResult r{6, "irrational-regime diagnostics (t=sqrt(2))", true, {}, Json::array()};
  const SymmetricAdditiveMeasure m(Scalar::parse("sqrt(2)"));
  std::string counts;
  for (double w : {5.0, 10.0, 20.0}) {
    const auto pack = greedy_pack(m, w, kPackingStep);
    collect("t=sqrt(2) greedy window " + fmt(w), m.t(), pack, w);
    const auto rep = fractional_part_analysis(m, pack, kFractionalPrecision, w);
    const bool ok = rep.one_value_per_line && rep.precision_bits >= 128;
    r.pass = r.pass && ok;
    Json e = to_json(rep);
    e["window"] = w;
    e["pass"] = ok;
    r.report.push_back(std::move(e));
    counts += (counts.empty() ? "" : ", ") + std::string("W=") + fmt(w) + ": " + std::to_string(rep.distinct_count) +
              " values / " + std::to_string(rep.per_line_counts.size()) + " lines";
  }
  r.detail = counts;
  return r;
}

CriterionResult Suite::cross_validation() {
  CriterionResult r{7, "cross-validation", false, {}, Json::object()};
  std::mt19937_64 rng(kSeed + 7);
  std::uniform_real_distribution<double> t_dist(-1.0, 2.0);
  std::uniform_real_distribution<double> l_dist(-20.0, 20.0);
  double worst_seg = 0.0;
  double worst_quad = 0.0;
  for (int i = 0; i < kCrossValidationSamples; ++i) {
    double tv = t_dist(rng);
    if (std::fabs(tv + 0.5) < 1e-6) tv += 1e-3;
    const SymmetricAdditiveMeasure m(Scalar::from_double(tv));
    const FrequencyPoint lam{l_dist(rng), l_dist(rng)};
    const Complex direct = rho_hat(m, lam);
    const Complex seg = segment_measure_hat(m.to_segments(), lam);
    const auto part = [&](double xi) {
      return integrate([&](double s) { return 0.5 * std::polar(1.0, -2.0 * std::numbers::pi * xi * s); }, tv, tv + 1.0,
                       1e-13)
          .value;
    };
    const Complex quad = part(lam.l1) + part(lam.l2);
    worst_seg = std::max(worst_seg, std::abs(direct - seg));
    worst_quad = std::max({worst_quad, std::abs(direct - quad), std::abs(seg - quad)});
  }
  double worst_inner = 0.0;
  for (int i = 0; i < kInnerProductSamples; ++i) {
    const SymmetricAdditiveMeasure m(Scalar::from_double(t_dist(rng)));
    const FrequencyPoint lam{l_dist(rng), l_dist(rng)};
    const TestFunction f = (i % 2 == 0) ? TestFunction(IndicatorHorizontal{})
                                        : TestFunction(ExponentialProbe{l_dist(rng) / 4.0});
    worst_inner = std::max(worst_inner, std::abs(inner_product(m, f, lam) - inner_product_quadrature(m, f, lam)));
  }
  r.pass = worst_seg <= kCrossValidationTol && worst_quad <= kCrossValidationTol && worst_inner <= kCrossValidationTol;
  r.report = Json{{"samples", kCrossValidationSamples}, {"inner_product_samples", kInnerProductSamples},
                  {"tol", kCrossValidationTol}, {"max_rho_vs_segments", worst_seg},
                  {"max_vs_quadrature", worst_quad}, {"max_inner_product", worst_inner}};
  r.detail = "rho/segments " + fmt(worst_seg) + ", vs quadrature " + fmt(worst_quad) + ", inner products " +
             fmt(worst_inner);
  return r;
}

CriterionResult Suite::bessel_suite() {
  if (!collected_through_) {
    if (collected_.empty()) {
      reference_spectrum();
      projection_construction();
      intersecting_certificate();
      irrational_diagnostics();
    }
    collected_through_ = true;
  }
  CriterionResult r{8, "Bessel invariant", true, {}, Json::array()};
  std::size_t checks = 0;
  double worst = -std::numeric_limits<double>::infinity();
  for (const auto& c : collected_) {
    const SymmetricAdditiveMeasure m(c.t);
    const double mid = m.t_value() + 0.5;
    const std::vector<std::pair<std::string, TestFunction>> fs{
        {"indicator", IndicatorHorizontal{}},
        {"bump", SmoothBump{mid, 0.25}},
        {"probe", ExponentialProbe{0.37}},
    };
    for (const auto& [name, f] : fs) {
      const auto rep = parseval_defect(m, f, c.candidate, c.window);
      ++checks;
      worst = std::max(worst, rep.captured - rep.norm_sq);
      r.pass = r.pass && rep.bessel_ok;
      r.report.push_back(Json{{"candidate", c.label}, {"function", name}, {"captured", rep.captured},
                              {"norm_sq", rep.norm_sq}, {"bessel_ok", rep.bessel_ok}});
    }
  }
  r.detail = std::to_string(checks) + " candidate/function pairs, max(captured - norm_sq) = " + fmt(worst);
  return r;
}

}  // namespace segspec::acceptance
