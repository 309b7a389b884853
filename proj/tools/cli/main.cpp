// segspec command-line front end.
#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "segspec/acceptance.hpp"
#include "segspec/error.hpp"
#include "segspec/json_io.hpp"

namespace {

using namespace segspec;

constexpr int kExitOk = 0;
constexpr int kExitVerificationFailed = 1;
constexpr int kExitUsage = 2;

struct Common {
  std::string t = "0";
  std::string out;
  std::string format = "json";
  double tol = kMembershipTol;
};

// Writes the whole report once, to --out or stdout.
void emit(const Common& c, const std::string& text) {
  if (c.out.empty() || c.out == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(c.out, std::ios::binary);
  if (!f) throw Error("cli", ErrorCode::InvalidArgument, "cannot write " + c.out);
  f << text;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json envelope(const std::string& command, const Common& c) {
  return Json{{"schema", kSchemaVersion}, {"command", command}, {"metadata", metadata()}, {"tol", c.tol}};
}

Vec2 parse_vec(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw Error("cli", ErrorCode::ParseError, "expected x,y but got " + text);
  return {Scalar::parse(text.substr(0, comma)).to_double(), Scalar::parse(text.substr(comma + 1)).to_double()};
}

std::vector<double> unit_grid(int n) {
  if (n < 2) throw Error("cli", ErrorCode::InvalidArgument, "grid needs at least two points");
  std::vector<double> g;
  for (int i = 0; i < n; ++i) g.push_back(static_cast<double>(i) / (n - 1));
  return g;
}

void add_common(CLI::App* app, Common& c, bool with_t = true) {
  if (with_t) app->add_option("--t", c.t, "parameter t: p/q, decimal, or c*sqrt(r)+p/q")->capture_default_str();
  app->add_option("--out", c.out, "output path (default stdout)");
  app->add_option("--format", c.format, "json or csv")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
  app->add_option("--tol", c.tol, "zero tolerance on |rho_hat|")->check(CLI::PositiveNumber)->capture_default_str();
}

// --- zeroset --------------------------------------------------------------------

struct ZerosetArgs {
  Common c;
  double window = 5.0;
  std::int64_t k_min = 0;
  std::int64_t k_max = 0;
  double step = 0.05;
};

int run_zeroset(const ZerosetArgs& a) {
  const SymmetricAdditiveMeasure m(Scalar::parse(a.c.t));
  RootOptions ro;
  ro.initial_step = a.step;
  ro.verify_tol = a.c.tol;
  std::vector<LineRoot> all;
  for (std::int64_t k = a.k_min; k <= a.k_max; ++k) {
    const auto roots = line_roots(m, LineWindow{k, -a.window, a.window}, ro);
    all.insert(all.end(), roots.begin(), roots.end());
  }
  if (a.c.format == "csv") {
    std::ostringstream os;
    write_roots_csv(os, all);
    emit(a.c, os.str());
  } else {
    Json j = envelope("zeroset", a.c);
    j["t"] = to_json(m.t());
    j["window"] = a.window;
    j["step"] = a.step;
    j["refine_tol"] = ro.refine_tol;
    Json roots = Json::array();
    for (const auto& r : all) roots.push_back(to_json(r));
    j["roots"] = std::move(roots);
    emit(a.c, dump(j));
  }
  return kExitOk;
}

// --- pack -----------------------------------------------------------------------

struct PackArgs {
  Common c;
  double window = 5.0;
  double step = 0.05;
  std::string mode = "lines";
};

int run_pack(const PackArgs& a) {
  const SymmetricAdditiveMeasure m(Scalar::parse(a.c.t));
  PackingOptions opts;
  opts.mode = a.mode == "integers" ? PackingMode::integers : PackingMode::lines;
  opts.tol = a.c.tol;
  const auto pack = greedy_pack(m, a.window, a.step, opts);
  Json j = envelope("pack", a.c);
  j["window"] = a.window;
  j["step"] = a.step;
  j["mode"] = a.mode;
  j["candidate"] = to_json(CandidateDocument{m.t(), pack});
  j["stats"] = to_json(packing_stats(m, pack, a.c.tol));
  emit(a.c, dump(j));
  return kExitOk;
}

// --- verify ---------------------------------------------------------------------

struct VerifyArgs {
  Common c;
  std::string candidate;
  double window = 50.0;
  double identity_window = 400.0;
  int grid = 101;
};

int run_verify(const VerifyArgs& a) {
  const auto doc = candidate_from_json(read_json_file(a.candidate));
  const SymmetricAdditiveMeasure m(doc.t);
  const auto orth = verify_orthogonal(m, doc.candidate, a.window, a.c.tol);

  LineSample first;
  if (const auto* p = std::get_if<PeriodicLineSet>(&doc.candidate)) {
    PeriodicPoints pp;
    pp.period = p->period * std::fabs(p->direction.x);
    for (double o : p->offsets) pp.offsets.push_back(o * p->direction.x);
    if (!(pp.period > 0.0)) throw Error("cli", ErrorCode::InvalidArgument, "line is perpendicular to the first axis");
    first = pp;
  } else {
    std::vector<double> xs;
    for (const auto& p : enumerate(doc.candidate, a.identity_window)) xs.push_back(p.at.l1);
    first = xs;
  }
  const auto grid = unit_grid(a.grid);
  const auto id = tiling_identity_check(first, 2.0, grid, a.identity_window);

  if (a.c.format == "csv") {
    std::ostringstream os;
    write_identity_csv(os, id);
    emit(a.c, os.str());
  } else {
    Json j = envelope("verify", a.c);
    j["t"] = to_json(doc.t);
    j["orthogonality"] = to_json(orth);
    j["identity"] = to_json(id);
    emit(a.c, dump(j));
  }
  return orth.ok ? kExitOk : kExitVerificationFailed;
}

// --- project --------------------------------------------------------------------

struct ProjectArgs {
  Common c;
  std::string segments;
  std::string direction;
  int angular_grid = 360;
  std::int64_t search_denominator = kDefaultSearchDenominator;
};

int run_project(const ProjectArgs& a) {
  std::optional<SymmetricAdditiveMeasure> rho;
  SegmentMeasure s = [&] {
    if (!a.segments.empty()) return segments_from_json(read_json_file(a.segments));
    rho.emplace(Scalar::parse(a.c.t));
    return rho->to_segments();
  }();
  const ProjectionLine line = a.direction.empty()
                                  ? ProjectionLine({1.0 / std::numbers::sqrt2, -1.0 / std::numbers::sqrt2})
                                  : ProjectionLine::along(parse_vec(a.direction));
  const auto pm = project(s, line);
  Json j = envelope("project", a.c);
  if (rho) j["t"] = to_json(rho->t());
  j["line"] = to_json(line);
  j["projection"] = to_json(pm);
  j["constant"] = constancy_check(pm);
  Json lines = Json::array();
  for (const auto& l : find_constant_projection_lines(s, a.angular_grid)) lines.push_back(to_json(l));
  j["constant_lines"] = lines.empty() ? Json("no-line-found") : std::move(lines);
  if (pm.injective && constancy_check(pm)) {
    const auto res = construct_line_spectrum(s, line, a.search_denominator);
    j["construction"] = to_json(res);
    if (res.candidate && rho) {
      const auto orth = verify_orthogonal(*rho, *res.candidate, 50.0, a.c.tol);
      j["construction"]["orthogonality"] = to_json(orth);
      j["candidate"] = to_json(CandidateDocument{rho->t(), *res.candidate});
      if (!orth.ok) {
        emit(a.c, dump(j));
        return kExitVerificationFailed;
      }
    }
  } else {
    j["construction"] = Json{{"reason", pm.injective ? "projection-not-constant" : "projection-not-injective"}};
  }
  emit(a.c, dump(j));
  return kExitOk;
}

// --- tile -----------------------------------------------------------------------

struct TileArgs {
  Common c;
  std::string intervals;
  std::int64_t period_bound = kDefaultPeriodBound;
};

int run_tile(const TileArgs& a) {
  const auto u = interval_union_from_json(read_json_file(a.intervals));
  const auto d = tiles_line(u, a.period_bound);
  Json j = envelope("tile", a.c);
  j["intervals"] = to_json(u);
  j["decision"] = to_json(d);
  emit(a.c, dump(j));
  return kExitOk;
}

// --- diagnose -------------------------------------------------------------------

struct DiagnoseArgs {
  Common c;
  std::string candidate;
  std::vector<double> windows{10.0, 20.0, 30.0};
  double step = 0.05;
  double bump_center = std::nan("");
  double bump_radius = 0.1;
  double precision = 1e-9;
  std::string csv;
};

int run_diagnose(const DiagnoseArgs& a) {
  std::optional<CandidateDocument> given;
  if (!a.candidate.empty()) given = candidate_from_json(read_json_file(a.candidate));
  const SymmetricAdditiveMeasure m(given ? given->t : Scalar::parse(a.c.t));
  m.require_not_plus_space("cli");
  const double center = std::isnan(a.bump_center) ? m.t_value() + 0.5 : a.bump_center;
  const SmoothBump bump{center, a.bump_radius};

  auto candidate_for = [&](double w) -> SpectrumCandidate {
    if (given) return given->candidate;
    return greedy_pack(m, w, a.step);
  };

  Json j = envelope("diagnose", a.c);
  j["t"] = to_json(m.t());
  j["bump"] = Json{{"center", center}, {"radius", a.bump_radius}};
  Json series = Json::array();
  Json fractional = Json::array();
  std::ostringstream csv;
  csv.precision(17);
  csv << "window,defect\n";
  for (double w : a.windows) {
    const auto c = candidate_for(w);
    Json entry{{"window", w}};
    entry["bump"] = to_json(parseval_defect(m, bump, c, w));
    entry["indicator"] = to_json(parseval_defect(m, IndicatorHorizontal{}, c, w));
    csv << w << ',' << entry["bump"]["defect"].get<double>() << '\n';
    series.push_back(std::move(entry));
    Json fr = to_json(fractional_part_analysis(m, c, a.precision, w));
    fr["window"] = w;
    fractional.push_back(std::move(fr));
  }
  j["defect_series"] = std::move(series);
  j["fractional_parts"] = std::move(fractional);

  const bool intersecting = m.t() > Scalar::ratio(-1, 2) && m.t() < Scalar(0);
  if (intersecting && !a.windows.empty()) {
    const double w = a.windows.back();
    j["periodicity_certificate"] = to_json(periodicity_certificate(m, candidate_for(w), bump, w));
  } else {
    j["periodicity_certificate"] = nullptr;
  }
  if (!a.csv.empty()) {
    std::ofstream f(a.csv, std::ios::binary);
    if (!f) throw Error("cli", ErrorCode::InvalidArgument, "cannot write " + a.csv);
    f << csv.str();
  }
  if (a.c.format == "csv") {
    emit(a.c, csv.str());
  } else {
    emit(a.c, dump(j));
  }
  return kExitOk;
}

// --- paper-suite ----------------------------------------------------------------

struct SuiteArgs {
  Common c;
  std::vector<int> only;
};

int run_suite(const SuiteArgs& a) {
  acceptance::Suite suite;
  std::vector<acceptance::CriterionResult> results;
  if (a.only.empty()) {
    results = suite.run_all();
  } else {
    for (int id : a.only) results.push_back(suite.run(id));
  }
  bool all = true;
  Json j = envelope("paper-suite", a.c);
  Json arr = Json::array();
  for (const auto& r : results) {
    std::cerr << acceptance::summary_line(r) << '\n';
    all = all && r.pass;
    arr.push_back(Json{{"id", r.id}, {"title", r.title}, {"pass", r.pass}, {"detail", r.detail}, {"report", r.report}});
  }
  j["criteria"] = std::move(arr);
  if (!a.c.out.empty()) emit(a.c, dump(j));
  return all ? kExitOk : kExitVerificationFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectrality toolkit for measures on unions of line segments"};
  app.require_subcommand(1);

  ZerosetArgs zs;
  auto* zeroset = app.add_subcommand("zeroset", "roots of rho_hat on the lines of H2");
  add_common(zeroset, zs.c);
  zeroset->add_option("--window", zs.window, "scan x in [-window, window]")->check(CLI::PositiveNumber);
  zeroset->add_option("--k-min", zs.k_min, "first line index");
  zeroset->add_option("--k-max", zs.k_max, "last line index");
  zeroset->add_option("--grid", zs.step, "initial bisection step")->check(CLI::PositiveNumber);

  PackArgs pk;
  auto* pack = app.add_subcommand("pack", "greedy orthogonal packing and its statistics");
  add_common(pack, pk.c);
  pack->add_option("--window", pk.window, "|lambda_1| bound")->check(CLI::PositiveNumber);
  pack->add_option("--grid", pk.step, "root grid step")->check(CLI::PositiveNumber);
  pack->add_option("--mode", pk.mode, "lines or integers")->check(CLI::IsMember({"lines", "integers"}));

  VerifyArgs vf;
  auto* verify = app.add_subcommand("verify", "orthogonality and tiling identity for a candidate file");
  add_common(verify, vf.c, false);
  verify->add_option("candidate", vf.candidate, "candidate JSON")->required();
  verify->add_option("--window", vf.window, "enumeration window")->check(CLI::PositiveNumber);
  verify->add_option("--identity-window", vf.identity_window, "truncation window of the identity")
      ->check(CLI::PositiveNumber);
  verify->add_option("--grid", vf.grid, "grid points on [0,1]")->check(CLI::Range(2, 100000));

  ProjectArgs pj;
  auto* proj = app.add_subcommand("project", "projection, constancy, constant lines and line spectra");
  add_common(proj, pj.c);
  proj->add_option("--segments", pj.segments, "segment configuration JSON (default: rho for --t)");
  proj->add_option("--direction", pj.direction, "line direction x,y (default 1,-1)");
  proj->add_option("--grid", pj.angular_grid, "angular grid for three or more segments")->check(CLI::Range(8, 1000000));
  proj->add_option("--search-denominator", pj.search_denominator, "offset refinement bound")
      ->check(CLI::Range(1, 1024));

  TileArgs tl;
  auto* tile = app.add_subcommand("tile", "decide whether an interval union tiles the line");
  add_common(tile, tl.c, false);
  tile->add_option("intervals", tl.intervals, "interval-union JSON")->required();
  tile->add_option("--period-bound", tl.period_bound, "period cap in multiples of the diameter")
      ->check(CLI::Range(1, 100000));

  DiagnoseArgs dg;
  auto* diagnose = app.add_subcommand("diagnose", "Parseval defects, periodicity certificate, fractional parts");
  add_common(diagnose, dg.c);
  diagnose->add_option("--candidate", dg.candidate, "candidate JSON (default: greedy packing per window)");
  diagnose->add_option("--window", dg.windows, "windows of the defect series")->delimiter(',');
  diagnose->add_option("--grid", dg.step, "root grid step for packings")->check(CLI::PositiveNumber);
  diagnose->add_option("--bump-center", dg.bump_center, "bump center (default t + 1/2)");
  diagnose->add_option("--bump-radius", dg.bump_radius, "bump radius")->check(CLI::PositiveNumber);
  diagnose->add_option("--precision", dg.precision, "fractional-part clustering")->check(CLI::PositiveNumber);
  diagnose->add_option("--csv", dg.csv, "write the (window, defect) series here");

  SuiteArgs st;
  auto* suite = app.add_subcommand("paper-suite", "run the acceptance matrix");
  add_common(suite, st.c, false);
  suite->add_option("--criterion", st.only, "run only these criteria")->check(CLI::Range(1, 8));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (zeroset->parsed()) return run_zeroset(zs);
    if (pack->parsed()) return run_pack(pk);
    if (verify->parsed()) return run_verify(vf);
    if (proj->parsed()) return run_project(pj);
    if (tile->parsed()) return run_tile(tl);
    if (diagnose->parsed()) return run_diagnose(dg);
    if (suite->parsed()) return run_suite(st);
  } catch (const Error& e) {
    std::cerr << e.qualified_code() << ": " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "cli/InternalError: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
