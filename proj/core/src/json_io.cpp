#include "segspec/json_io.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "segspec/error.hpp"

namespace segspec {
namespace {

constexpr const char* kModule = "json-io";

[[noreturn]] void bad(const std::string& what) { throw Error(kModule, ErrorCode::ParseError, what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

void check_schema(const Json& j) {
  if (j.contains("schema") && j.at("schema") != kSchemaVersion) bad("unsupported schema version");
}

Json point_json(FrequencyPoint p) { return Json::array({p.l1, p.l2}); }

Vec2 vec_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2) bad("expected a two-element array");
  return {real_from_json(j[0]), real_from_json(j[1])};
}

Json optional_double(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

}  // namespace

Json metadata() { return Json{{"tool", "segspec"}, {"version", "0.1.0"}}; }

Json to_json(const Rational& q) { return rational_to_string(q); }

Json to_json(const Scalar& s) {
  if (s.is_exact()) return rational_to_string(s.rational());
  Json j{{"value", s.to_string()}, {"precision_bits", kHighRealBits}};
  if (!s.symbol().empty()) j["symbol"] = s.symbol();
  return j;
}

Json to_json(Complex z) { return Json{{"re", z.real()}, {"im", z.imag()}}; }

Scalar scalar_from_json(const Json& j) {
  try {
    if (j.is_string()) return Scalar::parse(j.get<std::string>());
    if (j.is_number_integer()) return Scalar(j.get<std::int64_t>());
    if (j.is_number()) return Scalar::parse(j.dump());
    if (j.is_object()) {
      if (j.contains("symbol")) return Scalar::parse(j.at("symbol").get<std::string>());
      const auto& v = field(j, "value");
      if (v.is_string()) {
        const std::string text = v.get<std::string>();
        if (text.find_first_of("eE.") != std::string::npos && text.find('/') == std::string::npos) {
          return Scalar::real(HighReal(text));
        }
        return Scalar::parse(text);
      }
      return scalar_from_json(v);
    }
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    bad(std::string("invalid scalar: ") + e.what());
  }
  bad("invalid scalar: " + j.dump());
}

double real_from_json(const Json& j) { return scalar_from_json(j).to_double(); }

// --- candidates ---------------------------------------------------------------

Json to_json(const CandidateDocument& doc) {
  Json j{{"schema", kSchemaVersion}, {"t", to_json(doc.t)}};
  if (const auto* w = std::get_if<WindowSet>(&doc.candidate)) {
    j["variant"] = "window";
    Json pts = Json::array();
    for (const auto& p : w->points) {
      Json e;
      if (p.is_exact()) {
        e["l1"] = to_json(*p.exact_l1);
        e["l2"] = to_json(*p.exact_l2);
      } else {
        e["l1"] = p.at.l1;
        e["l2"] = p.at.l2;
      }
      if (p.line) e["k"] = *p.line;
      pts.push_back(std::move(e));
    }
    j["points"] = std::move(pts);
  } else {
    const auto& p = std::get<PeriodicLineSet>(doc.candidate);
    j["variant"] = "periodic-line";
    j["direction"] = Json::array({p.direction.x, p.direction.y});
    j["period"] = p.period;
    j["offsets"] = p.offsets;
  }
  return j;
}

CandidateDocument candidate_from_json(const Json& j) {
  check_schema(j);
  CandidateDocument doc{scalar_from_json(field(j, "t")), WindowSet{}};
  const std::string variant = field(j, "variant").get<std::string>();
  if (variant == "window") {
    WindowSet w;
    for (const auto& e : field(j, "points")) {
      const Json& a = e.is_array() ? e.at(0) : field(e, "l1");
      const Json& b = e.is_array() ? e.at(1) : field(e, "l2");
      const Scalar x = scalar_from_json(a);
      const Scalar y = scalar_from_json(b);
      SpectrumPoint p;
      // Float literals are taken as the doubles they came from; exact points
      // are written as strings.
      if (x.is_exact() && y.is_exact() && !a.is_number_float() && !b.is_number_float()) {
        p = SpectrumPoint::exact(x.rational(), y.rational());
      } else {
        p.at = {x.to_double(), y.to_double()};
      }
      if (e.is_object() && e.contains("k")) p.line = e.at("k").get<std::int64_t>();
      w.points.push_back(std::move(p));
    }
    doc.candidate = std::move(w);
  } else if (variant == "periodic-line") {
    PeriodicLineSet p;
    p.direction = vec_from_json(field(j, "direction"));
    const double len = norm(p.direction);
    if (std::fabs(len - 1.0) > 1e-9) bad("direction must be a unit vector");
    if (std::fabs(len - 1.0) > 4.0 * std::numeric_limits<double>::epsilon()) {
      p.direction = {p.direction.x / len, p.direction.y / len};
    }
    p.period = real_from_json(field(j, "period"));
    for (const auto& o : field(j, "offsets")) p.offsets.push_back(real_from_json(o));
    doc.candidate = std::move(p);
  } else {
    bad("unknown candidate variant \"" + variant + "\"");
  }
  validate(doc.candidate);
  return doc;
}

// --- segments and intervals ---------------------------------------------------

Json to_json(const SegmentMeasure& s) {
  Json segs = Json::array();
  for (const auto& seg : s.segments()) {
    segs.push_back(Json{{"a", Json::array({seg.a.x, seg.a.y})},
                        {"b", Json::array({seg.b.x, seg.b.y})},
                        {"density", seg.density}});
  }
  return Json{{"schema", kSchemaVersion}, {"segments", std::move(segs)}};
}

SegmentMeasure segments_from_json(const Json& j) {
  check_schema(j);
  std::vector<Segment> segs;
  for (const auto& e : field(j, "segments")) {
    Segment s;
    s.a = vec_from_json(field(e, "a"));
    s.b = vec_from_json(field(e, "b"));
    s.density = e.contains("density") ? real_from_json(e.at("density")) : 1.0;
    segs.push_back(s);
  }
  return SegmentMeasure(std::move(segs));
}

Json to_json(const IntervalUnion& u) {
  Json ivs = Json::array();
  for (const auto& iv : u.intervals()) {
    ivs.push_back(Json{{"left", to_json(iv.left)}, {"right", to_json(iv.right)}, {"weight", iv.weight}});
  }
  return Json{{"schema", kSchemaVersion}, {"intervals", std::move(ivs)}};
}

IntervalUnion interval_union_from_json(const Json& j) {
  check_schema(j);
  std::vector<WeightedInterval> ivs;
  for (const auto& e : field(j, "intervals")) {
    WeightedInterval iv;
    if (e.is_array()) {
      if (e.size() < 2 || e.size() > 3) bad("interval arrays are [left, right] or [left, right, weight]");
      iv.left = scalar_from_json(e[0]);
      iv.right = scalar_from_json(e[1]);
      if (e.size() == 3) iv.weight = real_from_json(e[2]);
    } else {
      iv.left = scalar_from_json(field(e, "left"));
      iv.right = scalar_from_json(field(e, "right"));
      if (e.contains("weight")) iv.weight = real_from_json(e.at("weight"));
    }
    ivs.push_back(std::move(iv));
  }
  return IntervalUnion(std::move(ivs));
}

// --- reports ------------------------------------------------------------------

Json to_json(const GroupMembership& g) {
  return Json{{"in_h1", g.in_h1},
              {"in_h2", g.in_h2},
              {"k", g.k ? Json(*g.k) : Json(nullptr)},
              {"residual", g.residual},
              {"exact", g.exact}};
}

Json to_json(const LineRoot& r) {
  return Json{{"k", r.k}, {"x", r.x}, {"y", r.y}, {"abs_rho_hat", r.abs_rho_hat}, {"tangential", r.tangential}};
}

Json to_json(const OrthogonalityReport& r) {
  Json v = Json::array();
  for (const auto& [a, b] : r.violations) v.push_back(Json::array({point_json(a), point_json(b)}));
  return Json{{"ok", r.ok},
              {"tol", r.tol},
              {"window", r.window},
              {"point_count", r.point_count},
              {"pairs_checked", r.pairs_checked},
              {"max_abs_rho_hat", r.max_abs_rho_hat},
              {"violations", std::move(v)}};
}

Json to_json(const PackingStats& s) {
  Json axis = Json::array();
  for (const auto& p : s.axis_points) axis.push_back(point_json(p));
  Json lines = Json::object();
  for (const auto& [k, n] : s.per_line_counts) lines[std::to_string(k)] = n;
  return Json{{"k_observed", optional_double(s.k_observed)},
              {"axis_points", std::move(axis)},
              {"gaps", s.gaps},
              {"per_line_counts", std::move(lines)},
              {"off_h2", s.off_h2},
              {"axis_multiplicity_first", s.axis_multiplicity_first},
              {"axis_multiplicity_second", s.axis_multiplicity_second}};
}

Json to_json(const TilingIdentityReport& r) {
  return Json{{"level", r.level},
              {"window", r.window},
              {"max_residual", r.max_residual},
              {"truncation_bound", r.truncation_bound},
              {"evaluation_slack", r.evaluation_slack},
              {"density_max", r.density_max},
              {"consistent", r.consistent},
              {"grid", r.grid},
              {"sums", r.sums},
              {"residuals", r.residuals}};
}

Json to_json(const TilingDecision& d) {
  Json j{{"schema", kSchemaVersion},
         {"status", std::string(to_string(d.status))},
         {"certificate", d.certificate},
         {"period_bound_used", d.period_bound_used},
         {"origin", to_json(d.origin)},
         {"cell_length", to_json(d.cell_length)},
         {"cells", d.cells}};
  if (d.complement) {
    Json offs = Json::array();
    for (const auto& o : d.complement->offsets) offs.push_back(to_json(o));
    j["complement"] = Json{{"offsets", std::move(offs)},
                           {"period", to_json(d.complement->period)},
                           {"cell_offsets", d.complement->cell_offsets},
                           {"period_cells", d.complement->period_cells}};
  } else {
    j["complement"] = nullptr;
  }
  j["witness"] = d.witness ? to_json(*d.witness) : Json(nullptr);
  j["closed_form"] = d.closed_form ? Json(*d.closed_form) : Json(nullptr);
  j["closed_form_agrees"] = d.closed_form_agrees;
  j["search_nodes"] = d.search_nodes;
  return j;
}

Json to_json(const GapComplexity& g) {
  return Json{{"quantum", g.quantum},
              {"distinct", g.distinct()},
              {"representatives", g.representatives},
              {"counts", g.counts},
              {"gap_count", g.gap_count}};
}

Json to_json(const PeriodDetection& p) {
  return Json{{"period", optional_double(p.period)},
              {"twice_period_integer", p.twice_period_integer},
              {"span", p.span},
              {"quantum", p.quantum}};
}

Json to_json(const ProjectionLine& l) {
  return Json{{"u", Json::array({l.u().x, l.u().y})}, {"angle", l.angle()}};
}

Json to_json(const ProjectedMeasure& p) {
  Json atoms = Json::array();
  for (const auto& a : p.atoms) atoms.push_back(Json{{"position", a.position}, {"mass", a.mass}});
  Json overlaps = Json::array();
  for (const auto& [a, b] : p.overlap_regions) overlaps.push_back(Json::array({a, b}));
  Json dens = Json::array();
  for (const auto& iv : p.density.intervals()) {
    dens.push_back(Json{{"left", iv.left.to_double()}, {"right", iv.right.to_double()}, {"density", iv.weight}});
  }
  return Json{{"density", std::move(dens)},
              {"atoms", std::move(atoms)},
              {"overlap_regions", std::move(overlaps)},
              {"injective", p.injective},
              {"total_mass", p.total_mass()}};
}

Json to_json(const ConstantLine& l) {
  Json j = to_json(l.line);
  j["injective"] = l.injective;
  j["approximate"] = l.approximate;
  return j;
}

Json to_json(const LineSpectrumResult& r) {
  Json j{{"reason", r.reason}, {"scale", r.scale}, {"normalized_support", to_json(r.normalized_support)}};
  j["tiling"] = r.tiling ? to_json(*r.tiling) : Json(nullptr);
  Json cs = Json::array();
  for (const auto& s : r.cell_spectrum) cs.push_back(to_json(s));
  j["cell_spectrum"] = std::move(cs);
  j["identity"] = r.identity ? to_json(*r.identity) : Json(nullptr);
  if (r.candidate) {
    j["candidate"] = Json{{"variant", "periodic-line"},
                          {"direction", Json::array({r.candidate->direction.x, r.candidate->direction.y})},
                          {"period", r.candidate->period},
                          {"offsets", r.candidate->offsets}};
  } else {
    j["candidate"] = nullptr;
  }
  return j;
}

Json to_json(const DefectReport& r) {
  return Json{{"norm_sq", r.norm_sq},
              {"captured", r.captured},
              {"defect", r.defect},
              {"bessel_slack", kBesselSlack},
              {"bessel_ok", r.bessel_ok},
              {"coefficient_decay", optional_double(r.coefficient_decay)},
              {"decay_samples", r.decay_samples},
              {"window", r.window},
              {"point_count", r.point_count},
              {"tail_bound", optional_double(r.tail_bound)}};
}

Json to_json(const PeriodicityCertificate& c) {
  return Json{{"t", to_json(c.t)},
              {"T", Json::array({to_json(c.period_component), to_json(-c.period_component)})},
              {"all_in_h2", c.all_in_h2},
              {"exact", c.exact},
              {"point_count", c.point_count},
              {"max_period_residual", c.max_period_residual},
              {"point_pair", Json::array({point_json(c.first_point), point_json(c.second_point)})},
              {"partial_sum_values", Json::array({to_json(c.first_value), to_json(c.second_value)})},
              {"agreement_gap", c.agreement_gap},
              {"f_values", Json::array({c.f_first, c.f_second})},
              {"value_contrast", c.value_contrast}};
}

Json to_json(const FractionalPartReport& r) {
  Json lines = Json::object();
  for (const auto& [k, n] : r.per_line_counts) lines[std::to_string(k)] = n;
  return Json{{"precision", r.precision},
              {"precision_bits", r.precision_bits},
              {"exact", r.exact},
              {"distinct_count", r.distinct_count},
              {"values", r.values},
              {"k_values", r.k_values},
              {"per_line_counts", std::move(lines)},
              {"off_h2", r.off_h2},
              {"max_on_nonzero_line", r.max_on_nonzero_line},
              {"one_value_per_line", r.one_value_per_line}};
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) bad("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    bad(path + ": " + e.what());
  }
}

}  // namespace segspec
