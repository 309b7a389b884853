#pragma once

#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "segspec/diagnostics.hpp"
#include "segspec/projection.hpp"
#include "segspec/spectra.hpp"
#include "segspec/tiling.hpp"
#include "segspec/zero_set.hpp"

namespace segspec {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "v1";

/// {"tool": ..., "version": ...}; no clock values, so reports are reproducible.
Json metadata();

/// Exact values as "p/q" strings; reals as {"value", "precision_bits", "symbol"}.
Json to_json(const Scalar& s);
Json to_json(const Rational& q);
Json to_json(Complex z);
/// Strings go through Scalar::parse, numbers through their shortest decimal
/// text (so 0.3 reads as 3/10), objects through their "value" field.
Scalar scalar_from_json(const Json& j);
double real_from_json(const Json& j);

struct CandidateDocument {
  Scalar t;
  SpectrumCandidate candidate;
};

Json to_json(const CandidateDocument& doc);
CandidateDocument candidate_from_json(const Json& j);

Json to_json(const SegmentMeasure& s);
SegmentMeasure segments_from_json(const Json& j);

Json to_json(const IntervalUnion& u);
IntervalUnion interval_union_from_json(const Json& j);

Json to_json(const GroupMembership& g);
Json to_json(const LineRoot& r);
Json to_json(const OrthogonalityReport& r);
Json to_json(const PackingStats& s);
Json to_json(const TilingIdentityReport& r);
Json to_json(const TilingDecision& d);
Json to_json(const GapComplexity& g);
Json to_json(const PeriodDetection& p);
Json to_json(const ProjectionLine& l);
Json to_json(const ProjectedMeasure& p);
Json to_json(const ConstantLine& l);
Json to_json(const LineSpectrumResult& r);
Json to_json(const DefectReport& r);
Json to_json(const PeriodicityCertificate& c);
Json to_json(const FractionalPartReport& r);

/// Reads a whole file as JSON; throws Error{ParseError} with the path.
Json read_json_file(const std::string& path);

}  // namespace segspec
