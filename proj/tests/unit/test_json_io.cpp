#include <gtest/gtest.h>

#include <cmath>

#include "segspec/error.hpp"
#include "segspec/json_io.hpp"

using namespace segspec;

TEST(JsonScalar, ExactAndRealForms) {
  EXPECT_EQ(to_json(Scalar::ratio(3, 4)), Json("3/4"));
  const Json r = to_json(Scalar::parse("sqrt(2)"));
  ASSERT_TRUE(r.is_object());
  EXPECT_EQ(r.at("symbol"), "sqrt(2)");
  EXPECT_EQ(r.at("precision_bits"), kHighRealBits);
  EXPECT_NEAR(scalar_from_json(r).to_double(), std::sqrt(2.0), 1e-15);
  EXPECT_EQ(scalar_from_json(Json("3/4")).rational(), Rational(3, 4));
  EXPECT_EQ(scalar_from_json(Json(0.3)).rational(), Rational(3, 10));
  EXPECT_EQ(scalar_from_json(Json(-2)).rational(), Rational(-2));
  EXPECT_THROW((void)scalar_from_json(Json::array()), Error);
}

TEST(JsonCandidate, WindowRoundTripKeepsExactness) {
  WindowSet w;
  w.points.push_back(SpectrumPoint::exact(0, 0));
  w.points.push_back(SpectrumPoint::exact(Rational(1, 2), Rational(-1, 2)));
  SpectrumPoint approx{{0.1234567890123, 2.5}};
  approx.line = 3;
  w.points.push_back(approx);
  const CandidateDocument doc{Scalar::ratio(1, 3), w};
  const Json j = to_json(doc);
  const auto back = candidate_from_json(j);
  EXPECT_EQ(back.t.rational(), Rational(1, 3));
  const auto& pts = std::get<WindowSet>(back.candidate).points;
  ASSERT_EQ(pts.size(), 3u);
  EXPECT_TRUE(pts[1].is_exact());
  EXPECT_EQ(*pts[1].exact_l2, Rational(-1, 2));
  EXPECT_FALSE(pts[2].is_exact());
  EXPECT_EQ(pts[2].at.l1, 0.1234567890123);
  EXPECT_EQ(pts[2].line, std::optional<std::int64_t>(3));
  EXPECT_EQ(to_json(back).dump(), j.dump());
}

TEST(JsonCandidate, PeriodicRoundTripIsBitExact) {
  const double s = 1.0 / std::sqrt(2.0);
  const CandidateDocument doc{Scalar::parse("sqrt(2)"), PeriodicLineSet{{s, -s}, 0.3 * s, {0.0, 0.1 * s}}};
  const auto back = candidate_from_json(Json::parse(to_json(doc).dump()));
  const auto& p = std::get<PeriodicLineSet>(back.candidate);
  EXPECT_EQ(p.direction.x, s);
  EXPECT_EQ(p.period, 0.3 * s);
  EXPECT_EQ(p.offsets[1], 0.1 * s);
}

TEST(JsonCandidate, SchemaAndShapeErrors) {
  Json j = Json::parse(R"({"schema":"v2","t":"0","variant":"window","points":[["0","0"]]})");
  try {
    (void)candidate_from_json(j);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ParseError);
  }
  EXPECT_THROW((void)candidate_from_json(Json::parse(R"({"t":"0","variant":"cloud"})")), Error);
  EXPECT_THROW((void)candidate_from_json(Json::parse(R"({"t":"0","variant":"window","points":[]})")), Error);
  EXPECT_THROW(
      (void)candidate_from_json(Json::parse(
          R"({"t":"0","variant":"periodic-line","direction":[1,1],"period":1,"offsets":[0]})")),
      Error);
}

TEST(JsonIntervals, ArrayAndObjectForms) {
  const auto a = interval_union_from_json(Json::parse(R"({"intervals":[["0","1"],["3/2","5/2",1]]})"));
  const auto b = interval_union_from_json(
      Json::parse(R"({"intervals":[{"left":"0","right":"1"},{"left":"3/2","right":"5/2"}]})"));
  EXPECT_EQ(to_json(a), to_json(b));
  EXPECT_EQ(interval_union_from_json(to_json(a)).intervals().size(), 2u);
  EXPECT_THROW((void)interval_union_from_json(Json::parse(R"({"intervals":[["0"]]})")), Error);
}

TEST(JsonSegments, RoundTrip) {
  const SegmentMeasure s({Segment{{0, 0}, {1, 0}, 0.5}, Segment{{0, 1}, {0, 2}, 2.0}});
  const auto back = segments_from_json(to_json(s));
  ASSERT_EQ(back.segments().size(), 2u);
  EXPECT_EQ(back.segments()[1].b, (Vec2{0.0, 2.0}));
  EXPECT_EQ(back.segments()[1].density, 2.0);
}

TEST(JsonTiling, DecisionCarriesComplementAndWitness) {
  const IntervalUnion tile({{Scalar(0), Scalar(1), 1.0}, {Scalar(2), Scalar(3), 1.0}});
  const Json j = to_json(tiles_line(tile));
  EXPECT_EQ(j.at("status"), "tiles");
  EXPECT_EQ(j.at("complement").at("period"), "4");
  EXPECT_EQ(j.at("complement").at("offsets"), Json::array({"0", "1"}));
  EXPECT_TRUE(j.at("witness").is_null());

  const IntervalUnion bad({{Scalar(0), Scalar(1), 1.0}, {Scalar::ratio(3, 2), Scalar::ratio(5, 2), 1.0}});
  const Json k = to_json(tiles_line(bad));
  EXPECT_EQ(k.at("status"), "does_not_tile");
  EXPECT_TRUE(k.at("complement").is_null());
  EXPECT_EQ(k.at("witness"), "7/4");
}

TEST(JsonReports, SerializationIsDeterministic) {
  const SymmetricAdditiveMeasure m(Scalar::ratio(1, 2));
  const auto pack = greedy_pack(m, 3.0, 0.05);
  const std::string a = to_json(packing_stats(m, pack)).dump();
  const std::string b = to_json(packing_stats(m, greedy_pack(m, 3.0, 0.05))).dump();
  EXPECT_EQ(a, b);
  EXPECT_EQ(metadata().at("tool"), "segspec");
  EXPECT_FALSE(metadata().contains("timestamp"));
}

TEST(JsonFiles, MissingFileIsParseError) {
  try {
    (void)read_json_file("/nonexistent/segspec.json");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ParseError);
  }
}
