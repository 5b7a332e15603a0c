#include <gtest/gtest.h>

#include <sstream>

#include "ffbsd/io/cache.hpp"
#include "ffbsd/io/report_json.hpp"
#include "ffbsd/io/spec_file.hpp"
#include "support/corpus.hpp"
#include "support/tempdir.hpp"

using namespace ffbsd;
using namespace ffbsd::io;

namespace {

bool has_float(const ojson& j) {
  if (j.is_number_float()) return true;
  if (j.is_structured())
    for (const auto& x : j) if (has_float(x)) return true;
  return false;
}

bsd::BSDReport report_for(const CurveSpecFile& s) {
  auto local = localred::local_data_all(s.curve);
  return bsd::assemble_report(s.curve, local, lseries::assemble_L(s.curve, local), s.mw);
}

}  // namespace

TEST(SpecFile, LoadsCorpus) {
  auto e1 = load_curve_spec(corpus::data_file("E1.json"));
  EXPECT_EQ(e1.name, "E1");
  EXPECT_EQ(e1.curve, corpus::E1());
  EXPECT_EQ(e1.known_sha, std::optional<Integer>(1));
  auto e2 = load_curve_spec(corpus::data_file("E2.json"));
  EXPECT_EQ(e2.curve, corpus::E2());
  ASSERT_EQ(e2.mw.generators.size(), 1u);
  auto e3 = load_curve_spec(corpus::data_file("E3.json"));
  EXPECT_EQ(e3.mw.torsion_points.size(), 1u);
  EXPECT_EQ(e3.mw.claimed_torsion_order, std::optional<std::int64_t>(2));
}

TEST(SpecFile, RationalFunctionCoordinates) {
  // 2P on E2 with x = (t^2 - 6t + 1)/4 written as num/den
  auto s = parse_curve_spec(json::parse(R"({"q": 5, "a": [0, -1], "b": [0, 1],
    "mw": {"generators": [{"x": {"num": [1, -6, 1], "den": [4]}, "y": [2, 0, 2, 2]}]}})"));
  ASSERT_EQ(s.mw.generators.size(), 1u);
  EXPECT_EQ(s.mw.generators[0], curve::point_mul(s.curve, 2, curve::KPoint::affine(funcfield::Poly::from_ints(s.curve.field(), {1}), funcfield::Poly::from_ints(s.curve.field(), {1}))));
}

TEST(SpecFile, ExtensionFieldCoefficients) {
  auto s = parse_curve_spec(json::parse(R"({"q": 25, "a": [[1, 1]], "b": [0, 1]})"));
  EXPECT_EQ(s.curve.field().q(), 25u);
  EXPECT_EQ(s.curve.a().coeff(0), s.curve.field().from_index(6));
  EXPECT_THROW(parse_curve_spec(json::parse(R"({"q": 25, "a": [[1, 1, 1]], "b": [0, 1]})")), InputError);
  EXPECT_THROW(parse_curve_spec(json::parse(R"({"q": 25, "a": [25], "b": [0, 1]})")), InputError);
}

TEST(SpecFile, Errors) {
  EXPECT_THROW(parse_curve_spec(json::parse(R"({"q": 3, "a": [1], "b": [0, 1]})")), UnsupportedError);
  EXPECT_THROW(parse_curve_spec(json::parse(R"({"q": 6, "a": [1], "b": [0, 1]})")), Error);
  EXPECT_THROW(parse_curve_spec(json::parse(R"({"a": [1], "b": [0, 1]})")), InputError);
  EXPECT_THROW(parse_curve_spec(json::parse(R"({"q": 5, "a": [], "b": []})")), InputError);
  EXPECT_THROW(parse_curve_spec(json::parse(R"({"q": 5, "a": [1], "b": [0, 1], "known_sha": 0})")), InputError);
  EXPECT_THROW(parse_curve_spec(json::parse(R"({"q": 5, "a": [1], "b": [0, 1], "height_normalization": "C"})")), InputError);
  try {
    parse_curve_spec(json::parse(R"({"q": 5, "a": [0, -1], "b": [0, 1], "mw": {"generators": [{"x": [1], "y": [2]}]}})"));
    FAIL();
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("point not on curve"), std::string::npos);
  }
  EXPECT_THROW(load_curve_spec("/nonexistent/curve.json"), InputError);
  TempDir d;
  EXPECT_THROW(load_curve_spec(d.write("bad.json", "{ not json")), InputError);
}

TEST(SpecFile, Normalization) {
  auto a = parse_curve_spec(json::parse(R"({"q": 5, "a": [1], "b": [0, 1], "height_normalization": "2^r"})"));
  EXPECT_EQ(a.normalization, std::optional<bsd::Normalization>(bsd::Normalization::B));
  auto b = parse_curve_spec(json::parse(R"({"q": 5, "a": [1], "b": [0, 1], "height_normalization": 1})"));
  EXPECT_EQ(b.normalization, std::optional<bsd::Normalization>(bsd::Normalization::A));
}

TEST(Place, Parsing) {
  const auto F = corpus::F5();
  EXPECT_TRUE(parse_place(F, "inf").is_infinity());
  EXPECT_EQ(parse_place(F, "t").uniformizer(), funcfield::Poly::t(F));
  EXPECT_EQ(parse_place(F, "t^2 + 2").uniformizer(), funcfield::Poly::from_ints(F, {2, 0, 1}));
  EXPECT_EQ(parse_place(F, "t - 1").uniformizer(), funcfield::Poly::from_ints(F, {4, 1}));
  EXPECT_EQ(parse_place(F, "1*t^1+3").uniformizer(), funcfield::Poly::from_ints(F, {3, 1}));
  EXPECT_THROW(parse_place(F, "t^2 + 1"), InputError);  // (t - 2)(t + 2)
  EXPECT_THROW(parse_place(F, "t +"), InputError);
  EXPECT_THROW(parse_place(F, "x + 1"), InputError);
  EXPECT_THROW(parse_place(F, ""), InputError);
}

TEST(ReportJson, NoFloatsAndStable) {
  auto s = load_curve_spec(corpus::data_file("E2.json"));
  auto j1 = report_to_json(report_for(s), s.name);
  auto j2 = report_to_json(report_for(s), s.name);
  EXPECT_FALSE(has_float(j1));
  EXPECT_EQ(j1.dump(2), j2.dump(2));
  EXPECT_EQ(j1["schema"], kReportSchema);
  EXPECT_EQ(j1["lseries"]["coefficients"], ojson::parse("[1, -5]"));
  EXPECT_EQ(j1["sha"]["analytic"], ojson::parse(R"({"num": 1, "den": 1})"));
  EXPECT_EQ(j1["regulator"]["det"], ojson::parse(R"({"num": 1, "den": 2})"));
  EXPECT_EQ(j1["lseries"]["leading_in_s"]["log_q_power"], 1);
}

TEST(ReportJson, BigIntegersBecomeStrings) {
  Integer big("123456789012345678901234567890");
  EXPECT_EQ(to_json(big), ojson("123456789012345678901234567890"));
  EXPECT_EQ(to_json(Integer(-7)), ojson(-7));
}

TEST(Cache, RoundTripAndHits) {
  TempDir d;
  std::ostringstream log;
  CountCache cache(d.path.string(), false, 1, log);
  lseries::FiberModel M(corpus::E2());
  auto a = cache.get_or_compute(M, 2);
  auto b = cache.get_or_compute(M, 2);
  EXPECT_EQ(a.A, b.A);
  EXPECT_EQ(a.fiber_traces, b.fiber_traces);
  EXPECT_EQ(cache.stats().hits, 1);
  EXPECT_EQ(cache.stats().misses, 1);
  EXPECT_TRUE(std::filesystem::exists(cache.entry_path(curve_hash(M), 2)));
}

TEST(Cache, PoisonedEntryDetectedInValidateMode) {
  TempDir d;
  std::ostringstream log;
  lseries::FiberModel M(corpus::E1());
  {
    CountCache cache(d.path.string(), false, 1, log);
    cache.get_or_compute(M, 1);
  }
  const auto path = CountCache(d.path.string(), false, 1, log).entry_path(curve_hash(M), 1);
  json j = json::parse(std::ifstream(path));
  j["A"] = "7";
  std::ofstream(path) << j.dump();

  CountCache unchecked(d.path.string(), false, 1, log);
  EXPECT_EQ(unchecked.get(M, 1)->A, 7);  // trusted without validation

  CountCache checked(d.path.string(), true, 1, log);
  auto ts = checked.get_or_compute(M, 1);
  EXPECT_EQ(ts.A, 0);
  EXPECT_EQ(checked.stats().mismatches, 1);
  EXPECT_NE(log.str().find("failed validation"), std::string::npos);
  // overwritten with the recomputed value
  EXPECT_EQ(CountCache(d.path.string(), true, 1, log).get(M, 1)->A, 0);
}

TEST(Cache, PoisonedFiberTraceDetected) {
  TempDir d;
  std::ostringstream log;
  lseries::FiberModel M(corpus::E2());
  CountCache(d.path.string(), false, 1, log).get_or_compute(M, 1);
  const auto path = CountCache(d.path.string(), false, 1, log).entry_path(curve_hash(M), 1);
  json j = json::parse(std::ifstream(path));
  // move one unit between two fibers: A and the orbit sum still agree
  auto tr = j["fiber_traces"].get<std::vector<int>>();
  tr[0] += 1;
  tr[1] -= 1;
  j["fiber_traces"] = tr;
  std::ofstream(path) << j.dump();
  CountCache checked(d.path.string(), true, 1, log);
  EXPECT_FALSE(checked.get(M, 1));
}

TEST(Cache, CorruptEntryDiscarded) {
  TempDir d;
  std::ostringstream log;
  lseries::FiberModel M(corpus::E2());
  CountCache cache(d.path.string(), false, 1, log);
  cache.get_or_compute(M, 1);
  std::ofstream(cache.entry_path(curve_hash(M), 1)) << "garbage";
  auto ts = cache.get_or_compute(M, 1);
  EXPECT_EQ(ts.A, lseries::trace_sum(M, 1).A);
  EXPECT_EQ(cache.stats().corrupt, 1);
  EXPECT_NE(log.str().find("corrupt"), std::string::npos);
}

TEST(Cache, HashSeparatesCurves) {
  EXPECT_NE(curve_hash(lseries::FiberModel(corpus::E1())), curve_hash(lseries::FiberModel(corpus::E2())));
  EXPECT_EQ(curve_hash(lseries::FiberModel(corpus::E1())), curve_hash(lseries::FiberModel(corpus::E1())));
}
