#include <gtest/gtest.h>

#include <filesystem>

#include "test_util.hpp"
#include "toric/corpus.hpp"
#include "toric/report.hpp"
#include "toric/serialize.hpp"

using namespace toric;

TEST(IntegerJson, SmallAndLarge) {
  EXPECT_EQ(to_json(Integer(-7)), Json(-7));
  Integer big("123456789012345678901234567890");
  EXPECT_EQ(to_json(big), Json("123456789012345678901234567890"));
  EXPECT_EQ(integer_from_json(to_json(big), "x"), big);
  EXPECT_EQ(integer_from_json(Json("-42"), "x"), -42);
  Integer edge("9223372036854775807");
  EXPECT_EQ(to_json(edge), Json(std::int64_t{9223372036854775807}));
  EXPECT_EQ(to_json(Integer(edge + 1)), Json("9223372036854775808"));
  EXPECT_EQ(to_json(Rational(3, 6)), Json("1/2"));
  EXPECT_EQ(to_json(Rational(4, 2)), Json(2));
}

TEST(IntegerJson, Rejects) {
  for (const Json& j : {Json("1.5"), Json(""), Json("-"), Json("12a"), Json(1.5), Json::array(), Json(nullptr), Json(true)})
    EXPECT_THROW(integer_from_json(j, "x"), SchemaError) << j.dump();
}

TEST(FanJson, RoundTrip) {
  for (const Fan& f : {projective_space_fan(3), p1xp1_fan(), cubic_3a2_fan(), wps_fan(Weights{1, 2, 3})}) {
    Json j = fan_to_json(f);
    Fan g = fan_from_json(j);
    EXPECT_EQ(g, f.canonical());
    EXPECT_EQ(canonical_dump(fan_to_json(g)), canonical_dump(j));
  }
}

TEST(FanJson, CanonicalFormIgnoresInputOrder) {
  Fan a(2, {V({1, 0}), V({0, 1}), V({-1, -1})}, {{0, 1}, {1, 2}, {0, 2}});
  Fan b(2, {V({-1, -1}), V({1, 0}), V({0, 1})}, {{2, 0}, {1, 2}, {0, 1}});
  EXPECT_EQ(canonical_dump(fan_to_json(a)), canonical_dump(fan_to_json(b)));
}

TEST(FanJson, SchemaErrors) {
  auto parse = [](const char* s) { return fan_from_json(Json::parse(s)); };
  EXPECT_THROW(parse(R"({"rays":[[1,0]],"cones":[[0]]})"), SchemaError);
  EXPECT_THROW(parse(R"({"rank":2,"rays":[[1,0,0]],"cones":[[0]]})"), SchemaError);
  EXPECT_THROW(parse(R"({"rank":2,"rays":[[1,0]],"cones":[[1]]})"), SchemaError);
  EXPECT_THROW(parse(R"({"rank":2,"rays":[[1,0]],"cones":[[0,0]]})"), SchemaError);
  EXPECT_THROW(parse(R"({"rank":-1,"rays":[],"cones":[]})"), SchemaError);
  EXPECT_THROW(parse(R"({"rank":2,"rays":[[1,0]],"cones":"x"})"), SchemaError);
  EXPECT_THROW(parse(R"([1,2])"), SchemaError);
  EXPECT_THROW(parse_json("{\"rank\": 2, \"rays\": [", "f"), SchemaError);
}

TEST(FanJson, BigCoordinatesAsStrings) {
  Json j = Json::parse(R"({"rank":2,"rays":[["100000000000000000000",1],[0,1],[-1,-1]],"cones":[[0,1],[1,2]]})");
  Fan f = fan_from_json(j);
  EXPECT_EQ(f.rays()[0][0], Integer("100000000000000000000"));
  Json back = fan_to_json(f);
  bool found = false;
  for (const auto& r : back["rays"])
    if (r[0] == Json("100000000000000000000")) found = true;
  EXPECT_TRUE(found);
}

TEST(ActionJson, RoundTrip) {
  for (const GroupAction& g : {swap_action(), negation_action(3), GroupAction::trivial(2)}) {
    Json j = action_to_json(g);
    EXPECT_EQ(action_rank(j), g.rank());
    GroupAction h = action_from_json(j, g.rank());
    EXPECT_EQ(h.generators(), g.generators());
    EXPECT_EQ(h.orders(), g.orders());
  }
}

TEST(ActionJson, SchemaErrors) {
  EXPECT_THROW(action_from_json(Json::parse(R"({"generators":[[[1,0],[0,1]]]})"), 3), SchemaError);
  EXPECT_THROW(action_from_json(Json::parse(R"({"generators":[[[1,0],[0]]]})"), 2), SchemaError);
  EXPECT_THROW(action_from_json(Json::parse(R"({"generators":[[[1,0],[0,1]]],"orders":[0]})"), 2), SchemaError);
  EXPECT_THROW(action_from_json(Json::parse(R"({"generators":[],"rank":3})"), 2), SchemaError);
  EXPECT_THROW(action_rank(Json::parse(R"({"generators":[]})")), SchemaError);
  EXPECT_EQ(action_rank(Json::parse(R"({"generators":[[[0,1],[1,0]]]})")), 2u);
}

TEST(WeightsJson, RoundTripAndErrors) {
  Weights w = weights_from_json(Json::parse(R"({"weights":[2,4,6]})"));
  EXPECT_EQ(w, (Weights{1, 2, 3}));
  EXPECT_EQ(weights_to_json(Weights{1, 1, 2}), Json::parse("[1,1,2]"));
  EXPECT_THROW(weights_from_json(Json::parse(R"({"weights":[1]})")), SchemaError);
  EXPECT_THROW(weights_from_json(Json::parse(R"({"weights":[1,0]})")), SchemaError);
  EXPECT_THROW(weights_from_json(Json::parse(R"({"w":[1,2]})")), SchemaError);
}

TEST(ModuleJson, Parse) {
  auto m = module_from_json(Json::parse(R"({"rank":2,"relations":[[2,0]]})"));
  EXPECT_EQ(m.rank, 2u);
  ASSERT_EQ(m.relations.size(), 1u);
  EXPECT_THROW(module_from_json(Json::parse(R"({"rank":2,"relations":[[2]]})")), SchemaError);
}

TEST(CanonicalDump, SortedKeysAndNewline) {
  Json j;
  j["b"] = 1;
  j["a"] = Json::array({1, 2});
  std::string s = canonical_dump(j);
  EXPECT_LT(s.find("\"a\""), s.find("\"b\""));
  EXPECT_EQ(s.back(), '\n');
}

TEST(Files, IoErrors) {
  EXPECT_THROW(read_json_file("/nonexistent/dir/file.json"), IoError);
  EXPECT_THROW(write_text_file("/nonexistent/dir/file.json", "x"), IoError);
  auto path = std::filesystem::temp_directory_path() / "toric_serialize_test.json";
  write_text_file(path.string(), "{\"rank\": 1}");
  EXPECT_EQ(read_json_file(path.string())["rank"], 1);
  write_text_file(path.string(), "{\"rank\": ");
  EXPECT_THROW(read_json_file(path.string()), SchemaError);
  std::filesystem::remove(path);
}

TEST(Reports, CertificateJson) {
  auto c = verify_chart_extension(Weights{1, 2, 3});
  Json j = certificate_to_json(c);
  EXPECT_EQ(canonical_dump(j), canonical_dump(certificate_to_json(verify_chart_extension(Weights{1, 2, 3}))));
  EXPECT_FALSE(j.dump().empty());
}

TEST(Reports, AnalyzeFanInvalid) {
  Fan bad(2, {V({1, 0}), V({0, 1}), V({1, 1})}, {{0, 1}, {0, 2}});
  auto r = analyze_fan_report(bad, kDefaultSamplingSeed);
  EXPECT_EQ(r.json["verdict"], "invalid fan");
  EXPECT_FALSE(r.json.contains("class_group"));
}

TEST(Reports, AnalyzeFanCubic) {
  auto r = analyze_fan_report(cubic_3a2_fan(), kDefaultSamplingSeed);
  EXPECT_EQ(r.json["class_group"]["rank"], 1);
  EXPECT_EQ(r.json["class_group"]["torsion"], Json::parse("[3]"));
  EXPECT_EQ(r.json["picard"]["degree_index"], 3);
  EXPECT_EQ(r.json["picard"]["index"], 9);
  for (const auto& s : r.json["singularities"]) EXPECT_EQ(s["type"], "A2");
}

TEST(Reports, Cohomology) {
  auto a = cohomology_report(negation_action(1), ModulePresentation{1, {}});
  EXPECT_EQ(a.json["h1"]["torsion"], Json::parse("[2]"));
  auto b = cohomology_report(swap_action(), ModulePresentation{2, {}});
  EXPECT_EQ(b.json["h1"]["torsion"], Json::array());
}
