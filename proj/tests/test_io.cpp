#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>

#include "ekr/constructions.hpp"
#include "ekr/io.hpp"

using namespace ekr;

namespace {

std::string load_error(const std::string& text) {
  try {
    family_from_json(Json::parse(text));
  } catch (const std::invalid_argument& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST(FamilyJson, RoundTrip) {
  const Family hm = build(TemplateKind::HM, {9, 4});
  const Json j = family_to_json(hm);
  EXPECT_EQ(j["n"], 9);
  EXPECT_EQ(j["sets"].size(), 53U);
  EXPECT_EQ(j["sets"][0], Json::parse("[1,2,3,4]"));
  EXPECT_EQ(family_from_json(j), hm);
}

TEST(FamilyJson, FileRoundTrip) {
  const auto path = std::filesystem::temp_directory_path() / "ekr_io_roundtrip.json";
  const Family j3 = build(TemplateKind::J, {10, 4}, 3);
  save_family(path.string(), j3);
  EXPECT_EQ(load_family(path.string()), j3);
  std::filesystem::remove(path);
  EXPECT_THROW(load_family(path.string()), std::runtime_error);
}

TEST(FamilyJson, RejectsMalformedInput) {
  EXPECT_EQ(load_error(R"({"n":5,"k":2,"sets":[[2,1]]})"), "set [2,1] is not sorted ascending");
  EXPECT_EQ(load_error(R"({"n":5,"k":2,"sets":[[1,6]]})"), "set [1,6] leaves [5]");
  EXPECT_EQ(load_error(R"({"n":5,"k":2,"sets":[[1,2],[1,2]]})"), "duplicate set {1,2}");
  EXPECT_EQ(load_error(R"({"n":5,"k":2,"sets":[[1,2,3]]})"), "set {1,2,3} does not have 2 elements");
  EXPECT_EQ(load_error(R"({"n":5,"sets":[]})"), "family JSON lacks \"k\"");
  EXPECT_EQ(load_error(R"({"n":5,"k":"2","sets":[]})"), "\"n\" and \"k\" must be integers");
  EXPECT_EQ(load_error(R"({"n":5,"k":2,"sets":[[1,"a"]]})"), "set [1,\"a\"] has a non-integer entry");
  EXPECT_EQ(load_error(R"([1,2])"), "family JSON must be an object");
}

TEST(ReportJson, CarriesWitnesses) {
  const Json j = report_to_json(classify(build(TemplateKind::HM, {9, 4})));
  EXPECT_FALSE(j["is_ekr"].get<bool>());
  EXPECT_TRUE(j["ekr_center"].is_null());
  EXPECT_TRUE(j["is_hm"].get<bool>());
  EXPECT_EQ(j["hm"]["center"], 1);
  EXPECT_EQ(j["hm"]["exceptional"], Json::parse("[2,3,4,5]"));
  EXPECT_EQ(j["min_missing_degree"], 1);
}

TEST(SearchJson, Fields) {
  SearchResult r;
  r.optimum = 13;
  r.nodes = 7;
  const Json j = search_result_to_json(r);
  EXPECT_EQ(j["optimum"], 13);
  EXPECT_EQ(j["status"], "proved_optimal");
  EXPECT_EQ(j["witness_count"], 0);
}
