#include "connections/dataset.hpp"

#include <gtest/gtest.h>

#include "test_support.hpp"

namespace connections {
namespace {

using nlohmann::json;
using testsupport::TempDir;

json good_record(const std::string& id) {
  return {{"id", id},
          {"date", "2024-02-01"},
          {"groups",
           {{{"name", "A"}, {"color", "yellow"}, {"words", {"a1", "a2", "a3", "a4"}}},
            {{"name", "B"}, {"color", "green"}, {"words", {"b1", "b2", "b3", "b4"}}},
            {{"name", "C"}, {"color", "blue"}, {"words", {"c1", "c2", "c3", "c4"}}},
            {{"name", "D"}, {"color", "purple"}, {"words", {"d1", "d2", "d3", "d4"}}}}}};
}

json doc_with(std::vector<json> records) {
  return {{"version", 1}, {"puzzles", records}};
}

std::vector<std::string> rules(const ValidationReport& r) {
  std::vector<std::string> out;
  for (const auto& e : r.errors) out.push_back(e.rule);
  return out;
}

TEST(DatasetTest, LoadsFixtureInOrder) {
  const auto& ps = testsupport::fixture_puzzles();
  ASSERT_EQ(ps.size(), 6u);
  EXPECT_EQ(ps[0].id(), "P1");
  EXPECT_EQ(ps[5].id(), "P6");
  EXPECT_EQ(ps[0].date(), "2024-01-01");
  EXPECT_TRUE(ps[5].contains(Word("rocky road")));
}

TEST(DatasetTest, FixtureStats) {
  auto r = validate_dataset(testsupport::fixture_dataset());
  ASSERT_TRUE(r.ok());
  EXPECT_EQ(r.stats->puzzle_count, 6u);
  EXPECT_EQ(r.stats->distinct_words, 94u);
  EXPECT_EQ(r.stats->words_shared_across_puzzles, 2u);
}

TEST(DatasetTest, RoundTripsThroughJson) {
  const auto& ps = testsupport::fixture_puzzles();
  auto again = parse_dataset(dataset_to_json(ps).dump());
  ASSERT_EQ(again.size(), ps.size());
  for (std::size_t i = 0; i < ps.size(); ++i) {
    EXPECT_EQ(again[i].id(), ps[i].id());
    EXPECT_EQ(again[i].categories(), ps[i].categories());
  }
}

TEST(DatasetTest, SaveIsAtomicAndReloadable) {
  TempDir dir("dataset");
  auto path = dir.path() / "out.json";
  save_dataset(path, testsupport::fixture_puzzles());
  EXPECT_FALSE(std::filesystem::exists(dir.path() / "out.json.tmp"));
  EXPECT_EQ(load_dataset(path).size(), 6u);
}

TEST(DatasetTest, MissingFileIsIoError) {
  EXPECT_THROW(load_dataset("/nonexistent/puzzles.json"), DatasetIoError);
  EXPECT_THROW(validate_dataset("/nonexistent/puzzles.json"), DatasetIoError);
}

TEST(DatasetTest, EmptyFileWarnsWithZeroPuzzles) {
  auto r = validate_dataset_text("  \n");
  EXPECT_TRUE(r.ok());
  EXPECT_EQ(r.stats->puzzle_count, 0u);
  EXPECT_EQ(r.warnings.size(), 1u);
  EXPECT_TRUE(parse_dataset("").empty());
}

TEST(DatasetTest, ParseErrorReportsPosition) {
  auto r = validate_dataset_text("{\n  \"version\": 1,\n  \"puzzles\": [,]\n}");
  ASSERT_EQ(rules(r), std::vector<std::string>{"parse_error"});
  EXPECT_NE(r.errors[0].message.find("line 3"), std::string::npos) << r.errors[0].message;
}

TEST(DatasetTest, FileLevelRules) {
  EXPECT_EQ(rules(validate_dataset_text("[1,2]")), std::vector<std::string>{"not_object"});
  EXPECT_EQ(rules(validate_dataset_text(R"({"version": 2, "puzzles": []})")), std::vector<std::string>{"bad_version"});
  EXPECT_EQ(rules(validate_dataset_text(R"({"version": 1})")), std::vector<std::string>{"missing_puzzles"});
}

TEST(DatasetTest, CollectsEveryRecordProblem) {
  auto bad_color = good_record("X2");
  bad_color["groups"][1]["color"] = "orange";
  auto short_group = good_record("X3");
  short_group["groups"][2]["words"] = {"c1", "c2", "c3"};
  auto dup_word = good_record("X4");
  dup_word["groups"][3]["words"][0] = "A1";
  auto no_id = good_record("");
  auto bad_date = good_record("X6");
  bad_date["date"] = "Jan 1";
  auto dup_color = good_record("X7");
  dup_color["groups"][3]["color"] = "yellow";
  auto three = good_record("X8");
  three["groups"].erase(3);

  auto r = validate_dataset_text(
      doc_with({good_record("X1"), bad_color, short_group, dup_word, no_id, bad_date, dup_color, three, 5}).dump());
  auto got = rules(r);
  auto has = [&](const std::string& rule, long record) {
    return std::any_of(r.errors.begin(), r.errors.end(),
                       [&](const ValidationIssue& i) { return i.rule == rule && i.record == record; });
  };
  EXPECT_FALSE(r.ok());
  EXPECT_FALSE(r.stats.has_value());
  EXPECT_TRUE(has("bad_color", 1));
  EXPECT_TRUE(has("group_word_count", 2));
  EXPECT_TRUE(has("duplicate_word", 3));
  EXPECT_TRUE(has("missing_id", 4));
  EXPECT_TRUE(has("bad_date", 5));
  EXPECT_TRUE(has("duplicate_color", 6));
  EXPECT_TRUE(has("group_count", 7));
  EXPECT_TRUE(has("record_not_object", 8));
  EXPECT_FALSE(std::any_of(r.errors.begin(), r.errors.end(), [](const ValidationIssue& i) { return i.record == 0; }));
}

TEST(DatasetTest, DuplicateIdsNameAllRecords) {
  auto r = validate_dataset_text(doc_with({good_record("X"), good_record("Y"), good_record("X")}).dump());
  ASSERT_EQ(r.errors.size(), 2u);
  for (const auto& e : r.errors) {
    EXPECT_EQ(e.rule, "duplicate_id");
    EXPECT_NE(e.message.find("0, 2"), std::string::npos);
  }
}

TEST(DatasetTest, StrictLoadNamesRecordAndRule) {
  auto bad = good_record("X1");
  bad["groups"][0]["color"] = "red";
  try {
    parse_dataset(doc_with({good_record("X0"), bad}).dump());
    FAIL() << "expected DatasetError";
  } catch (const DatasetError& e) {
    std::string what = e.what();
    EXPECT_NE(what.find("record 1"), std::string::npos) << what;
    EXPECT_NE(what.find("bad_color"), std::string::npos) << what;
  }
}

TEST(DatasetTest, ReportJsonShape) {
  auto r = validate_dataset_text(doc_with({good_record("X1")}).dump());
  auto j = r.to_json();
  EXPECT_TRUE(j["ok"].get<bool>());
  EXPECT_EQ(j["stats"]["puzzle_count"], 1);
}

TEST(DatasetTest, FindPuzzle) {
  const auto& ps = testsupport::fixture_puzzles();
  ASSERT_NE(find_puzzle(ps, "P3"), nullptr);
  EXPECT_EQ(find_puzzle(ps, "P3")->id(), "P3");
  EXPECT_EQ(find_puzzle(ps, "nope"), nullptr);
}

}  // namespace
}  // namespace connections
