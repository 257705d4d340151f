#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "pnum/io.hpp"

using namespace pnum;

namespace {

std::filesystem::path temp_file(std::string const &name) {
  auto p = std::filesystem::temp_directory_path() / name;
  std::filesystem::remove(p);
  return p;
}

std::string slurp(std::filesystem::path const &p) {
  std::ifstream in(p);
  return {std::istreambuf_iterator<char>(in), {}};
}

} // namespace

TEST(Json, ReportKeysInOrder) {
  auto j = to_json(classify(45));
  std::vector<std::string> keys;
  for (auto const &[k, v] : j.items())
    keys.push_back(k);
  EXPECT_EQ(keys, (std::vector<std::string>{"n", "factorization", "cyclic", "abelian", "nilpotent", "supersolvable",
                                            "ordered_sylow", "diagnoses", "abelian_count"}));
  EXPECT_EQ(j["factorization"].dump(), "[[3,2],[5,1]]");
  EXPECT_EQ(j["abelian_count"], 2);
  EXPECT_FALSE(to_json(classify(12)).contains("abelian_count"));
}

TEST(Json, DiagnosisShape) {
  auto j = to_json(diagnose(12, Property::supersolvable).front());
  EXPECT_EQ(j.dump(), R"({"property":"supersolvable","kind":"ss_f1","params":{"p":3,"q":2,"v":2}})");
}

TEST(Json, ReportRoundTrip) {
  for (u64 n : std::vector<u64>{1, 4, 12, 36, 45, 200, 294, 1'000'000'007, 999'999'999'989}) {
    auto r = classify(n);
    auto back = report_from_json(ojson::parse(to_json(r).dump()));
    EXPECT_EQ(to_json(back), to_json(r));
    EXPECT_EQ(back.abelian_count, r.abelian_count);
  }
}

TEST(Json, RecordRoundTrip) {
  auto neg = verify_negative(294, Property::supersolvable);
  auto pos = verify_positive(15, Property::cyclic, 3);
  for (auto const &r : {neg, pos}) {
    auto back = record_from_json(to_json(r));
    EXPECT_EQ(to_json(back), to_json(r));
  }
  EXPECT_TRUE(to_json(pos)["witness"].is_null());
  EXPECT_THROW(record_from_json(ojson::parse(
                   R"({"n":1,"property":"cyclic","predicate_verdict":true,"witness":null,"group_verdict":null,"status":"odd","sampled":[]})")),
               std::invalid_argument);
}

TEST(Csv, Rows) {
  EXPECT_EQ(csv_header(),
            "n,factorization,cyclic,abelian,nilpotent,supersolvable,ordered_sylow,abelian_count,diagnoses");
  EXPECT_EQ(to_csv(classify(15)), "15,3 * 5,true,true,true,true,true,1,\"\"");
  auto row = to_csv(classify(6));
  EXPECT_TRUE(row.starts_with("6,2 * 3,false,false,false,true,true,,\"cyclic:divisibility_pair(")) << row;
}

TEST(Table, Row) {
  auto row = to_table_row(classify(12));
  EXPECT_TRUE(row.starts_with("12")) << row;
  EXPECT_NE(row.find("supersolvable:ss_f1(p=3,q=2,v=2)"), std::string::npos) << row;
  EXPECT_NE(table_header().find("factorization"), std::string::npos);
}

TEST(Cache, HitsReproduceFreshLines) {
  auto path = temp_file("pnum_cache_test.jsonl");
  std::vector<std::string> fresh;
  {
    ClassificationCache c(path.string());
    for (u64 n = 1; n <= 50; ++n)
      fresh.push_back(c.line(n));
    EXPECT_EQ(c.misses(), 50u);
    c.flush();
  }
  auto first = slurp(path);
  {
    ClassificationCache c(path.string());
    for (u64 n = 1; n <= 50; ++n)
      EXPECT_EQ(c.line(n), fresh[n - 1]);
    EXPECT_EQ(c.hits(), 50u);
    EXPECT_EQ(c.misses(), 0u);
    c.flush();
  }
  EXPECT_EQ(slurp(path), first);
  std::filesystem::remove(path);
}
