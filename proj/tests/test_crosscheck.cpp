#include <gtest/gtest.h>

#include <set>
#include <sstream>

#include "pnum/crosscheck.hpp"

using namespace pnum;

TEST(VerifyNegative, Examples) {
  auto r12 = verify_negative(12, Property::supersolvable);
  EXPECT_EQ(r12.status, VerificationStatus::confirmed_negative);
  ASSERT_TRUE(r12.witness_built);
  EXPECT_EQ(r12.witness_built->kind, RecipeKind::redei_f1);
  EXPECT_EQ(r12.group_verdict, false);

  auto r6 = verify_negative(6, Property::nilpotent);
  EXPECT_EQ(r6.status, VerificationStatus::confirmed_negative);
  EXPECT_EQ(r6.recipe_text(), "semidirect_elem_abelian p=3 k=1 m=2 cofactor=1");

  auto r4 = verify_negative(4, Property::cyclic);
  EXPECT_EQ(r4.recipe_text(), "cyclic_square q=2 cofactor=2");

  EXPECT_THROW(verify_negative(15, Property::cyclic), std::invalid_argument);
}

TEST(VerifyNegative, SkipsAboveCap) {
  auto r = verify_negative(400, Property::cyclic, {300});
  EXPECT_EQ(r.status, VerificationStatus::skipped_cap);
  EXPECT_FALSE(r.group_verdict);
}

TEST(VerifyNegative, AllDiagnosesAt36) {
  auto recs = verify_all_negatives(36, Property::supersolvable);
  ASSERT_EQ(recs.size(), 2u);
  EXPECT_EQ(recs[0].witness_built->kind, RecipeKind::redei_f1);
  EXPECT_EQ(recs[1].witness_built->kind, RecipeKind::case_f3);
  for (auto const &r : recs)
    EXPECT_EQ(r.status, VerificationStatus::confirmed_negative);
}

TEST(MultiplicativePartitions, Examples) {
  EXPECT_EQ(multiplicative_partitions(1), (std::vector<std::vector<u64>>{{}}));
  EXPECT_EQ(multiplicative_partitions(7), (std::vector<std::vector<u64>>{{7}}));
  EXPECT_EQ(multiplicative_partitions(45), (std::vector<std::vector<u64>>{{45}, {3, 15}, {5, 9}, {3, 3, 5}}));
  EXPECT_EQ(multiplicative_partitions(16).size(), 5u);
  EXPECT_EQ(multiplicative_partitions(60).size(), 11u);
}

TEST(VerifyPositive, Examples) {
  auto r15 = verify_positive(15, Property::cyclic, 3);
  EXPECT_EQ(r15.status, VerificationStatus::sampled_positive);
  EXPECT_EQ(r15.sampled, (std::vector<std::string>{"cyclic:15", "cyclic:3 x cyclic:5"}));

  auto r45 = verify_positive(45, Property::abelian, 3);
  EXPECT_EQ(r45.sampled.size(), 3u);
  EXPECT_EQ(r45.sampled[0], "cyclic:45");

  auto r30 = verify_positive(30, Property::ordered_sylow, 10);
  EXPECT_EQ(r30.status, VerificationStatus::sampled_positive);
  bool nonabelian = false;
  for (auto const &s : r30.sampled)
    nonabelian |= s.starts_with("semidirect:");
  EXPECT_TRUE(nonabelian);

  EXPECT_THROW(verify_positive(12, Property::supersolvable, 3), std::invalid_argument);
}

TEST(PositiveBattery, MembersHaveOrderN) {
  for (u64 n : {1, 8, 20, 42, 72, 105, 150}) {
    std::set<std::string> names;
    for (auto const &e : positive_battery(n, 20)) {
      EXPECT_EQ(e.build().order(), n) << e.name();
      EXPECT_TRUE(names.insert(e.name()).second);
    }
  }
}

TEST(Suite, OneIsTrivial) {
  auto s = run_suite({.max_n = 1});
  EXPECT_EQ(s.confirmed_negative, 0u);
  EXPECT_EQ(s.sampled_positive, 5u);
}

TEST(Suite, SixtyPassesAllProperties) {
  auto s = run_suite({.max_n = 60});
  EXPECT_GT(s.confirmed_negative, 0u);
  EXPECT_GT(s.sampled_positive, 0u);
  EXPECT_EQ(s.skipped_cap, 0u);
  EXPECT_EQ(s.invariant_checks, 60u);
}

TEST(Suite, SupersolvableFamiliesTo300) {
  auto s = run_suite({.max_n = 300, .properties = {Property::supersolvable}, .sample_budget = 0});
  std::set<std::pair<u64, RecipeKind>> seen;
  for (auto const &r : s.records)
    if (r.witness_built)
      seen.insert({r.n, r.witness_built->kind});
  EXPECT_TRUE(seen.contains({12, RecipeKind::redei_f1}));
  EXPECT_TRUE(seen.contains({36, RecipeKind::case_f3}));
  EXPECT_TRUE(seen.contains({200, RecipeKind::case_f4}));
  EXPECT_TRUE(seen.contains({294, RecipeKind::case_f2}));
  EXPECT_EQ(s.skipped_cap, 0u);
}

TEST(Suite, JobsAreDeterministic) {
  SuiteOptions a{.max_n = 120};
  SuiteOptions b = a;
  b.jobs = 4;
  std::ostringstream ra, rb;
  write_report(ra, run_suite(a).records);
  write_report(rb, run_suite(b).records);
  EXPECT_EQ(ra.str(), rb.str());
}

TEST(Report, Format) {
  auto s = run_suite({.max_n = 4, .properties = {Property::cyclic}});
  std::ostringstream os;
  write_report(os, s.records);
  EXPECT_EQ(os.str(), "n\tproperty\tstatus\trecipe\n"
                      "1\tcyclic\tsampled_positive\tcyclic:1\n"
                      "2\tcyclic\tsampled_positive\tcyclic:2\n"
                      "3\tcyclic\tsampled_positive\tcyclic:3\n"
                      "4\tcyclic\tconfirmed_negative\tcyclic_square q=2 cofactor=2\n");
}

TEST(Suite, RejectsZero) { EXPECT_THROW(run_suite({.max_n = 0}), std::invalid_argument); }
