#include <gtest/gtest.h>

#include "pnum/analysis.hpp"
#include "pnum/constructors.hpp"

using namespace pnum;

namespace {

std::size_t count_of_order(FiniteGroup const &g, std::size_t k) {
  std::size_t c = 0;
  for (Element x = 0; x < g.order(); ++x)
    c += element_order(g, x) == k;
  return c;
}

bool has_normal_subgroup_of_order(FiniteGroup const &g, std::size_t k) {
  for (Element x = 0; x < g.order(); ++x)
    if (element_order(g, x) == k && is_normal(g, cyclic_subgroup(g, x)))
      return true;
  return false;
}

std::size_t exponent(FiniteGroup const &g) {
  std::size_t e = 1;
  for (Element x = 0; x < g.order(); ++x)
    e = std::lcm(e, element_order(g, x));
  return e;
}

/// Every proper subgroup found by joining pairs of elements is abelian.
bool two_generated_proper_subgroups_abelian(FiniteGroup const &g) {
  for (Element x = 0; x < g.order(); ++x)
    for (Element y = x + 1; y < g.order(); ++y) {
      auto h = subgroup_closure(g, {x, y});
      if (!h.is_whole() && !is_abelian(h))
        return false;
    }
  return true;
}

} // namespace

TEST(Cyclic, Examples) {
  EXPECT_EQ(make_cyclic(1).order(), 1u);
  auto c6 = make_cyclic(6);
  EXPECT_EQ(element_order(c6, 1), 6u);
  EXPECT_EQ(count_of_order(make_cyclic(12), 12), 4u);
  EXPECT_THROW(make_cyclic(0), std::invalid_argument);
}

TEST(Heisenberg, Examples) {
  auto h2 = make_heisenberg(2);
  EXPECT_EQ(h2.order(), 8u);
  EXPECT_FALSE(is_abelian_group(h2));
  EXPECT_EQ(count_of_order(h2, 4), 2u); // dihedral of order 8

  auto h3 = make_heisenberg(3);
  EXPECT_EQ(h3.order(), 27u);
  EXPECT_FALSE(is_abelian_group(h3));
  EXPECT_EQ(center(h3).order(), 3u);

  auto h5 = make_heisenberg(5);
  EXPECT_EQ(h5.order(), 125u);
  EXPECT_EQ(exponent(h5), 5u);

  EXPECT_THROW(make_heisenberg(4), std::invalid_argument);
  EXPECT_THROW(make_heisenberg(11), GroupError);
}

TEST(Heisenberg, NilpotentForEveryPrimeInCap) {
  for (u64 p : {2, 3, 5, 7}) {
    auto h = make_heisenberg(p);
    EXPECT_FALSE(is_abelian_group(h));
    EXPECT_TRUE(is_nilpotent_group(h));
  }
}

TEST(Semidirect, Examples) {
  auto s3 = make_semidirect_elem_abelian(3, 1, 2);
  EXPECT_EQ(s3.order(), 6u);
  EXPECT_FALSE(is_abelian_group(s3));
  EXPECT_EQ(count_of_order(s3, 2), 3u);

  auto a4 = make_semidirect_elem_abelian(2, 2, 3);
  EXPECT_EQ(a4.order(), 12u);
  EXPECT_EQ(sylow_count(a4, 3), 4u);

  auto f20 = make_semidirect_elem_abelian(5, 1, 4);
  EXPECT_EQ(f20.order(), 20u);
  EXPECT_EQ(center(f20).order(), 1u);
  EXPECT_EQ(sylow_count(f20, 2), 5u);

  EXPECT_THROW(make_semidirect_elem_abelian(2, 1, 3), std::invalid_argument);
}

TEST(Semidirect, MatrixSearch) {
  auto a = find_matrix_of_order(3, 1, 2);
  ASSERT_TRUE(a);
  EXPECT_EQ(*a, (Matrix{2}));
  auto b = find_matrix_of_order(5, 1, 4);
  ASSERT_TRUE(b);
  EXPECT_EQ(*b, (Matrix{2}));
  EXPECT_FALSE(find_matrix_of_order(2, 1, 3));
  EXPECT_THROW(find_matrix_of_order(2, 5, 3), std::domain_error);
}

TEST(Semidirect, BaseIsNormalSylow) {
  for (auto [p, k, m] : std::vector<std::tuple<u64, unsigned, u64>>{{3, 1, 2}, {2, 2, 3}, {5, 1, 4}, {7, 1, 3},
                                                                   {2, 3, 7}, {5, 2, 3}, {3, 2, 4}}) {
    auto g = make_semidirect_elem_abelian(p, k, m);
    EXPECT_FALSE(is_abelian_group(g));
    auto s = sylow_subgroup(g, p);
    EXPECT_EQ(s.order(), checked_pow(p, k));
    EXPECT_TRUE(is_normal(g, s));
    EXPECT_TRUE(is_elementary_abelian(s));
  }
}

TEST(GaloisField, Arithmetic) {
  GaloisField f4(2, 2);
  EXPECT_EQ(f4.size(), 4u);
  EXPECT_EQ(f4.modulus(), (std::vector<u64>{1, 1})); // x^2 + x + 1
  for (u64 a = 1; a < 4; ++a)
    EXPECT_EQ(f4.pow(a, 3), 1u);
  GaloisField f25(5, 2);
  EXPECT_EQ(f25.pow(f25.generator(), 24), 1u);
  EXPECT_NE(f25.pow(f25.generator(), 12), 1u);
  EXPECT_NE(f25.pow(f25.generator(), 8), 1u);
  for (u64 a = 0; a < 25; ++a)
    for (u64 b = 0; b < 25; ++b)
      EXPECT_EQ(f25.mul(a, b), f25.mul(b, a));
}

TEST(Redei, Examples) {
  auto r12 = make_redei(3, 2, 1);
  EXPECT_EQ(r12.order(), 12u);
  EXPECT_FALSE(is_abelian_group(r12));
  EXPECT_FALSE(has_normal_subgroup_of_order(r12, 3));
  EXPECT_FALSE(is_supersolvable_group(r12));

  EXPECT_THROW(make_redei(2, 3, 1), std::invalid_argument);

  auto r75 = make_redei(3, 5, 1);
  EXPECT_EQ(r75.order(), 75u);
  EXPECT_FALSE(is_abelian_group(r75));
  auto s5 = sylow_subgroup(r75, 5);
  EXPECT_TRUE(is_normal(r75, s5));
  EXPECT_TRUE(is_elementary_abelian(s5));
}

TEST(Redei, FirstOrderNonabelian) {
  for (auto [p, q] : std::vector<std::pair<u64, u64>>{{3, 2}, {3, 5}}) {
    auto g = make_redei(p, q, 1);
    EXPECT_FALSE(is_abelian_group(g));
    EXPECT_TRUE(two_generated_proper_subgroups_abelian(g));
  }
}

TEST(CaseGroups, Examples) {
  auto f3 = make_case_group(CaseKind::f3, {2, 0, 3, 2, 0});
  EXPECT_EQ(f3.order(), 36u);
  EXPECT_FALSE(has_normal_subgroup_of_order(f3, 3));
  EXPECT_FALSE(is_supersolvable_group(f3));

  auto f4 = make_case_group(CaseKind::f4, {2, 0, 5, 2, 0});
  EXPECT_EQ(f4.order(), 200u);
  EXPECT_FALSE(has_normal_subgroup_of_order(f4, 5));
  EXPECT_FALSE(is_supersolvable_group(f4));

  auto f2 = make_case_group(CaseKind::f2, {2, 3, 7, 0, 0});
  EXPECT_EQ(f2.order(), 294u);
  EXPECT_TRUE(is_normal(f2, sylow_subgroup(f2, 7)));
  EXPECT_FALSE(has_normal_subgroup_of_order(f2, 7));
  EXPECT_FALSE(is_supersolvable_group(f2));
}

TEST(CaseGroups, DefaultParameters) {
  auto cp = complete_case_params(CaseKind::f2, {2, 3, 7, 0, 0});
  EXPECT_EQ(cp.rho, 2u);
  EXPECT_EQ(cp.sigma, 2u);
  EXPECT_EQ(complete_case_params(CaseKind::f3, {2, 0, 3, 0, 0}).rho, 2u);
  EXPECT_EQ(complete_case_params(CaseKind::f4, {2, 0, 5, 0, 0}).rho, 2u);
  EXPECT_THROW(complete_case_params(CaseKind::f3, {2, 0, 5, 0, 0}), std::invalid_argument);
  EXPECT_THROW(complete_case_params(CaseKind::f4, {2, 0, 3, 0, 0}), std::invalid_argument);
  EXPECT_THROW(complete_case_params(CaseKind::f2, {2, 5, 7, 0, 0}), std::invalid_argument);
  EXPECT_THROW(complete_case_params(CaseKind::f3, {2, 0, 3, 1, 0}), std::invalid_argument);
}

TEST(FailingFamilies, SolvableButNotSupersolvable) {
  std::vector<FiniteGroup> gs{make_redei(3, 2, 1), make_redei(3, 5, 1), make_redei(5, 2, 1),
                              make_case_group(CaseKind::f2, {2, 3, 7, 0, 0}),
                              make_case_group(CaseKind::f3, {2, 0, 3, 0, 0}),
                              make_case_group(CaseKind::f4, {2, 0, 5, 0, 0})};
  for (auto const &g : gs) {
    EXPECT_TRUE(is_solvable_group(g)) << g.order();
    EXPECT_FALSE(is_supersolvable_group(g)) << g.order();
  }
}

TEST(Witness, Examples) {
  auto v4 = make_witness(parse_recipe("cyclic_square q=2 cofactor=2"));
  EXPECT_EQ(v4.order(), 4u);
  EXPECT_FALSE(is_cyclic_group(v4));

  auto s3c5 = make_witness(parse_recipe("semidirect_elem_abelian p=3 k=1 m=2 cofactor=5"));
  EXPECT_EQ(s3c5.order(), 30u);
  EXPECT_FALSE(is_nilpotent_group(s3c5));
  EXPECT_EQ(sylow_count(s3c5, 2), 3u);

  auto r60 = make_witness(parse_recipe("redei_f1 p=3 q=2 u=1 cofactor=5"));
  EXPECT_EQ(r60.order(), 60u);
  EXPECT_FALSE(is_supersolvable_group(r60));
}

TEST(Witness, RecipeText) {
  auto r = recipe_for(12, Property::supersolvable);
  EXPECT_EQ(serialize(r), "redei_f1 p=3 q=2 u=1 cofactor=1");
  EXPECT_EQ(parse_recipe("kind=redei_f1 p=3 q=2 u=1 cofactor=1"), r);
  EXPECT_EQ(parse_recipe(serialize(r)), r);

  auto f2 = recipe_for(294, Property::supersolvable);
  EXPECT_EQ(serialize(f2), "case_f2 p=2 p2=3 q=7 rho=2 sigma=2 cofactor=1");
  EXPECT_EQ(parse_recipe("case_f2 p=2 p2=3 q=7"), f2);

  EXPECT_THROW(parse_recipe(""), std::invalid_argument);
  EXPECT_THROW(parse_recipe("bogus p=2"), std::invalid_argument);
  EXPECT_THROW(parse_recipe("cyclic_square"), std::invalid_argument);
  EXPECT_THROW(parse_recipe("cyclic_square q=2 q=3"), std::invalid_argument);
  EXPECT_THROW(parse_recipe("cyclic_square q=2 z=1"), std::invalid_argument);
  EXPECT_THROW(parse_recipe("cyclic_square q=x"), std::invalid_argument);
}

TEST(Witness, Validation) {
  EXPECT_THROW(make_witness(parse_recipe("cyclic_square q=2 cofactor=3")), std::invalid_argument);
  EXPECT_THROW(make_witness(parse_recipe("cyclic_pair p=3 q=5 cofactor=1")), std::invalid_argument);
  EXPECT_THROW(make_witness(parse_recipe("redei_f1 p=2 q=3 u=1 cofactor=1")), std::invalid_argument);
  EXPECT_THROW(make_witness(parse_recipe("abelian_cube p=7 cofactor=2")), GroupError);
}

TEST(Witness, EveryDiagnosisBuildsAnOrderNGroup) {
  for (u64 n = 2; n <= 120; ++n)
    for (auto prop : kAllProperties) {
      if (holds(prop, n))
        continue;
      for (auto const &d : diagnose(n, prop)) {
        auto r = recipe_for(n, d);
        EXPECT_EQ(r.order(), n);
        auto g = make_witness(r);
        EXPECT_EQ(g.order(), n);
        EXPECT_FALSE(group_has(prop, g)) << n << " " << serialize(r);
      }
    }
}

TEST(Named, Groups) {
  EXPECT_EQ(make_named("s4").order(), 24u);
  EXPECT_EQ(make_named("a5").order(), 60u);
  auto q8 = make_named("q8");
  EXPECT_EQ(q8.order(), 8u);
  EXPECT_EQ(count_of_order(q8, 2), 1u);
  EXPECT_EQ(count_of_order(q8, 4), 6u);
  EXPECT_EQ(make_named("dihedral:5").order(), 10u);
  EXPECT_EQ(make_named("case_f3:2,3").order(), 36u);
  EXPECT_THROW(make_named("nope"), std::invalid_argument);
  EXPECT_THROW(make_named("cyclic:"), std::invalid_argument);
  EXPECT_THROW(make_named("cyclic:2,3"), std::invalid_argument);
}
