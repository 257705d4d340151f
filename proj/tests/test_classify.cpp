#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "pnum/classify.hpp"

using namespace pnum;

namespace {

// Independent restatements used as oracles. They recompute every quantity
// from scratch with plain loops and exact (small) integers.

u64 ipow(u64 b, unsigned e) {
  u64 r = 1;
  while (e--)
    r *= b;
  return r;
}

std::set<u64> primes_of(u64 m) {
  std::set<u64> s;
  for (u64 d = 2; d <= m; ++d)
    while (m % d == 0) {
      s.insert(d);
      m /= d;
    }
  return s;
}

// psi(p^k) reduced mod m; gcd(m, psi) only depends on this residue.
u64 psi_residue(u64 p, unsigned k, u64 m) {
  unsigned __int128 r = 1;
  for (unsigned i = 1; i <= k; ++i)
    r = r * (ipow(p, i) - 1) % m;
  return static_cast<u64>(r);
}

bool oracle_nilpotent(Factorization const &f) {
  for (auto [pi, ai] : f)
    for (auto [pj, aj] : f)
      if (pi != pj)
        for (unsigned k = 1; k <= aj; ++k)
          if ((ipow(pj, k) - 1) % pi == 0)
            return false;
  return true;
}

bool oracle_ordered_sylow(Factorization const &f) {
  for (std::size_t i = 0; i < f.size(); ++i) {
    u64 tail = 1;
    for (std::size_t j = i; j < f.size(); ++j)
      tail *= ipow(f.factors[j].p, f.factors[j].a);
    if (std::gcd(tail, psi_residue(f.factors[i].p, f.factors[i].a, tail)) != 1)
      return false;
  }
  return true;
}

bool oracle_supersolvable(Factorization const &f) {
  u64 n = f.n;
  for (auto [p, a] : f)
    if (primes_of(std::gcd(n, psi_residue(p, a, n))) != primes_of(std::gcd(n, p - 1)))
      return false;
  for (auto [pi, ai] : f)
    for (auto [pk, ak] : f) {
      if (pi == pk || pi > ak)
        continue;
      for (auto [pj, aj] : f)
        if ((pj - 1) % pi == 0 && (pk - 1) % pj == 0)
          return false;
      if (ai > 2 || (ai == 2 && (pk - 1) % (pi * pi) != 0))
        return false;
    }
  return true;
}

} // namespace

TEST(CyclicNumber, Examples) {
  EXPECT_TRUE(is_cyclic_number(1));
  EXPECT_TRUE(is_cyclic_number(15));
  EXPECT_FALSE(is_cyclic_number(4));
}

TEST(NilpotentFactorization, Examples) {
  auto make = [](std::vector<PrimePower> v) {
    Factorization f{1, v};
    f.n = reassemble(f);
    return f;
  };
  EXPECT_TRUE(has_nilpotent_factorization(make({{2, 3}})));
  EXPECT_FALSE(has_nilpotent_factorization(make({{2, 1}, {3, 1}})));
  EXPECT_TRUE(has_nilpotent_factorization(make({{3, 2}, {5, 1}})));
}

TEST(NilpotentNumber, Examples) {
  EXPECT_TRUE(is_nilpotent_number(8));
  EXPECT_FALSE(is_nilpotent_number(6));
  EXPECT_TRUE(is_nilpotent_number(45));
}

TEST(AbelianNumber, Examples) {
  EXPECT_TRUE(is_abelian_number(4));
  EXPECT_FALSE(is_abelian_number(8)); // a nonabelian group of order p^3 exists
  EXPECT_TRUE(is_abelian_number(45));
}

TEST(OrderedSylowNumber, Examples) {
  EXPECT_TRUE(is_ordered_sylow_number(6));
  EXPECT_FALSE(is_ordered_sylow_number(12));
  EXPECT_TRUE(is_ordered_sylow_number(30));
}

TEST(SupersolvableNumber, Examples) {
  EXPECT_TRUE(is_supersolvable_number(6));
  EXPECT_FALSE(is_supersolvable_number(12));
  EXPECT_FALSE(is_supersolvable_number(294));
}

TEST(AbelianCount, Examples) {
  EXPECT_EQ(abelian_group_count(15), 1u);
  EXPECT_EQ(abelian_group_count(4), 2u);
  EXPECT_EQ(abelian_group_count(45), 2u);
  EXPECT_THROW(abelian_group_count(8), std::domain_error);
}

TEST(Classify, Examples) {
  auto r1 = classify(1);
  for (auto p : kAllProperties)
    EXPECT_TRUE(r1.verdict(p));
  EXPECT_TRUE(r1.diagnoses.empty());

  auto r12 = classify(12);
  for (auto p : kAllProperties)
    EXPECT_FALSE(r12.verdict(p)) << to_string(p);

  auto r45 = classify(45);
  EXPECT_FALSE(r45.cyclic);
  EXPECT_TRUE(r45.abelian && r45.nilpotent && r45.supersolvable && r45.ordered_sylow);
  ASSERT_TRUE(r45.abelian_count);
  EXPECT_EQ(*r45.abelian_count, 2u);
}

TEST(Diagnose, Examples) {
  auto d12 = diagnose(12, Property::supersolvable);
  ASSERT_FALSE(d12.empty());
  EXPECT_EQ(d12[0].kind, ViolationKind::ss_f1);
  EXPECT_EQ(d12[0].get("p"), 3u);
  EXPECT_EQ(d12[0].get("q"), 2u);
  EXPECT_EQ(d12[0].get("v"), 2u);

  auto d4 = diagnose(4, Property::cyclic);
  ASSERT_EQ(d4.size(), 1u);
  EXPECT_EQ(d4[0].kind, ViolationKind::square_factor);
  EXPECT_EQ(d4[0].get("q"), 2u);

  auto d200 = diagnose(200, Property::supersolvable);
  ASSERT_EQ(d200.size(), 1u);
  EXPECT_EQ(d200[0].kind, ViolationKind::ss_f4);
  EXPECT_EQ(d200[0].get("p"), 2u);
  EXPECT_EQ(d200[0].get("q"), 5u);
}

TEST(Diagnose, CaseFamiliesAtSmallOrders) {
  auto d294 = diagnose(294, Property::supersolvable);
  ASSERT_EQ(d294.size(), 1u);
  EXPECT_EQ(d294[0].kind, ViolationKind::ss_f2);
  EXPECT_EQ(d294[0].params, (ParamList{{"p", 2}, {"p2", 3}, {"q", 7}}));

  auto d36 = diagnose(36, Property::supersolvable);
  ASSERT_EQ(d36.size(), 2u);
  EXPECT_EQ(d36[0].kind, ViolationKind::ss_f1);
  EXPECT_EQ(d36[1].kind, ViolationKind::ss_f3);
  EXPECT_EQ(d36[1].params, (ParamList{{"p", 2}, {"q", 3}}));
}

TEST(Diagnose, RejectsHoldingProperty) {
  EXPECT_THROW(diagnose(15, Property::cyclic), std::invalid_argument);
  EXPECT_THROW(diagnose(1, Property::supersolvable), std::invalid_argument);
}

TEST(Diagnose, ParametersDescribeFactorsOfN) {
  for (u64 n = 2; n <= 3000; ++n) {
    auto f = factorize(n);
    for (auto prop : kAllProperties) {
      if (holds(prop, f))
        continue;
      auto ds = diagnose(f, prop);
      ASSERT_FALSE(ds.empty());
      EXPECT_TRUE(std::is_sorted(ds.begin(), ds.end(), detail::diag_less));
      for (auto const &d : ds) {
        EXPECT_EQ(d.property, prop);
        switch (d.kind) {
        case ViolationKind::square_factor: EXPECT_EQ(n % (d.get("q") * d.get("q")), 0u); break;
        case ViolationKind::cube_factor: EXPECT_EQ(n % ipow(d.get("p"), 3), 0u); break;
        case ViolationKind::divisibility_pair:
        case ViolationKind::tower_psi: {
          u64 p = d.get("p"), q = d.get("q");
          auto k = static_cast<unsigned>(d.get("k"));
          EXPECT_EQ(n % (p * ipow(q, k)), 0u);
          EXPECT_EQ((ipow(q, k) - 1) % p, 0u);
          if (d.kind == ViolationKind::tower_psi)
            EXPECT_GT(p, q);
          break;
        }
        case ViolationKind::ss_f1: {
          u64 p = d.get("p"), q = d.get("q");
          auto v = static_cast<unsigned>(d.get("v"));
          EXPECT_GE(v, 2u);
          EXPECT_EQ(n % (p * ipow(q, v)), 0u);
          EXPECT_EQ(multiplicative_order(q % p, p), v);
          break;
        }
        case ViolationKind::ss_f2: {
          u64 p = d.get("p"), r = d.get("p2"), q = d.get("q");
          EXPECT_EQ((r - 1) % p, 0u);
          EXPECT_EQ((q - 1) % r, 0u);
          EXPECT_EQ(n % (p * r * ipow(q, static_cast<unsigned>(p))), 0u);
          break;
        }
        case ViolationKind::ss_f3:
        case ViolationKind::ss_f4: {
          u64 p = d.get("p"), q = d.get("q");
          unsigned pe = d.kind == ViolationKind::ss_f3 ? 2 : 3;
          EXPECT_EQ(n % (ipow(p, pe) * ipow(q, static_cast<unsigned>(p))), 0u);
          EXPECT_EQ((q - 1) % p, 0u);
          EXPECT_EQ((q - 1) % (p * p) == 0, d.kind == ViolationKind::ss_f4);
          break;
        }
        }
      }
    }
  }
}

TEST(Predicates, AgreeWithIndependentOracles) {
  for (u64 n = 1; n <= 5000; ++n) {
    auto f = factorize(n);
    u64 phi = 0;
    for (u64 k = 1; k <= n; ++k)
      phi += std::gcd(k, n) == 1;
    ASSERT_EQ(is_cyclic_number(f), std::gcd(n, phi) == 1) << n;
    ASSERT_EQ(is_nilpotent_number(f), oracle_nilpotent(f)) << n;
    ASSERT_EQ(is_ordered_sylow_number(f), oracle_ordered_sylow(f)) << n;
    ASSERT_EQ(is_supersolvable_number(f), oracle_supersolvable(f)) << n;
    ASSERT_EQ(is_abelian_number(f), is_abelian_number_direct(f)) << n;
  }
}

TEST(Predicates, ChainOnRandomLargeInputs) {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<u64> dist(1, 1'000'000'000'000ULL);
  for (int i = 0; i < 400; ++i) {
    u64 n = dist(rng);
    auto r = classify(n);
    EXPECT_TRUE(!r.cyclic || r.abelian) << n;
    EXPECT_TRUE(!r.abelian || r.nilpotent) << n;
    EXPECT_TRUE(!r.nilpotent || r.supersolvable) << n;
    EXPECT_TRUE(!r.supersolvable || r.ordered_sylow) << n;
  }
}

TEST(Predicates, SmallKnownLists) {
  // gcd(n, phi(n)) = 1 worked by hand for n < 40
  std::vector<u64> cyclic;
  for (u64 n = 1; n < 40; ++n)
    if (is_cyclic_number(n))
      cyclic.push_back(n);
  EXPECT_EQ(cyclic, (std::vector<u64>{1, 2, 3, 5, 7, 11, 13, 15, 17, 19, 23, 29, 31, 33, 35, 37}));
}

TEST(Properties, NamesRoundTrip) {
  for (auto p : kAllProperties)
    EXPECT_EQ(parse_property(to_string(p)), p);
  EXPECT_FALSE(parse_property("solvable"));
  for (int i = 0; i <= static_cast<int>(ViolationKind::tower_psi); ++i) {
    auto k = static_cast<ViolationKind>(i);
    EXPECT_EQ(parse_violation_kind(to_string(k)), k);
  }
}
