#pragma once

/// @file classify.hpp
/// @brief Arithmetic tests deciding whether every group of order n is cyclic,
/// abelian, nilpotent, supersolvable, or has an ordered Sylow tower, together
/// with structured diagnoses for every negative verdict.
///
/// A diagnosis names a divisor pattern of n (a "violation") from which a
/// concrete counterexample group can be built; see constructors.hpp.

#include <algorithm>
#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "arith.hpp"

namespace pnum {

enum class Property { cyclic, abelian, nilpotent, supersolvable, ordered_sylow };

inline constexpr std::array<Property, 5> kAllProperties = {
    Property::cyclic, Property::abelian, Property::nilpotent, Property::supersolvable,
    Property::ordered_sylow};

inline std::string_view to_string(Property p) {
  switch (p) {
  case Property::cyclic: return "cyclic";
  case Property::abelian: return "abelian";
  case Property::nilpotent: return "nilpotent";
  case Property::supersolvable: return "supersolvable";
  case Property::ordered_sylow: return "ordered_sylow";
  }
  return "?";
}

inline std::optional<Property> parse_property(std::string_view s) {
  for (auto p : kAllProperties)
    if (to_string(p) == s)
      return p;
  return std::nullopt;
}

/// Declaration order is the deterministic ordering of diagnoses.
enum class ViolationKind {
  square_factor,
  cube_factor,
  divisibility_pair,
  ss_f1,
  ss_f2,
  ss_f3,
  ss_f4,
  tower_psi
};

inline std::string_view to_string(ViolationKind k) {
  switch (k) {
  case ViolationKind::square_factor: return "square_factor";
  case ViolationKind::cube_factor: return "cube_factor";
  case ViolationKind::divisibility_pair: return "divisibility_pair";
  case ViolationKind::ss_f1: return "ss_f1";
  case ViolationKind::ss_f2: return "ss_f2";
  case ViolationKind::ss_f3: return "ss_f3";
  case ViolationKind::ss_f4: return "ss_f4";
  case ViolationKind::tower_psi: return "tower_psi";
  }
  return "?";
}

inline std::optional<ViolationKind> parse_violation_kind(std::string_view s) {
  for (int i = 0; i <= static_cast<int>(ViolationKind::tower_psi); ++i) {
    auto k = static_cast<ViolationKind>(i);
    if (to_string(k) == s)
      return k;
  }
  return std::nullopt;
}

/// Named integer parameters in a fixed, kind-specific order.
struct Param {
  std::string name;
  u64 value = 0;

  friend bool operator==(Param const &, Param const &) = default;
};

using ParamList = std::vector<Param>;

inline u64 param(ParamList const &ps, std::string_view name) {
  for (auto const &p : ps)
    if (p.name == name)
      return p.value;
  throw std::out_of_range("missing parameter '" + std::string(name) + "'");
}

/// Parameters by kind:
///   square_factor     q          with q^2 | n
///   cube_factor       p          with p^3 | n
///   divisibility_pair p, q, k    with p | q^k - 1, k = ord_p(q), p * q^k | n
///   tower_psi         p, q, k    as divisibility_pair with p > q
///   ss_f1             p, q, v    v = ord_p(q) >= 2, p * q^v | n
///   ss_f2             p, p2, q   p | p2 - 1, p2 | q - 1, p * p2 * q^p | n
///   ss_f3             p, q       p | q - 1, p^2 !| q - 1, p^2 * q^p | n
///   ss_f4             p, q       p^2 | q - 1, p^3 * q^p | n
struct ViolationDiagnosis {
  Property property = Property::cyclic;
  ViolationKind kind = ViolationKind::square_factor;
  ParamList params;

  u64 get(std::string_view name) const { return param(params, name); }

  friend bool operator==(ViolationDiagnosis const &, ViolationDiagnosis const &) = default;
};

struct ClassificationReport {
  u64 n = 1;
  Factorization factorization;
  bool cyclic = true;
  bool abelian = true;
  bool nilpotent = true;
  bool supersolvable = true;
  bool ordered_sylow = true;
  std::vector<ViolationDiagnosis> diagnoses;
  /// Number of abelian groups of order n, present for abelian numbers only.
  std::optional<u64> abelian_count;

  bool verdict(Property p) const {
    switch (p) {
    case Property::cyclic: return cyclic;
    case Property::abelian: return abelian;
    case Property::nilpotent: return nilpotent;
    case Property::supersolvable: return supersolvable;
    case Property::ordered_sylow: return ordered_sylow;
    }
    return false;
  }

  friend bool operator==(ClassificationReport const &, ClassificationReport const &) = default;
};

namespace detail {

/// Least k >= 1 with p | q^k - 1, for distinct primes p and q.
inline u64 order_mod(u64 q, u64 p) { return multiplicative_order(q % p, p); }

inline bool divides(u64 d, u64 n) { return n % d == 0; }

} // namespace detail

// ---------------------------------------------------------------------------
// Predicates
// ---------------------------------------------------------------------------

inline bool is_cyclic_number(Factorization const &f) { return std::gcd(f.n, euler_phi(f)) == 1; }
inline bool is_cyclic_number(u64 n) { return is_cyclic_number(factorize(n)); }

/// p_i does not divide p_j^k - 1 for any i != j and 1 <= k <= a_j.
inline bool has_nilpotent_factorization(Factorization const &f) {
  for (auto const &pi : f)
    for (auto const &pj : f)
      if (pi.p != pj.p && detail::order_mod(pj.p, pi.p) <= pj.a)
        return false;
  return true;
}

inline bool is_nilpotent_number(Factorization const &f) { return has_nilpotent_factorization(f); }
inline bool is_nilpotent_number(u64 n) { return is_nilpotent_number(factorize(n)); }

/// Cube-free with nilpotent factorization.
inline bool is_abelian_number(Factorization const &f) {
  return is_cube_free(f) && has_nilpotent_factorization(f);
}
inline bool is_abelian_number(u64 n) { return is_abelian_number(factorize(n)); }

/// Independent form: every a_i <= 2 and gcd(p_i, p_j^{a_j} - 1) = 1 for i != j.
inline bool is_abelian_number_direct(Factorization const &f) {
  for (auto const &pp : f)
    if (pp.a > 2)
      return false;
  for (auto const &pi : f)
    for (auto const &pj : f)
      if (pi.p != pj.p && powmod(pj.p, pj.a, pi.p) == 1)
        return false;
  return true;
}

/// For every i (primes ascending): gcd(p_i^{a_i} ... p_r^{a_r}, psi(p_i^{a_i})) = 1.
inline bool is_ordered_sylow_number(Factorization const &f) {
  auto const &fs = f.factors;
  for (std::size_t i = 0; i < fs.size(); ++i) {
    u64 tail = 1;
    for (std::size_t j = i; j < fs.size(); ++j)
      tail = checked_mul(tail, checked_pow(fs[j].p, fs[j].a));
    if (gcd_with_psi(tail, fs[i].p, fs[i].a) != 1)
      return false;
  }
  return true;
}
inline bool is_ordered_sylow_number(u64 n) { return is_ordered_sylow_number(factorize(n)); }

namespace detail {

inline std::vector<u64> prime_set(u64 m) { return m == 1 ? std::vector<u64>{} : distinct_primes(m); }

/// Condition (1): the primes of gcd(n, psi(p^a)) equal those of gcd(n, p - 1).
inline bool ss_condition1(Factorization const &f, PrimePower const &pp) {
  return prime_set(gcd_with_psi(f.n, pp.p, pp.a)) == prime_set(std::gcd(f.n, pp.p - 1));
}

} // namespace detail

/// Every group of order n is supersolvable iff
///  (1) for each i, gcd(n, psi(p_i^{a_i})) and gcd(n, p_i - 1) have the same
///      prime divisors, and
///  (2) whenever p_i <= a_k for some i != k:
///      (a) no prime p_j | n has p_i | p_j - 1 and p_j | p_k - 1, and
///      (b) a_i <= 2, and a_i = 2 forces p_i^2 | p_k - 1.
/// The comparison p_i <= a_k sets a prime against an exponent and is taken
/// literally, boundary included.
inline bool is_supersolvable_number(Factorization const &f) {
  for (auto const &pp : f)
    if (!detail::ss_condition1(f, pp))
      return false;
  for (auto const &pi : f) {
    for (auto const &pk : f) {
      if (pi.p == pk.p || pi.p > pk.a)
        continue;
      for (auto const &pj : f)
        if (detail::divides(pi.p, pj.p - 1) && detail::divides(pj.p, pk.p - 1))
          return false;
      if (pi.a > 2)
        return false;
      if (pi.a == 2 && !detail::divides(pi.p * pi.p, pk.p - 1))
        return false;
    }
  }
  return true;
}
inline bool is_supersolvable_number(u64 n) { return is_supersolvable_number(factorize(n)); }

inline bool holds(Property prop, Factorization const &f) {
  switch (prop) {
  case Property::cyclic: return is_cyclic_number(f);
  case Property::abelian: return is_abelian_number(f);
  case Property::nilpotent: return is_nilpotent_number(f);
  case Property::supersolvable: return is_supersolvable_number(f);
  case Property::ordered_sylow: return is_ordered_sylow_number(f);
  }
  return false;
}

inline bool holds(Property prop, u64 n) { return holds(prop, factorize(n)); }

/// Number of groups of order n when n is an abelian number: prod 2^{a_i - 1}.
inline u64 abelian_group_count(Factorization const &f) {
  if (!is_abelian_number(f))
    throw std::domain_error(std::to_string(f.n) + " is not an abelian number");
  u64 r = 1;
  for (auto const &pp : f)
    r <<= (pp.a - 1);
  return r;
}
inline u64 abelian_group_count(u64 n) { return abelian_group_count(factorize(n)); }

// ---------------------------------------------------------------------------
// Diagnoses
// ---------------------------------------------------------------------------

namespace detail {

inline ViolationDiagnosis make_diag(Property prop, ViolationKind kind, ParamList params) {
  return {prop, kind, std::move(params)};
}

/// Pairs (p, q) with p | q^k - 1, k = ord_p(q) <= min(a_q, max_k).
inline void divisibility_pairs(Factorization const &f, Property prop, unsigned max_k,
                               std::vector<ViolationDiagnosis> &out) {
  for (auto const &pi : f)
    for (auto const &pj : f) {
      if (pi.p == pj.p)
        continue;
      u64 k = order_mod(pj.p, pi.p);
      if (k <= pj.a && k <= max_k)
        out.push_back(make_diag(prop, ViolationKind::divisibility_pair,
                                {{"p", pi.p}, {"q", pj.p}, {"k", k}}));
    }
}

inline void diagnose_supersolvable(Factorization const &f, std::vector<ViolationDiagnosis> &out) {
  constexpr auto prop = Property::supersolvable;
  // f1: p * q^v with v = ord_p(q) >= 2.
  for (auto const &pp : f)
    for (auto const &qq : f) {
      if (pp.p == qq.p)
        continue;
      u64 v = order_mod(qq.p, pp.p);
      if (v >= 2 && v <= qq.a)
        out.push_back(make_diag(prop, ViolationKind::ss_f1, {{"p", pp.p}, {"q", qq.p}, {"v", v}}));
    }
  // f2..f4 need q^p | n and p | q - 1; when condition (1) holds the latter is
  // implied, otherwise an f1 diagnosis already exists.
  for (auto const &pp : f)
    for (auto const &qq : f) {
      if (pp.p == qq.p || pp.p > qq.a || !divides(pp.p, qq.p - 1))
        continue;
      for (auto const &rr : f)
        if (divides(pp.p, rr.p - 1) && divides(rr.p, qq.p - 1))
          out.push_back(
              make_diag(prop, ViolationKind::ss_f2, {{"p", pp.p}, {"p2", rr.p}, {"q", qq.p}}));
      bool p2_divides = divides(pp.p * pp.p, qq.p - 1);
      if (pp.a >= 2 && !p2_divides)
        out.push_back(make_diag(prop, ViolationKind::ss_f3, {{"p", pp.p}, {"q", qq.p}}));
      else if (pp.a >= 3 && p2_divides)
        out.push_back(make_diag(prop, ViolationKind::ss_f4, {{"p", pp.p}, {"q", qq.p}}));
    }
}

inline bool diag_less(ViolationDiagnosis const &a, ViolationDiagnosis const &b) {
  if (a.kind != b.kind)
    return a.kind < b.kind;
  return std::lexicographical_compare(
      a.params.begin(), a.params.end(), b.params.begin(), b.params.end(),
      [](Param const &x, Param const &y) { return x.value < y.value; });
}

} // namespace detail

/// All violations of the named property at n, sorted by kind then by
/// ascending parameters. Throws std::invalid_argument if the property holds.
inline std::vector<ViolationDiagnosis> diagnose(Factorization const &f, Property prop) {
  if (holds(prop, f))
    throw std::invalid_argument(std::to_string(f.n) + " is a " + std::string(to_string(prop)) +
                                " number; nothing to diagnose");
  std::vector<ViolationDiagnosis> out;
  switch (prop) {
  case Property::cyclic:
    for (auto const &pp : f)
      if (pp.a >= 2)
        out.push_back(detail::make_diag(prop, ViolationKind::square_factor, {{"q", pp.p}}));
    detail::divisibility_pairs(f, prop, 1, out);
    break;
  case Property::abelian:
    for (auto const &pp : f)
      if (pp.a >= 3)
        out.push_back(detail::make_diag(prop, ViolationKind::cube_factor, {{"p", pp.p}}));
    detail::divisibility_pairs(f, prop, 2, out);
    break;
  case Property::nilpotent:
    detail::divisibility_pairs(f, prop, ~0u, out);
    break;
  case Property::ordered_sylow:
    for (auto const &pj : f)
      for (auto const &pk : f) {
        if (pj.p <= pk.p)
          continue;
        u64 m = detail::order_mod(pk.p, pj.p);
        if (m <= pk.a)
          out.push_back(detail::make_diag(prop, ViolationKind::tower_psi,
                                          {{"p", pj.p}, {"q", pk.p}, {"k", m}}));
      }
    break;
  case Property::supersolvable:
    detail::diagnose_supersolvable(f, out);
    break;
  }
  std::sort(out.begin(), out.end(), detail::diag_less);
  if (out.empty())
    throw std::logic_error("diagnose: predicate false at " + std::to_string(f.n) +
                           " but no violation pattern found");
  return out;
}

inline std::vector<ViolationDiagnosis> diagnose(u64 n, Property prop) {
  return diagnose(factorize(n), prop);
}

inline ClassificationReport classify(u64 n) {
  ClassificationReport r;
  r.n = n;
  r.factorization = factorize(n);
  auto const &f = r.factorization;
  r.cyclic = is_cyclic_number(f);
  r.abelian = is_abelian_number(f);
  r.nilpotent = is_nilpotent_number(f);
  r.supersolvable = is_supersolvable_number(f);
  r.ordered_sylow = is_ordered_sylow_number(f);
  for (auto prop : kAllProperties)
    if (!r.verdict(prop))
      for (auto &d : diagnose(f, prop))
        r.diagnoses.push_back(std::move(d));
  if (r.abelian)
    r.abelian_count = abelian_group_count(f);
  return r;
}

} // namespace pnum
