#pragma once

/// @file analysis.hpp
/// @brief Group-level property tests and Sylow, Hall and transfer machinery.
///
/// These are the ground-truth side of the arithmetic classifiers: every
/// counterexample group is checked here. All routines are exhaustive scans
/// over the Cayley table and are intended for orders up to a few hundred.

#include <algorithm>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "arith.hpp"
#include "classify.hpp"
#include "group.hpp"

namespace pnum {

inline std::size_t element_order(FiniteGroup const &g, Element x) {
  std::size_t k = 1;
  for (Element y = x; y != g.identity(); y = g.mul(y, x))
    ++k;
  return k;
}

inline std::vector<u64> prime_divisors(FiniteGroup const &g) { return distinct_primes(g.order()); }

/// p-part of the group order.
inline std::size_t p_part(std::size_t n, u64 p) {
  std::size_t r = 1;
  while (n % p == 0) {
    n /= p;
    r *= p;
  }
  return r;
}

// ---------------------------------------------------------------------------
// Sylow subgroups
// ---------------------------------------------------------------------------

/// A Sylow p-subgroup, grown by normalizer ascent: start from the cyclic group
/// of the least element of order p, then repeatedly adjoin the least element
/// g of N_G(P) \ P with g^p in P. Returns the trivial subgroup if p does not
/// divide |G|.
inline Subgroup sylow_subgroup(FiniteGroup const &g, u64 p) {
  std::size_t target = p_part(g.order(), p);
  if (target == 1)
    return Subgroup::trivial(g);
  std::optional<Subgroup> cur;
  for (Element x = 0; x < g.order() && !cur; ++x)
    if (element_order(g, x) == p)
      cur = cyclic_subgroup(g, x);
  if (!cur)
    throw std::logic_error("sylow_subgroup: no element of order " + std::to_string(p));
  while (cur->order() < target) {
    auto n = normalizer(g, *cur);
    bool grown = false;
    for (Element x : n.members()) {
      if (cur->contains(x) || !cur->contains(g.pow(x, p)))
        continue;
      cur = join(*cur, {x});
      grown = true;
      break;
    }
    if (!grown)
      throw std::logic_error("sylow_subgroup: normalizer ascent stalled at order " +
                             std::to_string(cur->order()));
  }
  if (cur->order() != target)
    throw std::logic_error("sylow_subgroup: overshot the Sylow order");
  return *cur;
}

/// Distinct conjugates of a subgroup.
inline std::vector<Subgroup> conjugates(Subgroup const &h) {
  auto const &g = h.parent();
  std::set<std::vector<Element>> seen;
  std::vector<Subgroup> out;
  for (Element x = 0; x < g.order(); ++x) {
    std::vector<Element> m;
    m.reserve(h.order());
    for (Element y : h.members())
      m.push_back(g.conj(x, y));
    std::sort(m.begin(), m.end());
    if (seen.insert(m).second)
      out.push_back(subgroup_closure(g, m));
  }
  return out;
}

/// n_p. Checks n_p = 1 (mod p) and n_p = |G : N_G(P)|; a failure is a bug.
inline std::size_t sylow_count(FiniteGroup const &g, u64 p) {
  auto sylow = sylow_subgroup(g, p);
  if (sylow.is_trivial())
    return 1;
  std::size_t np = conjugates(sylow).size();
  if (np % p != 1 % p)
    throw std::logic_error("sylow_count: n_p = " + std::to_string(np) + " is not 1 mod " + std::to_string(p));
  if (np != normalizer(g, sylow).index())
    throw std::logic_error("sylow_count: n_p differs from the normalizer index");
  return np;
}

// ---------------------------------------------------------------------------
// Property tests
// ---------------------------------------------------------------------------

inline bool is_cyclic_group(FiniteGroup const &g) {
  for (Element x = 0; x < g.order(); ++x)
    if (element_order(g, x) == g.order())
      return true;
  return false;
}

inline bool is_abelian_group(FiniteGroup const &g) {
  for (Element x = 0; x < g.order(); ++x)
    for (Element y = x + 1; y < g.order(); ++y)
      if (g.mul(x, y) != g.mul(y, x))
        return false;
  return true;
}

inline bool is_abelian(Subgroup const &h) {
  auto const &g = h.parent();
  for (Element x : h.members())
    for (Element y : h.members())
      if (g.mul(x, y) != g.mul(y, x))
        return false;
  return true;
}

/// Every Sylow subgroup is normal.
inline bool is_nilpotent_group(FiniteGroup const &g) {
  for (u64 p : prime_divisors(g))
    if (!is_normal(g, sylow_subgroup(g, p)))
      return false;
  return true;
}

/// The upper central series reaches G.
inline bool is_nilpotent_by_central_series(FiniteGroup const &g) {
  return upper_central_series(g).back().is_whole();
}

/// G is the internal direct product of one Sylow subgroup per prime: elements
/// of different Sylows commute, pairwise intersections are trivial, and the
/// product set has |G| elements.
inline bool is_direct_product_of_sylows(FiniteGroup const &g) {
  std::vector<Subgroup> sylows;
  for (u64 p : prime_divisors(g))
    sylows.push_back(sylow_subgroup(g, p));
  for (std::size_t i = 0; i < sylows.size(); ++i)
    for (std::size_t j = i + 1; j < sylows.size(); ++j) {
      if (!intersection(sylows[i], sylows[j]).is_trivial())
        return false;
      for (Element x : sylows[i].members())
        for (Element y : sylows[j].members())
          if (g.mul(x, y) != g.mul(y, x))
            return false;
    }
  std::vector<char> in(g.order(), 0);
  in[g.identity()] = 1;
  std::vector<Element> prod{g.identity()};
  for (auto const &s : sylows) {
    std::vector<Element> next;
    std::fill(in.begin(), in.end(), 0);
    for (Element x : prod)
      for (Element y : s.members()) {
        Element z = g.mul(x, y);
        if (!in[z]) {
          in[z] = 1;
          next.push_back(z);
        }
      }
    prod = std::move(next);
  }
  return prod.size() == g.order();
}

inline bool is_solvable_group(FiniteGroup const &g) { return derived_series(g).back().is_trivial(); }

/// Recursive form: the Sylow subgroup for the largest prime is normal and the
/// quotient by it again has an ordered Sylow tower.
inline bool has_ordered_sylow_tower(FiniteGroup const &g) {
  if (g.order() == 1)
    return true;
  auto primes = prime_divisors(g);
  auto top = sylow_subgroup(g, primes.back());
  if (!is_normal(g, top))
    return false;
  return has_ordered_sylow_tower(quotient_group(g, top).group);
}

/// Product form: with one Sylow P_i per prime (ascending), each product
/// P_i P_{i+1} ... P_r is a normal subgroup of order p_i^{a_i} ... p_r^{a_r}.
inline bool sylow_tail_products_normal(FiniteGroup const &g) {
  auto primes = prime_divisors(g);
  std::vector<Element> seed;
  std::size_t expected = 1;
  for (auto it = primes.rbegin(); it != primes.rend(); ++it) {
    auto s = sylow_subgroup(g, *it);
    seed.insert(seed.end(), s.members().begin(), s.members().end());
    expected *= s.order();
    auto prod = subgroup_closure(g, seed);
    if (prod.order() != expected || !is_normal(g, prod))
      return false;
  }
  return true;
}

/// A normal subgroup of prime order, the one generated by the least element
/// index that works.
inline std::optional<Subgroup> prime_order_normal_subgroup(FiniteGroup const &g) {
  for (Element x = 0; x < g.order(); ++x) {
    if (x == g.identity() || !is_prime(element_order(g, x)))
      continue;
    auto c = cyclic_subgroup(g, x);
    if (is_normal(g, c))
      return c;
  }
  return std::nullopt;
}

/// Trivial groups are supersolvable; otherwise G is supersolvable iff it has a
/// normal subgroup N of prime order with G/N supersolvable. Quotients of
/// supersolvable groups are supersolvable, so one such N decides the branch.
inline bool is_supersolvable_group(FiniteGroup const &g) {
  if (g.order() == 1)
    return true;
  auto n = prime_order_normal_subgroup(g);
  if (!n)
    return false;
  return is_supersolvable_group(quotient_group(g, *n).group);
}

inline bool group_has(Property prop, FiniteGroup const &g) {
  switch (prop) {
  case Property::cyclic: return is_cyclic_group(g);
  case Property::abelian: return is_abelian_group(g);
  case Property::nilpotent: return is_nilpotent_group(g);
  case Property::supersolvable: return is_supersolvable_group(g);
  case Property::ordered_sylow: return has_ordered_sylow_tower(g);
  }
  return false;
}

inline std::string_view group_test_name(Property prop) {
  switch (prop) {
  case Property::cyclic: return "is_cyclic_group";
  case Property::abelian: return "is_abelian_group";
  case Property::nilpotent: return "is_nilpotent_group";
  case Property::supersolvable: return "is_supersolvable_group";
  case Property::ordered_sylow: return "has_ordered_sylow_tower";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Normal structure
// ---------------------------------------------------------------------------

inline Subgroup normal_closure(FiniteGroup const &g, std::vector<Element> const &seed) {
  std::vector<Element> conj;
  for (Element s : seed)
    for (Element x = 0; x < g.order(); ++x)
      conj.push_back(g.conj(x, s));
  return subgroup_closure(g, conj);
}

/// Minimal normal subgroups: the inclusion-minimal normal closures of single
/// non-identity elements.
inline std::vector<Subgroup> minimal_normal_subgroups(FiniteGroup const &g) {
  std::set<Subgroup> closures;
  for (Element x = 0; x < g.order(); ++x)
    if (x != g.identity())
      closures.insert(normal_closure(g, {x}));
  std::vector<Subgroup> out;
  for (auto const &c : closures) {
    bool minimal = std::none_of(closures.begin(), closures.end(), [&](Subgroup const &d) {
      return d.order() < c.order() && d.is_subset_of(c);
    });
    if (minimal)
      out.push_back(c);
  }
  return out;
}

/// Abelian, and every non-identity element has the same prime order.
inline bool is_elementary_abelian(Subgroup const &h) {
  if (!is_abelian(h))
    return false;
  auto const &g = h.parent();
  std::size_t p = 0;
  for (Element x : h.members()) {
    if (x == g.identity())
      continue;
    std::size_t o = element_order(g, x);
    if (!is_prime(o) || (p && o != p))
      return false;
    p = o;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Hall subgroups
// ---------------------------------------------------------------------------

struct HallLimits {
  std::size_t max_order = 60;
};

/// A subgroup whose order is the pi-part of |G|, or nullopt when none exists.
///
/// Searches the pi-subgroups reachable from cyclic pi-subgroups by repeatedly
/// joining one more pi-element. Every pi-subgroup is reached this way, and
/// subgroups whose order is not a pi-number are pruned since no Hall
/// pi-subgroup can contain them, so the search is exhaustive.
inline std::optional<Subgroup> hall_subgroup(FiniteGroup const &g, std::vector<u64> const &pi,
                                             HallLimits limits = {}) {
  if (g.order() > limits.max_order)
    throw GroupError(GroupError::Kind::too_large,
                     "hall_subgroup: order " + std::to_string(g.order()) + " exceeds search cap " +
                         std::to_string(limits.max_order));
  auto in_pi = [&](u64 p) { return std::find(pi.begin(), pi.end(), p) != pi.end(); };
  std::size_t target = 1;
  for (auto const &pp : factorize(g.order()))
    if (in_pi(pp.p))
      target *= checked_pow(pp.p, pp.a);
  if (target == 1)
    return Subgroup::trivial(g);
  auto is_pi_number = [&](std::size_t m) { return target % m == 0; };

  std::vector<Element> pi_elements;
  for (Element x = 0; x < g.order(); ++x)
    if (x != g.identity() && is_pi_number(element_order(g, x)))
      pi_elements.push_back(x);

  std::set<std::vector<Element>> seen;
  std::vector<Subgroup> queue;
  auto visit = [&](Subgroup s) -> bool {
    if (!is_pi_number(s.order()) || !seen.insert(s.members()).second)
      return false;
    queue.push_back(std::move(s));
    return queue.back().order() == target;
  };
  for (Element x : pi_elements)
    if (visit(cyclic_subgroup(g, x)))
      return queue.back();
  for (std::size_t i = 0; i < queue.size(); ++i)
    for (Element x : pi_elements) {
      if (queue[i].contains(x))
        continue;
      if (visit(join(queue[i], {x})))
        return queue.back();
    }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Transfer
// ---------------------------------------------------------------------------

/// The transfer V: G -> H/H'. Each image is stored as the least element index
/// of its coset of H' in H.
struct TransferMap {
  FiniteGroup const *source = nullptr;
  Subgroup target;
  Subgroup derived_of_target;
  std::vector<Element> images;
  std::vector<Element> coset_label; // h in H -> least element of hH'; unused outside H

  Element identity_image() const { return coset_label[source->identity()]; }

  std::size_t image_order() const {
    std::set<Element> s(images.begin(), images.end());
    return s.size();
  }

  Subgroup kernel() const {
    std::vector<Element> k;
    for (Element x = 0; x < images.size(); ++x)
      if (images[x] == identity_image())
        k.push_back(x);
    return subgroup_closure(*source, k);
  }

  /// V(xy) = V(x)V(y) mod H' for all pairs.
  bool is_homomorphism() const {
    auto const &g = *source;
    for (Element x = 0; x < g.order(); ++x)
      for (Element y = 0; y < g.order(); ++y)
        if (coset_label[g.mul(images[x], images[y])] != images[g.mul(x, y)])
          return false;
    return true;
  }
};

namespace detail {

/// Right coset Hx id for every element, numbered by least member.
inline std::vector<Element> right_coset_ids(FiniteGroup const &g, Subgroup const &h, std::size_t &count) {
  constexpr Element unset = ~Element{0};
  std::vector<Element> id(g.order(), unset);
  count = 0;
  for (Element x = 0; x < g.order(); ++x) {
    if (id[x] != unset)
      continue;
    for (Element m : h.members())
      id[g.mul(m, x)] = static_cast<Element>(count);
    ++count;
  }
  return id;
}

} // namespace detail

/// Right transversal of H using the least element of each coset.
inline std::vector<Element> min_right_transversal(FiniteGroup const &g, Subgroup const &h) {
  std::size_t count = 0;
  auto ids = detail::right_coset_ids(g, h, count);
  std::vector<Element> reps(count, 0);
  std::vector<char> set(count, 0);
  for (Element x = 0; x < g.order(); ++x)
    if (!set[ids[x]]) {
      set[ids[x]] = 1;
      reps[ids[x]] = x;
    }
  return reps;
}

/// Right transversal with a uniformly random member of each coset.
template <class Rng>
std::vector<Element> random_right_transversal(FiniteGroup const &g, Subgroup const &h, Rng &rng) {
  auto reps = min_right_transversal(g, h);
  std::uniform_int_distribution<std::size_t> pick(0, h.order() - 1);
  for (auto &r : reps)
    r = g.mul(h.members()[pick(rng)], r);
  return reps;
}

/// V(g) = prod_i x_i g phi(x_i g)^{-1} mod H' over the given right transversal.
inline TransferMap transfer_with_transversal(FiniteGroup const &g, Subgroup const &h,
                                             std::vector<Element> const &reps) {
  if (&h.parent() != &g)
    throw GroupError(GroupError::Kind::not_subgroup, "transfer: subgroup belongs to another group");
  std::size_t count = 0;
  auto ids = detail::right_coset_ids(g, h, count);
  if (reps.size() != count)
    throw std::invalid_argument("transfer: transversal has the wrong size");
  std::vector<Element> rep_of(count);
  std::vector<char> hit(count, 0);
  for (Element r : reps) {
    if (r >= g.order() || hit[ids[r]])
      throw std::invalid_argument("transfer: representatives do not form a right transversal");
    hit[ids[r]] = 1;
    rep_of[ids[r]] = r;
  }

  TransferMap t{&g, h, commutator_of(h, h), {}, std::vector<Element>(g.order(), 0)};
  for (Element x : h.members()) {
    Element least = x;
    for (Element d : t.derived_of_target.members())
      least = std::min(least, g.mul(x, d));
    t.coset_label[x] = least;
  }

  t.images.resize(g.order());
  for (Element x = 0; x < g.order(); ++x) {
    Element acc = g.identity();
    for (Element r : reps) {
      Element rx = g.mul(r, x);
      Element factor = g.mul(rx, g.inv(rep_of[ids[rx]]));
      if (!h.contains(factor))
        throw std::logic_error("transfer: factor outside the target subgroup");
      acc = g.mul(acc, factor);
    }
    t.images[x] = t.coset_label[acc];
  }
  return t;
}

/// Transfer into H with least-index representatives. When H is a Sylow
/// subgroup, |V(G)| = |H| / |H cap G'| is checked.
inline TransferMap transfer(FiniteGroup const &g, Subgroup const &h) {
  auto t = transfer_with_transversal(g, h, min_right_transversal(g, h));
  auto hf = factorize(h.order());
  bool sylow = hf.size() == 1 && std::gcd(h.index(), h.order()) == 1;
  if (sylow) {
    auto focal = intersection(h, commutator_subgroup(g));
    if (t.image_order() != h.order() / focal.order())
      throw std::logic_error("transfer: image order differs from |P| / |P cap G'|");
  }
  return t;
}

/// If P lies in the center of its normalizer, the kernel of the transfer into
/// P is a normal complement of index |P|; otherwise nullopt.
inline std::optional<Subgroup> burnside_complement(FiniteGroup const &g, Subgroup const &p) {
  auto n = normalizer(g, p);
  for (Element x : p.members())
    for (Element y : n.members())
      if (g.mul(x, y) != g.mul(y, x))
        return std::nullopt;
  auto k = transfer(g, p).kernel();
  if (!is_normal(g, k) || k.index() != p.order())
    throw std::logic_error("burnside_complement: transfer kernel is not a normal complement");
  return k;
}

} // namespace pnum
