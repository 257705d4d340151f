#pragma once

/// @file group.hpp
/// @brief Finite groups as validated Cayley tables, with subgroup, quotient,
/// center/normalizer and series computations by exhaustive scan.
///
/// Elements are dense indices 0..n-1. A FiniteGroup is immutable once built;
/// a Subgroup keeps a non-owning pointer to its parent, which must outlive it.

#include <algorithm>
#include <cstdint>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace pnum {

using Element = std::uint32_t;

struct TableLimits {
  /// Largest order accepted for a table-backed group (memory is O(n^2)).
  std::size_t max_order = 512;
};

class GroupError : public std::runtime_error {
public:
  enum class Kind {
    empty_table,
    not_square,
    out_of_range,
    no_identity,
    not_associative,
    missing_inverse,
    too_large,
    parse_error,
    not_normal,
    not_subgroup
  };

  GroupError(Kind kind, std::string const &what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const noexcept { return kind_; }

private:
  Kind kind_;
};

class FiniteGroup;

namespace detail {
inline bool light_associativity(std::size_t n, std::vector<Element> const &table);
} // namespace detail

class FiniteGroup {
public:
  /// Validates a row-major table: square, indices in range, two-sided
  /// identity, associativity, inverses (checked in that order, each failure
  /// reported with its own GroupError::Kind).
  static FiniteGroup from_table(std::vector<std::vector<Element>> const &rows, TableLimits limits = {}) {
    std::size_t n = rows.size();
    if (n == 0)
      throw GroupError(GroupError::Kind::empty_table, "group table is empty");
    std::vector<Element> flat;
    flat.reserve(n * n);
    for (auto const &row : rows) {
      if (row.size() != n)
        throw GroupError(GroupError::Kind::not_square, "group table is not square");
      flat.insert(flat.end(), row.begin(), row.end());
    }
    return from_flat(n, std::move(flat), limits);
  }

  static FiniteGroup from_flat(std::size_t n, std::vector<Element> table, TableLimits limits = {}) {
    if (n == 0)
      throw GroupError(GroupError::Kind::empty_table, "group table is empty");
    if (n > limits.max_order)
      throw GroupError(GroupError::Kind::too_large,
                       "group order " + std::to_string(n) + " exceeds table cap " +
                           std::to_string(limits.max_order));
    if (table.size() != n * n)
      throw GroupError(GroupError::Kind::not_square, "group table is not square");
    for (Element x : table)
      if (x >= n)
        throw GroupError(GroupError::Kind::out_of_range, "table entry " + std::to_string(x) + " out of range");

    FiniteGroup g;
    g.n_ = n;
    g.table_ = std::move(table);

    bool found = false;
    for (Element e = 0; e < n && !found; ++e) {
      bool ok = true;
      for (Element x = 0; x < n && ok; ++x)
        ok = g.table_[e * n + x] == x && g.table_[x * n + e] == x;
      if (ok) {
        g.identity_ = e;
        found = true;
      }
    }
    if (!found)
      throw GroupError(GroupError::Kind::no_identity, "table has no two-sided identity");

    if (!detail::light_associativity(n, g.table_))
      throw GroupError(GroupError::Kind::not_associative, "table is not associative");

    g.inverse_.assign(n, 0);
    for (Element x = 0; x < n; ++x) {
      bool ok = false;
      for (Element y = 0; y < n && !ok; ++y)
        if (g.table_[x * n + y] == g.identity_ && g.table_[y * n + x] == g.identity_) {
          g.inverse_[x] = y;
          ok = true;
        }
      if (!ok)
        throw GroupError(GroupError::Kind::missing_inverse,
                         "element " + std::to_string(x) + " has no inverse");
    }
    return g;
  }

  std::size_t order() const { return n_; }
  Element identity() const { return identity_; }
  Element mul(Element a, Element b) const { return table_[a * n_ + b]; }
  Element inv(Element a) const { return inverse_[a]; }
  Element conj(Element g, Element x) const { return mul(mul(g, x), inverse_[g]); } // g x g^-1
  Element commutator(Element a, Element b) const {
    return mul(mul(inverse_[a], inverse_[b]), mul(a, b));
  }

  Element pow(Element a, std::uint64_t k) const {
    Element r = identity_;
    Element base = a;
    while (k) {
      if (k & 1)
        r = mul(r, base);
      base = mul(base, base);
      k >>= 1;
    }
    return r;
  }

  std::span<const Element> row(Element a) const { return {table_.data() + a * n_, n_}; }
  std::vector<Element> const &table() const { return table_; }
  std::vector<Element> const &inverses() const { return inverse_; }

  std::vector<std::string> const &labels() const { return labels_; }
  FiniteGroup with_labels(std::vector<std::string> labels) const {
    if (labels.size() != n_)
      throw std::invalid_argument("label count does not match group order");
    FiniteGroup copy = *this;
    copy.labels_ = std::move(labels);
    return copy;
  }

  friend bool operator==(FiniteGroup const &a, FiniteGroup const &b) {
    return a.n_ == b.n_ && a.table_ == b.table_;
  }

private:
  FiniteGroup() = default;

  std::size_t n_ = 0;
  std::vector<Element> table_;
  Element identity_ = 0;
  std::vector<Element> inverse_;
  std::vector<std::string> labels_;
};

namespace detail {

/// Light's test: the elements a with (xa)y = x(ay) for all x, y are closed
/// under the operation, so checking a generating set decides associativity
/// for all triples. Generators are chosen greedily; the generated submagma is
/// taken as left-normed products, which is enough for the closure argument.
inline bool light_associativity(std::size_t n, std::vector<Element> const &t) {
  auto mul = [&](Element a, Element b) { return t[a * n + b]; };
  std::vector<char> reached(n, 0);
  std::vector<Element> gens;
  std::vector<Element> frontier;
  std::size_t reached_count = 0;
  auto mark = [&](Element x) {
    if (!reached[x]) {
      reached[x] = 1;
      ++reached_count;
      frontier.push_back(x);
    }
  };
  for (Element cand = 0; cand < n && reached_count < n; ++cand) {
    if (reached[cand])
      continue;
    gens.push_back(cand);
    // Restart the closure from every reached element with the enlarged set.
    frontier.clear();
    for (Element x = 0; x < n; ++x)
      if (reached[x])
        frontier.push_back(x);
    mark(cand);
    while (!frontier.empty()) {
      Element x = frontier.back();
      frontier.pop_back();
      for (Element s : gens)
        mark(mul(x, s));
    }
  }
  for (Element a : gens)
    for (Element x = 0; x < n; ++x) {
      Element xa = mul(x, a);
      for (Element y = 0; y < n; ++y)
        if (mul(xa, y) != mul(x, mul(a, y)))
          return false;
    }
  return true;
}

} // namespace detail

/// Brute-force triple check; kept as an independent route for tests.
inline bool is_associative_exhaustive(std::size_t n, std::vector<Element> const &t) {
  for (Element x = 0; x < n; ++x)
    for (Element y = 0; y < n; ++y) {
      Element xy = t[x * n + y];
      for (Element z = 0; z < n; ++z)
        if (t[xy * n + z] != t[x * n + t[y * n + z]])
          return false;
    }
  return true;
}

// ---------------------------------------------------------------------------
// Subgroups
// ---------------------------------------------------------------------------

class Subgroup {
public:
  /// Checked construction from an explicit member list.
  static Subgroup from_members(FiniteGroup const &g, std::vector<Element> members) {
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    Subgroup h(g, std::move(members));
    if (!h.contains(g.identity()))
      throw GroupError(GroupError::Kind::not_subgroup, "member set lacks the identity");
    for (Element a : h.members_) {
      if (!h.contains(g.inv(a)))
        throw GroupError(GroupError::Kind::not_subgroup, "member set not closed under inverses");
      for (Element b : h.members_)
        if (!h.contains(g.mul(a, b)))
          throw GroupError(GroupError::Kind::not_subgroup, "member set not closed under the product");
    }
    return h;
  }

  static Subgroup trivial(FiniteGroup const &g) { return Subgroup(g, {g.identity()}); }
  static Subgroup whole(FiniteGroup const &g) {
    std::vector<Element> all(g.order());
    std::iota(all.begin(), all.end(), Element{0});
    return Subgroup(g, std::move(all));
  }

  FiniteGroup const &parent() const { return *parent_; }
  std::vector<Element> const &members() const { return members_; }
  std::size_t order() const { return members_.size(); }
  std::size_t index() const { return parent_->order() / members_.size(); }
  bool contains(Element x) const { return x < mask_.size() && mask_[x]; }
  bool is_trivial() const { return members_.size() == 1; }
  bool is_whole() const { return members_.size() == parent_->order(); }

  bool is_subset_of(Subgroup const &other) const {
    return std::all_of(members_.begin(), members_.end(), [&](Element x) { return other.contains(x); });
  }

  friend bool operator==(Subgroup const &a, Subgroup const &b) { return a.members_ == b.members_; }
  friend bool operator<(Subgroup const &a, Subgroup const &b) { return a.members_ < b.members_; }

private:
  Subgroup(FiniteGroup const &g, std::vector<Element> sorted_members)
      : parent_(&g), members_(std::move(sorted_members)), mask_(g.order(), 0) {
    for (Element x : members_)
      mask_[x] = 1;
    if (members_.empty() || g.order() % members_.size() != 0)
      throw std::logic_error("subgroup order " + std::to_string(members_.size()) +
                             " does not divide group order " + std::to_string(g.order()));
  }

  friend Subgroup subgroup_closure(FiniteGroup const &, std::vector<Element> const &);
  friend Subgroup centralizer(FiniteGroup const &, std::vector<Element> const &);
  friend Subgroup normalizer(FiniteGroup const &, Subgroup const &);

  FiniteGroup const *parent_;
  std::vector<Element> members_;
  std::vector<char> mask_;
};

/// Smallest subgroup containing the seed.
inline Subgroup subgroup_closure(FiniteGroup const &g, std::vector<Element> const &seed) {
  std::vector<Element> gens;
  for (Element s : seed) {
    if (s >= g.order())
      throw GroupError(GroupError::Kind::out_of_range, "seed element out of range");
    if (s != g.identity())
      gens.push_back(s);
  }
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());

  std::vector<char> in(g.order(), 0);
  std::vector<Element> members{g.identity()};
  in[g.identity()] = 1;
  for (std::size_t i = 0; i < members.size(); ++i) {
    Element x = members[i];
    for (Element s : gens) {
      Element y = g.mul(x, s);
      if (!in[y]) {
        in[y] = 1;
        members.push_back(y);
      }
    }
  }
  std::sort(members.begin(), members.end());
  return Subgroup(g, std::move(members));
}

/// Closure of a subgroup with extra elements.
inline Subgroup join(Subgroup const &h, std::vector<Element> const &extra) {
  std::vector<Element> seed = h.members();
  seed.insert(seed.end(), extra.begin(), extra.end());
  return subgroup_closure(h.parent(), seed);
}

inline Subgroup cyclic_subgroup(FiniteGroup const &g, Element x) { return subgroup_closure(g, {x}); }

/// true iff g H g^-1 = H for all g.
inline bool is_normal(FiniteGroup const &g, Subgroup const &h) {
  for (Element x = 0; x < g.order(); ++x)
    for (Element m : h.members())
      if (!h.contains(g.conj(x, m)))
        return false;
  return true;
}

inline Subgroup centralizer(FiniteGroup const &g, std::vector<Element> const &s) {
  std::vector<Element> out;
  for (Element x = 0; x < g.order(); ++x) {
    bool ok = true;
    for (Element y : s)
      if (g.mul(x, y) != g.mul(y, x)) {
        ok = false;
        break;
      }
    if (ok)
      out.push_back(x);
  }
  return Subgroup(g, std::move(out));
}

inline Subgroup center(FiniteGroup const &g) {
  std::vector<Element> all(g.order());
  std::iota(all.begin(), all.end(), Element{0});
  return centralizer(g, all);
}

inline Subgroup normalizer(FiniteGroup const &g, Subgroup const &h) {
  std::vector<Element> out;
  for (Element x = 0; x < g.order(); ++x) {
    bool ok = true;
    for (Element m : h.members())
      if (!h.contains(g.conj(x, m))) {
        ok = false;
        break;
      }
    if (ok)
      out.push_back(x);
  }
  return Subgroup(g, std::move(out));
}

/// The conjugate x H x^-1.
inline Subgroup conjugate(Subgroup const &h, Element x) {
  auto const &g = h.parent();
  std::vector<Element> out;
  out.reserve(h.order());
  for (Element m : h.members())
    out.push_back(g.conj(x, m));
  return subgroup_closure(g, out);
}

inline Subgroup intersection(Subgroup const &a, Subgroup const &b) {
  std::vector<Element> out;
  for (Element x : a.members())
    if (b.contains(x))
      out.push_back(x);
  return subgroup_closure(a.parent(), out);
}

/// Closure of all commutators of pairs drawn from a and b.
inline Subgroup commutator_of(Subgroup const &a, Subgroup const &b) {
  auto const &g = a.parent();
  std::vector<char> seen(g.order(), 0);
  std::vector<Element> comms;
  for (Element x : a.members())
    for (Element y : b.members()) {
      Element c = g.commutator(x, y);
      if (!seen[c]) {
        seen[c] = 1;
        comms.push_back(c);
      }
    }
  return subgroup_closure(g, comms);
}

inline Subgroup commutator_subgroup(FiniteGroup const &g) {
  auto whole = Subgroup::whole(g);
  return commutator_of(whole, whole);
}

/// G = G^(0) >= G^(1) >= ... ; stops at the trivial group, or repeats the
/// stable term once when the series stalls above it.
inline std::vector<Subgroup> derived_series(FiniteGroup const &g) {
  std::vector<Subgroup> series{Subgroup::whole(g)};
  while (!series.back().is_trivial()) {
    auto next = commutator_of(series.back(), series.back());
    bool stalled = next == series.back();
    series.push_back(std::move(next));
    if (stalled)
      break;
  }
  return series;
}

// ---------------------------------------------------------------------------
// Quotients and products
// ---------------------------------------------------------------------------

/// G/N on cosets. Coset i is represented by the least element index it
/// contains; cosets are numbered by ascending representative.
struct Quotient {
  FiniteGroup group;
  std::vector<Element> projection;      // element of G -> coset index
  std::vector<Element> representatives; // coset index -> least element

  /// Full preimage of a subgroup of the quotient.
  std::vector<Element> preimage(std::vector<Element> const &cosets) const {
    std::vector<char> want(group.order(), 0);
    for (Element c : cosets)
      want[c] = 1;
    std::vector<Element> out;
    for (Element x = 0; x < projection.size(); ++x)
      if (want[projection[x]])
        out.push_back(x);
    return out;
  }
};

inline Quotient quotient_group(FiniteGroup const &g, Subgroup const &n, TableLimits limits = {}) {
  if (!is_normal(g, n))
    throw GroupError(GroupError::Kind::not_normal, "quotient by a subgroup that is not normal");
  constexpr Element unset = ~Element{0};
  std::vector<Element> proj(g.order(), unset);
  std::vector<Element> reps;
  for (Element x = 0; x < g.order(); ++x) {
    if (proj[x] != unset)
      continue;
    auto id = static_cast<Element>(reps.size());
    reps.push_back(x);
    for (Element m : n.members())
      proj[g.mul(x, m)] = id;
  }
  std::size_t k = reps.size();
  std::vector<Element> table(k * k);
  std::vector<std::string> labels(k);
  for (Element i = 0; i < k; ++i) {
    labels[i] = std::to_string(reps[i]) + "N";
    for (Element j = 0; j < k; ++j)
      table[i * k + j] = proj[g.mul(reps[i], reps[j])];
  }
  auto q = FiniteGroup::from_flat(k, std::move(table), limits).with_labels(std::move(labels));
  return Quotient{std::move(q), std::move(proj), std::move(reps)};
}

/// Z_0 = {e}, Z_{i+1} = preimage of Z(G/Z_i); stops when the series reaches G
/// or repeats (the repeated term is included).
inline std::vector<Subgroup> upper_central_series(FiniteGroup const &g) {
  std::vector<Subgroup> series{Subgroup::trivial(g)};
  while (true) {
    auto const &cur = series.back();
    auto q = quotient_group(g, cur);
    auto z = center(q.group);
    auto next = subgroup_closure(g, q.preimage(z.members()));
    bool done = next == cur || next.is_whole();
    series.push_back(std::move(next));
    if (done)
      break;
  }
  return series;
}

/// Componentwise product; the pair (a, b) has index a * |H| + b.
inline FiniteGroup direct_product(FiniteGroup const &a, FiniteGroup const &b, TableLimits limits = {}) {
  std::size_t na = a.order(), nb = b.order(), n = na * nb;
  if (n > limits.max_order)
    throw GroupError(GroupError::Kind::too_large,
                     "direct product order " + std::to_string(n) + " exceeds table cap " +
                         std::to_string(limits.max_order));
  std::vector<Element> t(n * n);
  for (Element x = 0; x < n; ++x)
    for (Element y = 0; y < n; ++y) {
      Element x1 = x / nb, x2 = x % nb, y1 = y / nb, y2 = y % nb;
      t[x * n + y] = a.mul(x1, y1) * nb + b.mul(x2, y2);
    }
  return FiniteGroup::from_flat(n, std::move(t), limits);
}

// ---------------------------------------------------------------------------
// Text serialization: order, then n rows of n indices, then the identity.
// ---------------------------------------------------------------------------

inline void write_group(std::ostream &os, FiniteGroup const &g) {
  std::size_t n = g.order();
  os << n << '\n';
  for (Element i = 0; i < n; ++i) {
    for (Element j = 0; j < n; ++j) {
      if (j)
        os << ' ';
      os << g.mul(i, j);
    }
    os << '\n';
  }
  os << g.identity() << '\n';
}

inline std::string dump_group(FiniteGroup const &g) {
  std::ostringstream os;
  write_group(os, g);
  return os.str();
}

inline FiniteGroup read_group(std::istream &is, TableLimits limits = {}) {
  auto fail = [](std::string const &msg) { return GroupError(GroupError::Kind::parse_error, msg); };
  long long n = 0;
  if (!(is >> n) || n <= 0)
    throw fail("expected a positive group order on the first line");
  if (static_cast<std::size_t>(n) > limits.max_order)
    throw GroupError(GroupError::Kind::too_large, "group order " + std::to_string(n) + " exceeds table cap");
  std::vector<Element> t(static_cast<std::size_t>(n * n));
  for (auto &x : t) {
    long long v;
    if (!(is >> v))
      throw fail("table ended early");
    if (v < 0 || v >= n)
      throw GroupError(GroupError::Kind::out_of_range, "table entry " + std::to_string(v) + " out of range");
    x = static_cast<Element>(v);
  }
  long long e;
  if (!(is >> e))
    throw fail("missing identity index after the table");
  auto g = FiniteGroup::from_flat(static_cast<std::size_t>(n), std::move(t), limits);
  if (e != static_cast<long long>(g.identity()))
    throw GroupError(GroupError::Kind::no_identity,
                     "declared identity " + std::to_string(e) + " does not act as identity");
  std::string rest;
  if (is >> rest)
    throw fail("trailing data after identity index");
  return g;
}

inline FiniteGroup load_group(std::string const &text, TableLimits limits = {}) {
  std::istringstream is(text);
  return read_group(is, limits);
}

// ---------------------------------------------------------------------------
// Permutation groups
// ---------------------------------------------------------------------------

/// Images of the points 0..d-1.
using Permutation = std::vector<Element>;

struct PermutationLimits {
  /// Largest closure enumerated before giving up.
  std::size_t max_closure = 20160;
};

/// Closure of the generators under composition, as a Cayley table. Element 0
/// is the identity and elements appear in breadth-first order; the product
/// x * y applies x first, then y. The closure is bounded by
/// PermutationLimits, and the table itself by TableLimits.
inline FiniteGroup from_permutations(std::vector<Permutation> const &gens, PermutationLimits plimits = {},
                                     TableLimits tlimits = {}) {
  std::size_t d = gens.empty() ? 0 : gens.front().size();
  for (auto const &g : gens) {
    if (g.size() != d)
      throw std::invalid_argument("from_permutations: generators act on different point counts");
    std::vector<char> hit(d, 0);
    for (Element x : g) {
      if (x >= d || hit[x])
        throw std::invalid_argument("from_permutations: generator is not a bijection");
      hit[x] = 1;
    }
  }
  auto compose = [d](Permutation const &x, Permutation const &y) {
    Permutation r(d);
    for (std::size_t i = 0; i < d; ++i)
      r[i] = y[x[i]];
    return r;
  };
  Permutation id(d);
  std::iota(id.begin(), id.end(), Element{0});
  std::map<Permutation, Element> index{{id, 0}};
  std::vector<Permutation> elems{id};
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (auto const &g : gens) {
      auto y = compose(elems[i], g);
      if (index.emplace(y, static_cast<Element>(elems.size())).second) {
        elems.push_back(std::move(y));
        if (elems.size() > plimits.max_closure)
          throw GroupError(GroupError::Kind::too_large,
                           "permutation closure exceeds cap " + std::to_string(plimits.max_closure));
      }
    }
  std::size_t n = elems.size();
  if (n > tlimits.max_order)
    throw GroupError(GroupError::Kind::too_large,
                     "permutation group of order " + std::to_string(n) + " exceeds table cap " +
                         std::to_string(tlimits.max_order));
  std::vector<Element> t(n * n);
  for (Element i = 0; i < n; ++i)
    for (Element j = 0; j < n; ++j)
      t[i * n + j] = index.at(compose(elems[i], elems[j]));
  return FiniteGroup::from_flat(n, std::move(t), tlimits);
}

/// Permutation of d points given as disjoint cycles.
inline Permutation from_cycles(std::size_t d, std::vector<std::vector<Element>> const &cycles) {
  Permutation p(d);
  std::iota(p.begin(), p.end(), Element{0});
  for (auto const &c : cycles)
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (c[i] >= d)
        throw std::invalid_argument("from_cycles: point out of range");
      p[c[i]] = c[(i + 1) % c.size()];
    }
  return p;
}

} // namespace pnum
