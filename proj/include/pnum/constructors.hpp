#pragma once

/// @file constructors.hpp
/// @brief Concrete groups: cyclic, Heisenberg, semidirect products with an
/// elementary abelian base, Redei's skew products, the affine monomial case
/// groups, and witness recipes built from them.

#include <algorithm>
#include <array>
#include <charconv>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "analysis.hpp"
#include "arith.hpp"
#include "classify.hpp"
#include "group.hpp"

namespace pnum {

namespace detail {

inline void check_cap(u64 order, TableLimits limits, std::string_view who) {
  if (order > limits.max_order)
    throw GroupError(GroupError::Kind::too_large, std::string(who) + ": order " + std::to_string(order) +
                                                      " exceeds cap " + std::to_string(limits.max_order));
}

inline void require_prime(u64 p, std::string_view who) {
  if (!is_prime(p))
    throw std::invalid_argument(std::string(who) + ": " + std::to_string(p) + " is not prime");
}

/// Least x >= 2 with multiplicative order exactly `order` modulo the prime m.
inline u64 least_of_order(u64 order, u64 m) {
  for (u64 x = 2; x < m; ++x)
    if (multiplicative_order(x, m) == order)
      return x;
  throw std::invalid_argument("no unit of order " + std::to_string(order) + " modulo " + std::to_string(m));
}

/// Vectors of F_p^k encoded as base-p integers, coordinate i at digit i.
struct VecCodec {
  u64 p;
  unsigned k;
  u64 size;

  VecCodec(u64 p_, unsigned k_) : p(p_), k(k_), size(checked_pow(p_, k_)) {}

  std::vector<u64> decode(u64 x) const {
    std::vector<u64> d(k);
    for (unsigned i = 0; i < k; ++i, x /= p)
      d[i] = x % p;
    return d;
  }
  u64 encode(std::vector<u64> const &d) const {
    u64 x = 0;
    for (unsigned i = k; i-- > 0;)
      x = x * p + d[i] % p;
    return x;
  }
  u64 add(u64 a, u64 b) const {
    auto da = decode(a), db = decode(b);
    for (unsigned i = 0; i < k; ++i)
      da[i] = (da[i] + db[i]) % p;
    return encode(da);
  }
};

} // namespace detail

// ---------------------------------------------------------------------------
// Elementary families
// ---------------------------------------------------------------------------

/// C_m as addition modulo m.
inline FiniteGroup make_cyclic(u64 m, TableLimits limits = {}) {
  if (m == 0)
    throw std::invalid_argument("make_cyclic: order must be positive");
  detail::check_cap(m, limits, "make_cyclic");
  std::vector<Element> t(m * m);
  for (u64 i = 0; i < m; ++i)
    for (u64 j = 0; j < m; ++j)
      t[i * m + j] = static_cast<Element>((i + j) % m);
  return FiniteGroup::from_flat(m, std::move(t), limits);
}

/// Upper unitriangular 3x3 matrices over F_p. The element (a, b, c) is the
/// matrix [[1, a, b], [0, 1, c], [0, 0, 1]] with index a p^2 + b p + c.
inline FiniteGroup make_heisenberg(u64 p, TableLimits limits = {}) {
  detail::require_prime(p, "make_heisenberg");
  u64 n = checked_pow(p, 3);
  detail::check_cap(n, limits, "make_heisenberg");
  auto idx = [p](u64 a, u64 b, u64 c) { return static_cast<Element>((a % p) * p * p + (b % p) * p + c % p); };
  std::vector<Element> t(n * n);
  for (u64 x = 0; x < n; ++x)
    for (u64 y = 0; y < n; ++y) {
      u64 a = x / (p * p), b = x / p % p, c = x % p;
      u64 a2 = y / (p * p), b2 = y / p % p, c2 = y % p;
      t[x * n + y] = idx(a + a2, b + b2 + a * c2, c + c2);
    }
  auto g = FiniteGroup::from_flat(n, std::move(t), limits);
  Element xw = idx(1, 1, 1), yw = idx(1, 0, 0);
  if (g.mul(xw, yw) == g.mul(yw, xw))
    throw std::logic_error("make_heisenberg: witness pair commutes");
  return g;
}

/// Row-major k x k matrix over F_p.
using Matrix = std::vector<u64>;

inline Matrix mat_mul(Matrix const &a, Matrix const &b, u64 p, unsigned k) {
  Matrix r(k * k, 0);
  for (unsigned i = 0; i < k; ++i)
    for (unsigned l = 0; l < k; ++l) {
      if (!a[i * k + l])
        continue;
      for (unsigned j = 0; j < k; ++j)
        r[i * k + j] = (r[i * k + j] + a[i * k + l] * b[l * k + j]) % p;
    }
  return r;
}

struct MatrixSearchLimits {
  /// Largest number of candidate matrices (p^(k^2)) scanned.
  u64 max_candidates = u64{1} << 24;
};

/// First matrix of GL_k(F_p) with multiplicative order exactly m, scanning
/// matrices as row-major base-p numbers in ascending order.
inline std::optional<Matrix> find_matrix_of_order(u64 p, unsigned k, u64 m, MatrixSearchLimits limits = {}) {
  detail::require_prime(p, "find_matrix_of_order");
  if (k == 0 || m == 0)
    throw std::invalid_argument("find_matrix_of_order: k and m must be positive");
  u64 candidates = 1;
  for (unsigned i = 0; i < k * k; ++i) {
    candidates = checked_mul(candidates, p);
    if (candidates > limits.max_candidates)
      throw std::domain_error("find_matrix_of_order: search space p^(k^2) exceeds " +
                              std::to_string(limits.max_candidates));
  }
  Matrix id(k * k, 0);
  for (unsigned i = 0; i < k; ++i)
    id[i * k + i] = 1;
  detail::VecCodec codec(p, k * k);
  for (u64 c = 0; c < candidates; ++c) {
    // digit i of c is entry i of the row-major layout, most significant first
    auto digits = codec.decode(c);
    Matrix a(digits.rbegin(), digits.rend());
    Matrix x = a;
    u64 ord = 1;
    while (x != id && ord <= m) {
      x = mat_mul(x, a, p, k);
      ++ord;
    }
    if (x == id && ord == m)
      return a;
  }
  return std::nullopt;
}

/// E x| C_m with E = (C_p)^k: pairs (v, t) multiplied as
/// (v, t)(w, s) = (v + A^t w, t + s mod m) for the first matrix A of order m.
/// The pair (v, t) has index t p^k + v.
inline FiniteGroup make_semidirect_elem_abelian(u64 p, unsigned k, u64 m, TableLimits limits = {}) {
  detail::require_prime(p, "make_semidirect_elem_abelian");
  if (k == 0 || m < 2)
    throw std::invalid_argument("make_semidirect_elem_abelian: need k >= 1 and m >= 2");
  detail::VecCodec codec(p, k);
  u64 n = checked_mul(codec.size, m);
  detail::check_cap(n, limits, "make_semidirect_elem_abelian");
  auto a = find_matrix_of_order(p, k, m);
  if (!a)
    throw std::invalid_argument("make_semidirect_elem_abelian: GL_" + std::to_string(k) + "(F_" +
                                std::to_string(p) + ") has no element of order " + std::to_string(m));
  // act[t][w] = A^t w
  std::vector<std::vector<u64>> act(m, std::vector<u64>(codec.size));
  Matrix at(k * k, 0);
  for (unsigned i = 0; i < k; ++i)
    at[i * k + i] = 1;
  for (u64 t = 0; t < m; ++t) {
    for (u64 w = 0; w < codec.size; ++w) {
      auto wd = codec.decode(w);
      std::vector<u64> r(k, 0);
      for (unsigned i = 0; i < k; ++i)
        for (unsigned j = 0; j < k; ++j)
          r[i] = (r[i] + at[i * k + j] * wd[j]) % p;
      act[t][w] = codec.encode(r);
    }
    at = mat_mul(at, *a, p, k);
  }
  std::vector<Element> tab(n * n);
  for (u64 x = 0; x < n; ++x)
    for (u64 y = 0; y < n; ++y) {
      u64 t = x / codec.size, v = x % codec.size;
      u64 s = y / codec.size, w = y % codec.size;
      tab[x * n + y] = static_cast<Element>((t + s) % m * codec.size + codec.add(v, act[t][w]));
    }
  auto g = FiniteGroup::from_flat(n, std::move(tab), limits);
  if (is_abelian_group(g))
    throw std::logic_error("make_semidirect_elem_abelian: action is trivial");
  return g;
}

// ---------------------------------------------------------------------------
// Finite fields and Redei groups
// ---------------------------------------------------------------------------

/// F_{q^v} as polynomials over F_q reduced modulo a monic irreducible of
/// degree v. The polynomial sum c_i x^i has index sum c_i q^i.
class GaloisField {
public:
  /// Uses the least monic irreducible of degree v, ordering candidates by the
  /// index of their lower coefficients, and the least-index generator of the
  /// multiplicative group.
  GaloisField(u64 q, unsigned v) : codec_(q, v) {
    detail::require_prime(q, "GaloisField");
    if (v == 0)
      throw std::invalid_argument("GaloisField: degree must be positive");
    for (u64 lower = 0; lower < codec_.size; ++lower) {
      modulus_ = codec_.decode(lower);
      for (u64 g = 1; g < codec_.size; ++g)
        if (unit_order(g) == codec_.size - 1) {
          generator_ = g;
          return;
        }
    }
    throw std::logic_error("GaloisField: no irreducible polynomial found");
  }

  u64 characteristic() const { return codec_.p; }
  unsigned degree() const { return codec_.k; }
  u64 size() const { return codec_.size; }
  /// Lower coefficients c_0..c_{v-1} of the monic modulus.
  std::vector<u64> const &modulus() const { return modulus_; }
  u64 generator() const { return generator_; }

  u64 add(u64 a, u64 b) const { return codec_.add(a, b); }

  u64 mul(u64 a, u64 b) const {
    u64 q = codec_.p;
    unsigned v = codec_.k;
    auto da = codec_.decode(a), db = codec_.decode(b);
    std::vector<u64> prod(2 * v, 0);
    for (unsigned i = 0; i < v; ++i)
      for (unsigned j = 0; j < v; ++j)
        prod[i + j] = (prod[i + j] + da[i] * db[j]) % q;
    // x^v = -sum c_i x^i
    for (unsigned d = 2 * v - 1; d >= v; --d) {
      u64 c = prod[d];
      if (!c)
        continue;
      prod[d] = 0;
      for (unsigned i = 0; i < v; ++i)
        prod[d - v + i] = (prod[d - v + i] + (q - c) * modulus_[i]) % q;
    }
    prod.resize(v);
    return codec_.encode(prod);
  }

  u64 pow(u64 a, u64 e) const {
    u64 r = 1;
    for (; e; e >>= 1, a = mul(a, a))
      if (e & 1)
        r = mul(r, a);
    return r;
  }

private:
  /// Multiplicative order of g, or 0 if its powers never return to 1.
  u64 unit_order(u64 g) const {
    u64 x = g;
    for (u64 k = 1; k < codec_.size; ++k) {
      if (x == 1)
        return k;
      if (x == 0)
        return 0;
      x = mul(x, g);
    }
    return 0;
  }

  detail::VecCodec codec_;
  std::vector<u64> modulus_;
  u64 generator_ = 1;
};

/// Redei's skew product of F_{q^v} with C_{p^u}, v = ord_p(q) >= 2:
/// (a, i)(b, j) = (a + zeta^i b, i + j) with zeta = g^((q^v - 1) / p).
/// The pair (a, i) has index i q^v + a.
inline FiniteGroup make_redei(u64 p, u64 q, unsigned u, TableLimits limits = {}) {
  detail::require_prime(p, "make_redei");
  detail::require_prime(q, "make_redei");
  if (p == q || u == 0)
    throw std::invalid_argument("make_redei: need distinct primes and u >= 1");
  u64 v = multiplicative_order(q, p);
  if (v < 2)
    throw std::invalid_argument("make_redei: ord_" + std::to_string(p) + "(" + std::to_string(q) +
                                ") = 1, not a Redei configuration");
  u64 pu = checked_pow(p, u);
  u64 qv = checked_pow(q, static_cast<unsigned>(v));
  u64 n = checked_mul(pu, qv);
  detail::check_cap(n, limits, "make_redei");
  GaloisField f(q, static_cast<unsigned>(v));
  u64 zeta = f.pow(f.generator(), (qv - 1) / p);
  // h(i) = zeta^(i mod p); its kernel {i : p | i} has index p exactly when
  // zeta has order p.
  if (zeta == 1 || f.pow(zeta, p) != 1)
    throw std::logic_error("make_redei: kernel of h does not have index p");
  std::vector<std::vector<u64>> twist(p, std::vector<u64>(qv));
  u64 z = 1;
  for (u64 i = 0; i < p; ++i, z = f.mul(z, zeta))
    for (u64 b = 0; b < qv; ++b)
      twist[i][b] = f.mul(z, b);
  std::vector<Element> t(n * n);
  for (u64 x = 0; x < n; ++x)
    for (u64 y = 0; y < n; ++y) {
      u64 i = x / qv, a = x % qv, j = y / qv, b = y % qv;
      t[x * n + y] = static_cast<Element>((i + j) % pu * qv + f.add(a, twist[i % p][b]));
    }
  return FiniteGroup::from_flat(n, std::move(t), limits);
}

// ---------------------------------------------------------------------------
// Affine monomial case groups
// ---------------------------------------------------------------------------

enum class CaseKind { f2, f3, f4 };

inline std::string_view to_string(CaseKind k) {
  switch (k) {
  case CaseKind::f2: return "f2";
  case CaseKind::f3: return "f3";
  case CaseKind::f4: return "f4";
  }
  return "?";
}

/// Parameters of a case group. rho and sigma default to the least values of
/// the required multiplicative orders.
struct CaseParams {
  u64 p = 0;
  u64 p2 = 0; // f2 only
  u64 q = 0;
  u64 rho = 0;
  u64 sigma = 0; // f2 only
};

namespace detail {

/// Monomial matrix on F_q^d: e_j -> scale[j] e_{perm[j]}.
struct Monomial {
  std::vector<u64> perm;
  std::vector<u64> scale;

  auto operator<=>(Monomial const &) const = default;
};

inline Monomial mono_identity(unsigned d) {
  Monomial m{std::vector<u64>(d), std::vector<u64>(d, 1)};
  std::iota(m.perm.begin(), m.perm.end(), u64{0});
  return m;
}

inline Monomial mono_mul(Monomial const &a, Monomial const &b, u64 q) {
  // (ab) e_j = a(scale_b[j] e_{perm_b[j]})
  std::size_t d = a.perm.size();
  Monomial r{std::vector<u64>(d), std::vector<u64>(d)};
  for (std::size_t j = 0; j < d; ++j) {
    r.perm[j] = a.perm[b.perm[j]];
    r.scale[j] = mulmod(b.scale[j], a.scale[b.perm[j]], q);
  }
  return r;
}

inline Monomial mono_inverse(Monomial const &a, u64 q) {
  std::size_t d = a.perm.size();
  Monomial r{std::vector<u64>(d), std::vector<u64>(d)};
  for (std::size_t j = 0; j < d; ++j) {
    r.perm[a.perm[j]] = j;
    r.scale[a.perm[j]] = powmod(a.scale[j], q - 2, q);
  }
  return r;
}

/// Affine group F_q^d x| M for the monomial group M generated by gens, with
/// (v, A)(w, B) = (v + A w, A B). The element (v, M_i) has index i q^d + v,
/// where M_i is the i-th matrix in breadth-first closure order.
struct AffineMonomialGroup {
  FiniteGroup group;
  std::vector<Monomial> matrices;
  VecCodec codec;

  Element element(u64 vec, Monomial const &m) const {
    auto it = std::find(matrices.begin(), matrices.end(), m);
    if (it == matrices.end())
      throw std::logic_error("affine group: matrix not in the closure");
    return static_cast<Element>(static_cast<u64>(it - matrices.begin()) * codec.size + vec);
  }
};

inline AffineMonomialGroup make_affine_monomial(u64 q, unsigned d, std::vector<Monomial> const &gens,
                                                u64 expected_matrix_order, TableLimits limits) {
  VecCodec codec(q, d);
  std::vector<Monomial> mats{mono_identity(d)};
  std::map<Monomial, u64> index{{mats[0], 0}};
  for (std::size_t i = 0; i < mats.size(); ++i)
    for (auto const &g : gens) {
      auto y = mono_mul(mats[i], g, q);
      if (index.emplace(y, mats.size()).second) {
        mats.push_back(std::move(y));
        if (mats.size() > expected_matrix_order)
          break;
      }
    }
  if (mats.size() != expected_matrix_order)
    throw std::logic_error("affine group: matrix group has order " + std::to_string(mats.size()) +
                           ", expected " + std::to_string(expected_matrix_order));
  u64 n = checked_mul(codec.size, mats.size());
  check_cap(n, limits, "make_case_group");
  std::vector<std::vector<u64>> act(mats.size(), std::vector<u64>(codec.size));
  for (std::size_t i = 0; i < mats.size(); ++i)
    for (u64 w = 0; w < codec.size; ++w) {
      auto wd = codec.decode(w);
      std::vector<u64> r(d, 0);
      for (unsigned j = 0; j < d; ++j)
        r[mats[i].perm[j]] = mulmod(mats[i].scale[j], wd[j], q);
      act[i][w] = codec.encode(r);
    }
  std::vector<std::vector<u64>> mprod(mats.size(), std::vector<u64>(mats.size()));
  for (std::size_t i = 0; i < mats.size(); ++i)
    for (std::size_t j = 0; j < mats.size(); ++j)
      mprod[i][j] = index.at(mono_mul(mats[i], mats[j], q));
  std::vector<Element> t(n * n);
  for (u64 x = 0; x < n; ++x)
    for (u64 y = 0; y < n; ++y) {
      u64 i = x / codec.size, v = x % codec.size;
      u64 j = y / codec.size, w = y % codec.size;
      t[x * n + y] = static_cast<Element>(mprod[i][j] * codec.size + codec.add(v, act[i][w]));
    }
  return {FiniteGroup::from_flat(n, std::move(t), limits), std::move(mats), codec};
}

/// Cycle on coordinates e_i -> e_{i+1} with the wrap e_{d-1} -> wrap e_0.
inline Monomial mono_cycle(unsigned d, u64 wrap) {
  Monomial m = mono_identity(d);
  for (unsigned j = 0; j < d; ++j)
    m.perm[j] = (j + 1) % d;
  m.scale[d - 1] = wrap;
  return m;
}

inline Monomial mono_diag(std::vector<u64> entries) {
  Monomial m = mono_identity(static_cast<unsigned>(entries.size()));
  m.scale = std::move(entries);
  return m;
}

} // namespace detail

/// Fills in defaults and checks the arithmetic preconditions of a case group.
inline CaseParams complete_case_params(CaseKind kind, CaseParams cp) {
  detail::require_prime(cp.p, "make_case_group");
  detail::require_prime(cp.q, "make_case_group");
  auto bad = [](std::string const &what) { return std::invalid_argument("make_case_group: " + what); };
  if (cp.p == cp.q)
    throw bad("p and q must differ");
  switch (kind) {
  case CaseKind::f2:
    detail::require_prime(cp.p2, "make_case_group");
    if ((cp.p2 - 1) % cp.p || (cp.q - 1) % cp.p2)
      throw bad("f2 needs p | p2 - 1 and p2 | q - 1");
    if (!cp.rho)
      cp.rho = detail::least_of_order(cp.p, cp.p2);
    if (!cp.sigma)
      cp.sigma = detail::least_of_order(cp.p2, cp.q);
    if (multiplicative_order(cp.rho, cp.p2) != cp.p || multiplicative_order(cp.sigma, cp.q) != cp.p2)
      throw bad("f2 needs ord_p2(rho) = p and ord_q(sigma) = p2");
    break;
  case CaseKind::f3:
    if ((cp.q - 1) % cp.p || (cp.q - 1) % (cp.p * cp.p) == 0)
      throw bad("f3 needs p | q - 1 and p^2 not dividing q - 1");
    if (!cp.rho)
      cp.rho = detail::least_of_order(cp.p, cp.q);
    if (multiplicative_order(cp.rho, cp.q) != cp.p)
      throw bad("f3 needs ord_q(rho) = p");
    break;
  case CaseKind::f4:
    if ((cp.q - 1) % (cp.p * cp.p))
      throw bad("f4 needs p^2 | q - 1");
    if (!cp.rho)
      cp.rho = detail::least_of_order(cp.p * cp.p, cp.q);
    if (multiplicative_order(cp.rho, cp.q) != cp.p * cp.p)
      throw bad("f4 needs ord_q(rho) = p^2");
    break;
  }
  return cp;
}

inline u64 case_group_order(CaseKind kind, CaseParams const &cp) {
  u64 qp = checked_pow(cp.q, static_cast<unsigned>(cp.p));
  switch (kind) {
  case CaseKind::f2: return checked_mul(checked_mul(cp.p, cp.p2), qp);
  case CaseKind::f3: return checked_mul(cp.p * cp.p, qp);
  case CaseKind::f4: return checked_mul(checked_pow(cp.p, 3), qp);
  }
  return 0;
}

/// The case groups on F_q^p x| M. Generator a (or a1) acts by
/// a^-1 b_i a = b_{i+1}; in f3 the wrap-around carries the twist rho; a' (f2)
/// and a2 (f4) act diagonally. The presentation relations are checked as
/// table identities and the absence of a normal subgroup of order q is
/// checked by scan.
inline FiniteGroup make_case_group(CaseKind kind, CaseParams params, TableLimits limits = {}) {
  auto cp = complete_case_params(kind, params);
  u64 p = cp.p, q = cp.q;
  auto d = static_cast<unsigned>(p);
  detail::check_cap(case_group_order(kind, cp), limits, "make_case_group");

  // Conjugation g^-1 b g acts on the b-coordinates by M_g^{-1}, so each
  // generator is given by the inverse of its matrix.
  using detail::Monomial;
  std::vector<Monomial> inv_gens;
  u64 mat_order = 0;
  switch (kind) {
  case CaseKind::f2: {
    // a'^-1 b_i a' = b_i^(sigma^(rho^(1-i))), exponents of rho taken mod p2
    u64 rho_inv = powmod(cp.rho, cp.p2 - 2, cp.p2);
    std::vector<u64> diag(d);
    for (unsigned i = 0; i < d; ++i)
      diag[i] = powmod(cp.sigma, powmod(rho_inv, i, cp.p2), q);
    inv_gens = {detail::mono_cycle(d, 1), detail::mono_diag(diag)};
    mat_order = p * cp.p2;
    break;
  }
  case CaseKind::f3:
    inv_gens = {detail::mono_cycle(d, cp.rho)};
    mat_order = p * p;
    break;
  case CaseKind::f4: {
    // a2^-1 b_i a2 = b_i^(rho^(1 + (1-i)p)), exponents taken mod p^2
    u64 p2 = p * p;
    std::vector<u64> diag(d);
    for (unsigned i = 0; i < d; ++i)
      diag[i] = powmod(cp.rho, (1 + p2 * p - i * p) % p2, q);
    inv_gens = {detail::mono_cycle(d, 1), detail::mono_diag(diag)};
    mat_order = p * p * p;
    break;
  }
  }
  std::vector<Monomial> gens;
  for (auto const &m : inv_gens)
    gens.push_back(detail::mono_inverse(m, q));
  auto am = detail::make_affine_monomial(q, d, gens, mat_order, limits);
  auto const &g = am.group;

  auto fail = [&](std::string const &what) {
    return std::logic_error("make_case_group(" + std::string(to_string(kind)) + "): relation " + what +
                            " does not hold");
  };
  auto id_mat = detail::mono_identity(d);
  std::vector<Element> b(d);
  for (unsigned i = 0; i < d; ++i) {
    std::vector<u64> e(d, 0);
    e[i] = 1;
    b[i] = am.element(am.codec.encode(e), id_mat);
  }
  Element a = am.element(0, gens[0]);
  auto conj_by = [&](Element x, Element y) { return g.mul(g.mul(g.inv(y), x), y); }; // y^-1 x y
  for (unsigned i = 0; i < d; ++i) {
    if (g.pow(b[i], q) != g.identity())
      throw fail("b_i^q = e");
    for (unsigned j = 0; j < d; ++j)
      if (g.mul(b[i], b[j]) != g.mul(b[j], b[i]))
        throw fail("b_i b_j = b_j b_i");
  }
  for (unsigned i = 0; i + 1 < d; ++i)
    if (conj_by(b[i], a) != b[i + 1])
      throw fail("a^-1 b_i a = b_(i+1)");
  u64 wrap = kind == CaseKind::f3 ? cp.rho : 1;
  if (conj_by(b[d - 1], a) != g.pow(b[0], wrap))
    throw fail("a^-1 b_p a = b_1^rho");
  switch (kind) {
  case CaseKind::f2: {
    Element a2 = am.element(0, gens[1]);
    if (g.pow(a, p) != g.identity() || g.pow(a2, cp.p2) != g.identity())
      throw fail("a^p = a'^p' = e");
    if (conj_by(a2, a) != g.pow(a2, cp.rho))
      throw fail("a^-1 a' a = a'^rho");
    if (conj_by(b[0], a2) != g.pow(b[0], cp.sigma))
      throw fail("a'^-1 b_1 a' = b_1^sigma");
    break;
  }
  case CaseKind::f3:
    if (g.pow(a, p * p) != g.identity())
      throw fail("a^(p^2) = e");
    break;
  case CaseKind::f4: {
    Element a2 = am.element(0, gens[1]);
    if (g.pow(a, p) != g.identity() || g.pow(a2, p * p) != g.identity())
      throw fail("a1^p = a2^(p^2) = e");
    if (conj_by(a2, a) != g.pow(a2, 1 + p))
      throw fail("a1^-1 a2 a1 = a2^(1+p)");
    if (conj_by(b[0], a2) != g.pow(b[0], cp.rho))
      throw fail("a2^-1 b_1 a2 = b_1^rho");
    break;
  }
  }
  for (Element x = 0; x < g.order(); ++x)
    if (x != g.identity() && element_order(g, x) == q && is_normal(g, cyclic_subgroup(g, x)))
      throw std::logic_error("make_case_group: found a normal subgroup of order q");
  return g;
}

// ---------------------------------------------------------------------------
// Permutation groups
// ---------------------------------------------------------------------------

inline FiniteGroup make_symmetric(std::size_t d, TableLimits limits = {}) {
  if (d == 0)
    throw std::invalid_argument("make_symmetric: degree must be positive");
  if (d == 1)
    return make_cyclic(1, limits);
  std::vector<Element> cycle(d);
  std::iota(cycle.begin(), cycle.end(), Element{0});
  return from_permutations({from_cycles(d, {{0, 1}}), from_cycles(d, {cycle})}, {}, limits);
}

/// A_d generated by the 3-cycles (0 1 i).
inline FiniteGroup make_alternating(std::size_t d, TableLimits limits = {}) {
  if (d == 0)
    throw std::invalid_argument("make_alternating: degree must be positive");
  if (d < 3)
    return make_cyclic(1, limits);
  std::vector<Permutation> gens;
  for (Element i = 2; i < d; ++i)
    gens.push_back(from_cycles(d, {{0, 1, i}}));
  return from_permutations(gens, {}, limits);
}

inline FiniteGroup make_dihedral(std::size_t m, TableLimits limits = {}) {
  if (m < 3)
    throw std::invalid_argument("make_dihedral: need m >= 3");
  std::vector<Element> rot(m);
  std::iota(rot.begin(), rot.end(), Element{0});
  Permutation refl(m);
  for (std::size_t i = 0; i < m; ++i)
    refl[i] = static_cast<Element>((m - i) % m);
  return from_permutations({from_cycles(m, {rot}), refl}, {}, limits);
}

// ---------------------------------------------------------------------------
// Witness recipes
// ---------------------------------------------------------------------------

enum class RecipeKind {
  cyclic_square,
  cyclic_pair,
  abelian_cube,
  semidirect_elem_abelian,
  redei_f1,
  case_f2,
  case_f3,
  case_f4
};

inline constexpr std::array<RecipeKind, 8> kAllRecipeKinds = {
    RecipeKind::cyclic_square,           RecipeKind::cyclic_pair, RecipeKind::abelian_cube,
    RecipeKind::semidirect_elem_abelian, RecipeKind::redei_f1,    RecipeKind::case_f2,
    RecipeKind::case_f3,                 RecipeKind::case_f4};

inline std::string_view to_string(RecipeKind k) {
  switch (k) {
  case RecipeKind::cyclic_square: return "cyclic_square";
  case RecipeKind::cyclic_pair: return "cyclic_pair";
  case RecipeKind::abelian_cube: return "abelian_cube";
  case RecipeKind::semidirect_elem_abelian: return "semidirect_elem_abelian";
  case RecipeKind::redei_f1: return "redei_f1";
  case RecipeKind::case_f2: return "case_f2";
  case RecipeKind::case_f3: return "case_f3";
  case RecipeKind::case_f4: return "case_f4";
  }
  return "?";
}

inline std::optional<RecipeKind> parse_recipe_kind(std::string_view s) {
  for (auto k : kAllRecipeKinds)
    if (to_string(k) == s)
      return k;
  return std::nullopt;
}

/// A base group of a named family times C_cofactor.
///
/// Parameters by kind (base group in brackets):
///   cyclic_square           q              [C_q], q | cofactor
///   cyclic_pair             p, q           [C_q x| C_p], p | q - 1
///   abelian_cube            p              [Heisenberg(p)]
///   semidirect_elem_abelian p, k, m        [(C_p)^k x| C_m]
///   redei_f1                p, q, u        [F_{q^v} x| C_{p^u}]
///   case_f2                 p, p2, q, rho, sigma
///   case_f3                 p, q, rho
///   case_f4                 p, q, rho
struct WitnessRecipe {
  RecipeKind kind = RecipeKind::cyclic_square;
  ParamList params;
  u64 cofactor = 1;

  u64 get(std::string_view name) const { return param(params, name); }
  u64 base_order() const;
  u64 order() const { return checked_mul(base_order(), cofactor); }

  friend bool operator==(WitnessRecipe const &, WitnessRecipe const &) = default;
};

inline std::vector<std::string_view> recipe_param_names(RecipeKind k) {
  switch (k) {
  case RecipeKind::cyclic_square: return {"q"};
  case RecipeKind::cyclic_pair: return {"p", "q"};
  case RecipeKind::abelian_cube: return {"p"};
  case RecipeKind::semidirect_elem_abelian: return {"p", "k", "m"};
  case RecipeKind::redei_f1: return {"p", "q", "u"};
  case RecipeKind::case_f2: return {"p", "p2", "q", "rho", "sigma"};
  case RecipeKind::case_f3: return {"p", "q", "rho"};
  case RecipeKind::case_f4: return {"p", "q", "rho"};
  }
  return {};
}

namespace detail {

inline CaseKind case_kind_of(RecipeKind k) {
  switch (k) {
  case RecipeKind::case_f2: return CaseKind::f2;
  case RecipeKind::case_f3: return CaseKind::f3;
  default: return CaseKind::f4;
  }
}

inline CaseParams case_params_of(WitnessRecipe const &r) {
  CaseParams cp;
  cp.p = r.get("p");
  cp.q = r.get("q");
  cp.rho = r.get("rho");
  if (r.kind == RecipeKind::case_f2) {
    cp.p2 = r.get("p2");
    cp.sigma = r.get("sigma");
  }
  return cp;
}

} // namespace detail

inline u64 WitnessRecipe::base_order() const {
  switch (kind) {
  case RecipeKind::cyclic_square: return get("q");
  case RecipeKind::cyclic_pair: return checked_mul(get("p"), get("q"));
  case RecipeKind::abelian_cube: return checked_pow(get("p"), 3);
  case RecipeKind::semidirect_elem_abelian:
    return checked_mul(checked_pow(get("p"), static_cast<unsigned>(get("k"))), get("m"));
  case RecipeKind::redei_f1: {
    u64 p = get("p"), q = get("q");
    return checked_mul(checked_pow(p, static_cast<unsigned>(get("u"))),
                       checked_pow(q, static_cast<unsigned>(multiplicative_order(q, p))));
  }
  case RecipeKind::case_f2:
  case RecipeKind::case_f3:
  case RecipeKind::case_f4:
    return case_group_order(detail::case_kind_of(kind), detail::case_params_of(*this));
  }
  return 0;
}

/// Single-line text form: "<kind> name=value ... cofactor=c".
inline std::string serialize(WitnessRecipe const &r) {
  std::string s(to_string(r.kind));
  for (auto const &p : r.params)
    s += " " + p.name + "=" + std::to_string(p.value);
  s += " cofactor=" + std::to_string(r.cofactor);
  return s;
}

/// Parses the text form. A leading "kind=<kind>" token is accepted in place
/// of the bare kind name.
inline WitnessRecipe parse_recipe(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string tok;
  auto bad = [&](std::string const &why) { return std::invalid_argument("parse_recipe: " + why); };
  if (!(in >> tok))
    throw bad("empty recipe");
  if (tok.rfind("kind=", 0) == 0)
    tok = tok.substr(5);
  auto kind = parse_recipe_kind(tok);
  if (!kind)
    throw bad("unknown kind '" + tok + "'");
  WitnessRecipe r{*kind, {}, 1};
  std::map<std::string, u64, std::less<>> values;
  while (in >> tok) {
    auto eq = tok.find('=');
    if (eq == std::string::npos || eq == 0)
      throw bad("expected name=value, got '" + tok + "'");
    u64 v = 0;
    auto sv = std::string_view(tok).substr(eq + 1);
    auto [ptr, ec] = std::from_chars(sv.data(), sv.data() + sv.size(), v);
    if (ec != std::errc{} || ptr != sv.data() + sv.size())
      throw bad("bad value in '" + tok + "'");
    if (!values.emplace(tok.substr(0, eq), v).second)
      throw bad("duplicate parameter '" + tok.substr(0, eq) + "'");
  }
  if (auto it = values.find("cofactor"); it != values.end()) {
    r.cofactor = it->second;
    values.erase(it);
  }
  for (auto name : recipe_param_names(*kind)) {
    auto it = values.find(name);
    if (it == values.end()) {
      // rho and sigma may be omitted; they default to the least valid values
      if (name == "rho" || name == "sigma") {
        r.params.push_back({std::string(name), 0});
        continue;
      }
      throw bad("missing parameter '" + std::string(name) + "'");
    }
    r.params.push_back({std::string(name), it->second});
    values.erase(it);
  }
  if (!values.empty())
    throw bad("unexpected parameter '" + values.begin()->first + "'");
  if (kind == RecipeKind::case_f2 || kind == RecipeKind::case_f3 || kind == RecipeKind::case_f4) {
    auto cp = complete_case_params(detail::case_kind_of(*kind), detail::case_params_of(r));
    for (auto &p : r.params) {
      if (p.name == "rho")
        p.value = cp.rho;
      if (p.name == "sigma")
        p.value = cp.sigma;
    }
  }
  return r;
}

/// Throws std::invalid_argument unless the recipe's parameters satisfy the
/// preconditions of its kind.
inline void validate_recipe(WitnessRecipe const &r) {
  auto bad = [&](std::string const &why) {
    return std::invalid_argument("invalid recipe '" + serialize(r) + "': " + why);
  };
  auto names = recipe_param_names(r.kind);
  if (r.params.size() != names.size())
    throw bad("wrong parameter count");
  for (std::size_t i = 0; i < names.size(); ++i)
    if (r.params[i].name != names[i])
      throw bad("parameter " + std::to_string(i) + " should be '" + std::string(names[i]) + "'");
  if (r.cofactor == 0)
    throw bad("cofactor must be positive");
  auto prime = [&](std::string_view n) {
    if (!is_prime(r.get(n)))
      throw bad(std::string(n) + " must be prime");
  };
  switch (r.kind) {
  case RecipeKind::cyclic_square:
    prime("q");
    if (r.cofactor % r.get("q"))
      throw bad("q must divide the cofactor");
    break;
  case RecipeKind::cyclic_pair:
    prime("p");
    prime("q");
    if (r.get("p") == r.get("q") || (r.get("q") - 1) % r.get("p"))
      throw bad("need p | q - 1");
    break;
  case RecipeKind::abelian_cube: prime("p"); break;
  case RecipeKind::semidirect_elem_abelian:
    prime("p");
    if (r.get("k") == 0 || r.get("m") < 2)
      throw bad("need k >= 1 and m >= 2");
    break;
  case RecipeKind::redei_f1:
    prime("p");
    prime("q");
    if (r.get("p") == r.get("q") || r.get("u") == 0 || multiplicative_order(r.get("q"), r.get("p")) < 2)
      throw bad("need distinct primes, u >= 1 and ord_p(q) >= 2");
    break;
  case RecipeKind::case_f2:
  case RecipeKind::case_f3:
  case RecipeKind::case_f4: {
    auto given = detail::case_params_of(r);
    auto cp = complete_case_params(detail::case_kind_of(r.kind), given);
    if (cp.rho != given.rho || cp.sigma != given.sigma)
      throw bad("rho and sigma must be given explicitly");
    break;
  }
  }
}

/// The recipe realizing a diagnosis as a group of order n.
inline WitnessRecipe recipe_for(u64 n, ViolationDiagnosis const &d) {
  WitnessRecipe r;
  auto P = [](std::string name, u64 v) { return Param{std::move(name), v}; };
  switch (d.kind) {
  case ViolationKind::square_factor:
    r = {RecipeKind::cyclic_square, {P("q", d.get("q"))}, 1};
    break;
  case ViolationKind::cube_factor:
    r = {RecipeKind::abelian_cube, {P("p", d.get("p"))}, 1};
    break;
  case ViolationKind::divisibility_pair:
    // p | q^k - 1: C_p acts faithfully on (C_q)^k
    if (d.property == Property::cyclic)
      r = {RecipeKind::cyclic_pair, {P("p", d.get("p")), P("q", d.get("q"))}, 1};
    else
      r = {RecipeKind::semidirect_elem_abelian, {P("p", d.get("q")), P("k", d.get("k")), P("m", d.get("p"))}, 1};
    break;
  case ViolationKind::tower_psi:
    // the larger prime p acts on (C_q)^k
    r = {RecipeKind::semidirect_elem_abelian, {P("p", d.get("q")), P("k", d.get("k")), P("m", d.get("p"))}, 1};
    break;
  case ViolationKind::ss_f1:
    r = {RecipeKind::redei_f1, {P("p", d.get("p")), P("q", d.get("q")), P("u", 1)}, 1};
    break;
  case ViolationKind::ss_f2: {
    auto cp = complete_case_params(CaseKind::f2, {d.get("p"), d.get("p2"), d.get("q"), 0, 0});
    r = {RecipeKind::case_f2,
         {P("p", cp.p), P("p2", cp.p2), P("q", cp.q), P("rho", cp.rho), P("sigma", cp.sigma)},
         1};
    break;
  }
  case ViolationKind::ss_f3:
  case ViolationKind::ss_f4: {
    auto ck = d.kind == ViolationKind::ss_f3 ? CaseKind::f3 : CaseKind::f4;
    auto cp = complete_case_params(ck, {d.get("p"), 0, d.get("q"), 0, 0});
    r = {d.kind == ViolationKind::ss_f3 ? RecipeKind::case_f3 : RecipeKind::case_f4,
         {P("p", cp.p), P("q", cp.q), P("rho", cp.rho)},
         1};
    break;
  }
  }
  u64 base = r.base_order();
  if (n % base)
    throw std::logic_error("recipe_for: base order " + std::to_string(base) + " does not divide " +
                           std::to_string(n));
  r.cofactor = n / base;
  validate_recipe(r);
  return r;
}

/// Recipe for the first diagnosis of a property failing at n.
inline WitnessRecipe recipe_for(u64 n, Property prop) { return recipe_for(n, diagnose(n, prop).front()); }

inline FiniteGroup make_recipe_base(WitnessRecipe const &r, TableLimits limits = {}) {
  switch (r.kind) {
  case RecipeKind::cyclic_square: return make_cyclic(r.get("q"), limits);
  case RecipeKind::cyclic_pair: return make_semidirect_elem_abelian(r.get("q"), 1, r.get("p"), limits);
  case RecipeKind::abelian_cube: return make_heisenberg(r.get("p"), limits);
  case RecipeKind::semidirect_elem_abelian:
    return make_semidirect_elem_abelian(r.get("p"), static_cast<unsigned>(r.get("k")), r.get("m"), limits);
  case RecipeKind::redei_f1:
    return make_redei(r.get("p"), r.get("q"), static_cast<unsigned>(r.get("u")), limits);
  case RecipeKind::case_f2:
  case RecipeKind::case_f3:
  case RecipeKind::case_f4:
    return make_case_group(detail::case_kind_of(r.kind), detail::case_params_of(r), limits);
  }
  throw std::invalid_argument("make_recipe_base: unknown kind");
}

/// Base group of the recipe times C_cofactor.
inline FiniteGroup make_witness(WitnessRecipe const &r, TableLimits limits = {}) {
  validate_recipe(r);
  detail::check_cap(r.order(), limits, "make_witness");
  auto base = make_recipe_base(r, limits);
  if (r.cofactor == 1)
    return base;
  return direct_product(base, make_cyclic(r.cofactor, limits), limits);
}

// ---------------------------------------------------------------------------
// Named groups
// ---------------------------------------------------------------------------

/// Builds a group from a short name: cyclic:m, dihedral:m, symmetric:d,
/// alternating:d, heisenberg:p, semidirect:p,k,m, redei:p,q,u, case_f2:p,p2,q,
/// case_f3:p,q, case_f4:p,q, or one of s3, s4, a4, a5, q8.
inline FiniteGroup make_named(std::string_view name, TableLimits limits = {}) {
  auto colon = name.find(':');
  std::string head(name.substr(0, colon));
  std::vector<u64> args;
  if (colon != std::string_view::npos) {
    auto rest = name.substr(colon + 1);
    while (true) {
      auto comma = rest.find(',');
      auto tok = rest.substr(0, comma);
      u64 v = 0;
      auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
      if (ec != std::errc{} || ptr != tok.data() + tok.size() || tok.empty())
        throw std::invalid_argument("make_named: bad argument '" + std::string(tok) + "'");
      args.push_back(v);
      if (comma == std::string_view::npos)
        break;
      rest = rest.substr(comma + 1);
    }
  }
  auto want = [&](std::size_t k) {
    if (args.size() != k)
      throw std::invalid_argument("make_named: '" + head + "' takes " + std::to_string(k) + " argument(s)");
  };
  if (head == "s3") return want(0), make_symmetric(3, limits);
  if (head == "s4") return want(0), make_symmetric(4, limits);
  if (head == "a4") return want(0), make_alternating(4, limits);
  if (head == "a5") return want(0), make_alternating(5, limits);
  if (head == "q8") {
    want(0);
    // quaternion units as permutations of {+-1, +-i, +-j, +-k} by right multiplication
    return from_permutations({{2, 3, 1, 0, 7, 6, 4, 5}, {4, 5, 6, 7, 1, 0, 3, 2}}, {}, limits);
  }
  if (head == "cyclic") return want(1), make_cyclic(args[0], limits);
  if (head == "dihedral") return want(1), make_dihedral(args[0], limits);
  if (head == "symmetric") return want(1), make_symmetric(args[0], limits);
  if (head == "alternating") return want(1), make_alternating(args[0], limits);
  if (head == "heisenberg") return want(1), make_heisenberg(args[0], limits);
  if (head == "semidirect")
    return want(3), make_semidirect_elem_abelian(args[0], static_cast<unsigned>(args[1]), args[2], limits);
  if (head == "redei") return want(3), make_redei(args[0], args[1], static_cast<unsigned>(args[2]), limits);
  if (head == "case_f2") return want(3), make_case_group(CaseKind::f2, {args[0], args[1], args[2], 0, 0}, limits);
  if (head == "case_f3") return want(2), make_case_group(CaseKind::f3, {args[0], 0, args[1], 0, 0}, limits);
  if (head == "case_f4") return want(2), make_case_group(CaseKind::f4, {args[0], 0, args[1], 0, 0}, limits);
  throw std::invalid_argument("make_named: unknown group '" + std::string(name) + "'");
}

} // namespace pnum
