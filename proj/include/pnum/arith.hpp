#pragma once

/// @file arith.hpp
/// @brief Number-theoretic primitives shared by the classifiers: prime
/// factorization, Euler phi, the psi function and multiplicative orders.
///
/// All arithmetic is exact on 64-bit unsigned integers. Operations that could
/// wrap detect the overflow and throw std::overflow_error instead.

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace pnum {

using u64 = std::uint64_t;

struct PrimePower {
  u64 p = 0;
  unsigned a = 0;

  friend bool operator==(PrimePower const &, PrimePower const &) = default;
};

/// An integer n together with its prime factorization, primes strictly
/// increasing and every exponent at least one. The factorization of 1 is empty.
struct Factorization {
  u64 n = 1;
  std::vector<PrimePower> factors;

  std::size_t size() const { return factors.size(); }
  bool empty() const { return factors.empty(); }
  auto begin() const { return factors.begin(); }
  auto end() const { return factors.end(); }

  /// Exponent of p in n (zero when p does not divide n).
  unsigned exponent_of(u64 p) const {
    for (auto const &f : factors)
      if (f.p == p)
        return f.a;
    return 0;
  }

  bool divides_by(u64 p) const { return exponent_of(p) != 0; }

  friend bool operator==(Factorization const &, Factorization const &) = default;
};

inline u64 checked_mul(u64 a, u64 b) {
  u64 r;
  if (__builtin_mul_overflow(a, b, &r))
    throw std::overflow_error("pnum: 64-bit multiplication overflow (" + std::to_string(a) +
                              " * " + std::to_string(b) + ")");
  return r;
}

inline u64 checked_pow(u64 base, unsigned exp) {
  u64 r = 1;
  for (unsigned i = 0; i < exp; ++i)
    r = checked_mul(r, base);
  return r;
}

inline u64 mulmod(u64 a, u64 b, u64 m) {
  return static_cast<u64>(static_cast<unsigned __int128>(a) * b % m);
}

inline u64 powmod(u64 base, u64 exp, u64 m) {
  if (m == 1)
    return 0;
  u64 result = 1;
  base %= m;
  while (exp) {
    if (exp & 1)
      result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return result;
}

inline bool is_prime(u64 n) {
  if (n < 2)
    return false;
  if (n % 2 == 0)
    return n == 2;
  for (u64 d = 3; d <= n / d; d += 2)
    if (n % d == 0)
      return false;
  return true;
}

/// Trial division. Inputs are expected to stay at desk scale (around 1e9 or
/// below); larger values are still factored correctly, only slowly.
inline Factorization factorize(u64 n) {
  if (n == 0)
    throw std::invalid_argument("factorize: n must be positive");
  Factorization f;
  f.n = n;
  u64 m = n;
  auto take = [&](u64 p) {
    unsigned a = 0;
    while (m % p == 0) {
      m /= p;
      ++a;
    }
    if (a)
      f.factors.push_back({p, a});
  };
  take(2);
  take(3);
  for (u64 d = 5; d <= m / d; d += 6) {
    take(d);
    take(d + 2);
  }
  if (m > 1)
    f.factors.push_back({m, 1});
  return f;
}

inline u64 reassemble(Factorization const &f) {
  u64 r = 1;
  for (auto const &[p, a] : f)
    r = checked_mul(r, checked_pow(p, a));
  return r;
}

inline std::vector<u64> distinct_primes(u64 n) {
  std::vector<u64> out;
  for (auto const &pp : factorize(n))
    out.push_back(pp.p);
  return out;
}

inline bool is_square_free(Factorization const &f) {
  for (auto const &pp : f)
    if (pp.a >= 2)
      return false;
  return true;
}

inline bool is_cube_free(Factorization const &f) {
  for (auto const &pp : f)
    if (pp.a >= 3)
      return false;
  return true;
}

inline u64 euler_phi(Factorization const &f) {
  u64 r = f.n;
  for (auto const &pp : f)
    r = r / pp.p * (pp.p - 1);
  return r;
}

inline u64 euler_phi(u64 n) { return euler_phi(factorize(n)); }

/// psi(p^k) = (p^k - 1)(p^(k-1) - 1)...(p - 1).
inline u64 psi(u64 p, unsigned k) {
  if (k == 0)
    throw std::invalid_argument("psi: exponent must be at least 1");
  if (!is_prime(p))
    throw std::invalid_argument("psi: base must be prime");
  u64 r = 1;
  u64 pk = 1;
  for (unsigned i = 1; i <= k; ++i) {
    pk = checked_mul(pk, p);
    r = checked_mul(r, pk - 1);
  }
  return r;
}

/// psi extended to composite n as the product of psi over its prime-power
/// parts. psi of the empty factorization (n = 1) is 1.
inline u64 psi(Factorization const &f) {
  u64 r = 1;
  for (auto const &[p, a] : f)
    r = checked_mul(r, psi(p, a));
  return r;
}

/// psi(p^k) mod m, computed without forming psi(p^k) itself.
inline u64 psi_mod(u64 p, unsigned k, u64 m) {
  if (k == 0)
    throw std::invalid_argument("psi_mod: exponent must be at least 1");
  if (m == 1)
    return 0;
  u64 r = 1 % m;
  u64 pk = 1 % m;
  for (unsigned i = 1; i <= k; ++i) {
    pk = mulmod(pk, p % m, m);
    r = mulmod(r, (pk + m - 1) % m, m);
  }
  return r;
}

/// gcd(n, psi(p^k)) without overflow.
inline u64 gcd_with_psi(u64 n, u64 p, unsigned k) {
  return std::gcd(n, psi_mod(p, k, n));
}

/// Smallest v >= 1 with q^v = 1 (mod m).
inline u64 multiplicative_order(u64 q, u64 m) {
  if (m < 2)
    throw std::invalid_argument("multiplicative_order: modulus must be at least 2");
  if (std::gcd(q % m, m) != 1)
    throw std::invalid_argument("multiplicative_order: " + std::to_string(q) + " is not a unit mod " +
                                std::to_string(m));
  u64 order = euler_phi(m);
  for (auto const &pp : factorize(order)) {
    for (unsigned i = 0; i < pp.a; ++i) {
      if (powmod(q, order / pp.p, m) == 1)
        order /= pp.p;
      else
        break;
    }
  }
  return order;
}

inline std::string to_string(Factorization const &f) {
  if (f.empty())
    return "1";
  std::string s;
  for (auto const &[p, a] : f) {
    if (!s.empty())
      s += " * ";
    s += std::to_string(p);
    if (a > 1)
      s += "^" + std::to_string(a);
  }
  return s;
}

} // namespace pnum
