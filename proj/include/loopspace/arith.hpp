#pragma once

/*
 * Exact integer utilities: arbitrary-precision aliases, deterministic 64-bit
 * primality (Miller-Rabin), Pollard rho factorization, and the prime-power
 * representation used for torsion coefficients throughout the library.
 */

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "loopspace/errors.hpp"

namespace loopspace {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

namespace detail {

inline std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b,
                                std::uint64_t m) {
  return static_cast<std::uint64_t>(
      (static_cast<unsigned __int128>(a) * b) % m);
}

inline std::uint64_t powmod_u64(std::uint64_t a, std::uint64_t e,
                                std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod_u64(r, a, m);
    a = mulmod_u64(a, a, m);
    e >>= 1;
  }
  return r;
}

}  // namespace detail

/* Deterministic Miller-Rabin for all 64-bit inputs. */
inline bool is_prime(long long n_signed) {
  if (n_signed < 2) return false;
  std::uint64_t n = static_cast<std::uint64_t>(n_signed);
  for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull,
                          23ull, 29ull, 31ull, 37ull}) {
    if (n == p) return true;
    if (n % p == 0) return false;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull,
                          23ull, 29ull, 31ull, 37ull}) {
    std::uint64_t x = detail::powmod_u64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int i = 0; i + 1 < s; ++i) {
      x = detail::mulmod_u64(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

namespace detail {

inline std::uint64_t pollard_rho(std::uint64_t n) {
  if (n % 2 == 0) return 2;
  std::uint64_t x = 2, y = 2, c = 1, d = 1;
  auto f = [&](std::uint64_t v) { return (mulmod_u64(v, v, n) + c) % n; };
  while (true) {
    x = 2;
    y = 2;
    d = 1;
    while (d == 1) {
      x = f(x);
      y = f(f(y));
      std::uint64_t diff = x > y ? x - y : y - x;
      d = std::gcd(diff, n);
    }
    if (d != n) return d;
    ++c;  // cycle degenerated, retry with a different increment
  }
}

inline void factor_into(std::uint64_t n, std::vector<long long>& out) {
  if (n == 1) return;
  if (is_prime(static_cast<long long>(n))) {
    out.push_back(static_cast<long long>(n));
    return;
  }
  for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull}) {
    if (n % p == 0) {
      out.push_back(static_cast<long long>(p));
      factor_into(n / p, out);
      return;
    }
  }
  std::uint64_t d = pollard_rho(n);
  factor_into(d, out);
  factor_into(n / d, out);
}

}  // namespace detail

/* A cyclic prime-power factor Z/p^r. */
struct PrimePower {
  long long p = 0;
  int r = 1;

  long long value() const {
    long long v = 1;
    for (int i = 0; i < r; ++i) v *= p;
    return v;
  }
  friend bool operator==(const PrimePower&, const PrimePower&) = default;
  friend auto operator<=>(const PrimePower& a, const PrimePower& b) {
    if (auto c = a.p <=> b.p; c != 0) return c;
    return a.r <=> b.r;
  }
};

/* Prime factorization of n >= 2 as sorted (prime, exponent) pairs. */
inline std::vector<PrimePower> factorize(long long n) {
  if (n < 2) throw validation_error("factorize: argument must be >= 2");
  std::vector<long long> primes;
  detail::factor_into(static_cast<std::uint64_t>(n), primes);
  std::sort(primes.begin(), primes.end());
  std::vector<PrimePower> out;
  for (long long p : primes) {
    if (!out.empty() && out.back().p == p)
      ++out.back().r;
    else
      out.push_back({p, 1});
  }
  return out;
}

/* Z/q decomposed into its prime-power cyclic factors; Z/1 = 0. */
inline std::vector<PrimePower> torsion_of_order(long long q) {
  if (q == 1) return {};
  return factorize(q);
}

/* Canonical torsion order: ascending lexicographic (prime, exponent). */
inline void sort_torsion(std::vector<PrimePower>& t) {
  std::sort(t.begin(), t.end());
}

inline int valuation(long long n, long long p) {
  int v = 0;
  while (n % p == 0 && n != 0) {
    n /= p;
    ++v;
  }
  return v;
}

inline std::vector<long long> primes_below(long long bound) {
  std::vector<long long> out;
  for (long long p = 2; p < bound; ++p)
    if (is_prime(p)) out.push_back(p);
  return out;
}

}  // namespace loopspace
