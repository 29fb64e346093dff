#pragma once

// Slow, direct implementations used only as test oracles. Nothing here calls
// into the library's algorithms beyond its value types.

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <tuple>
#include <vector>

#include "hypharm/partial_sums.hpp"
#include "hypharm/rational.hpp"

namespace oracle {

using hypharm::BigInt;
using hypharm::Interval;
using hypharm::IntervalPair;
using hypharm::Rational;

inline Rational frac(long n, long d) {
  Rational q(n, d);
  q.canonicalize();
  return q;
}

inline Rational frac(const BigInt& n, const BigInt& d) {
  Rational q(n, d);
  q.canonicalize();
  return q;
}

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline std::uint64_t largest_prime_factor(std::uint64_t n) {
  std::uint64_t best = 1;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    while (n % d == 0) best = d, n /= d;
  return n > 1 ? std::max(best, n) : best;
}

inline unsigned valuation(BigInt n, unsigned long p) {
  unsigned v = 0;
  while (n != 0 && n % p == 0) n /= p, ++v;
  return v;
}

inline BigInt factorial(unsigned long n) {
  BigInt f = 1;
  for (unsigned long i = 2; i <= n; ++i) f *= i;
  return f;
}

/// lcm from maximal prime-power exponents over the elements.
inline BigInt lcm_of(const std::vector<std::uint64_t>& xs) {
  std::map<std::uint64_t, unsigned> top;
  for (std::uint64_t x : xs) {
    for (std::uint64_t d = 2; d * d <= x; ++d) {
      unsigned e = 0;
      while (x % d == 0) x /= d, ++e;
      if (e) top[d] = std::max(top[d], e);
    }
    if (x > 1) top[x] = std::max(top[x], 1u);
  }
  BigInt out = 1;
  for (const auto& [p, e] : top)
    for (unsigned i = 0; i < e; ++i) out *= static_cast<unsigned long>(p);
  return out;
}

inline Rational g(std::uint64_t a, std::uint64_t r, unsigned exponent = 2) {
  Rational sum = 0;
  for (std::uint64_t i = 0; i <= r; ++i) {
    BigInt d = 1;
    for (unsigned e = 0; e < exponent; ++e) d *= static_cast<unsigned long>(a + i);
    sum += frac(BigInt(1), d);
  }
  return sum;
}

/// Rational bisection for sqrt(x) to width 2^-bits, starting from [0, x + 1].
inline std::pair<Rational, Rational> sqrt_bisect(const Rational& x, unsigned bits) {
  Rational lo = 0, hi = x + 1;
  Rational target = 1;
  for (unsigned i = 0; i < bits; ++i) target /= 2;
  while (hi - lo > target) {
    Rational mid = (lo + hi) / 2;
    if (mid * mid <= x) lo = mid;
    else hi = mid;
  }
  return {lo, hi};
}

/// Quadruple loop over the box; identical pairs excluded. Values stay far
/// below 2^63 for the boxes used in tests.
inline std::vector<std::array<std::uint64_t, 4>> e11_box(std::uint64_t a_max, std::uint64_t r_max) {
  auto b = [](std::int64_t a, std::int64_t r) { return (2 * a - 1) * (2 * a + 2 * r + 1) + 1; };
  std::vector<std::array<std::uint64_t, 4>> out;
  for (std::int64_t a1 = 1; a1 <= static_cast<std::int64_t>(a_max); ++a1)
    for (std::int64_t r = 0; r <= static_cast<std::int64_t>(r_max); ++r)
      for (std::int64_t a2 = 1; a2 <= static_cast<std::int64_t>(a_max); ++a2)
        for (std::int64_t s = 0; s <= static_cast<std::int64_t>(r_max); ++s) {
          if (a1 == a2 && r == s) continue;
          if ((s + 1) * b(a1, r) == (r + 1) * b(a2, s))
            out.push_back({std::uint64_t(a1), std::uint64_t(r), std::uint64_t(a2), std::uint64_t(s)});
        }
  return out;
}

/// R1..R6 written over the integer centres 2a+r, i.e. c = (2a+r)/2.
inline std::array<Rational, 6> r_terms(std::uint64_t a1, std::uint64_t r, std::uint64_t a2, std::uint64_t s) {
  const BigInt R = static_cast<unsigned long>(r + 1), S = static_cast<unsigned long>(s + 1);
  const BigInt m = static_cast<unsigned long>(2 * a1 + r), n = static_cast<unsigned long>(2 * a2 + s);
  auto p = [](const BigInt& b, int e) {
    BigInt out = 1;
    for (int i = 0; i < e; ++i) out *= b;
    return out;
  };
  // 1/c^k = 2^k / m^k
  return {frac(4 * R, p(m, 2)) - frac(4 * S, p(n, 2)),
          frac(16 * (p(R, 3) - R), 4 * p(m, 4)) - frac(16 * (p(S, 3) - S), 4 * p(n, 4)),
          frac(64 * p(R, 5), 16 * p(m, 6)) - frac(64 * p(S, 5), 16 * p(n, 6)),
          frac(BigInt(5), BigInt(24)) * (frac(64 * p(S, 3), p(n, 6)) - frac(64 * p(R, 3), p(m, 6))),
          frac(BigInt(7), BigInt(48)) * (frac(64 * R, p(m, 6)) - frac(64 * S, p(n, 6))),
          frac(BigInt(1), BigInt(64)) * (frac(256 * p(R, 7), p(m, 8)) - frac(256 * p(S, 7), p(n, 8)))};
}

/// sum_{i=0}^{r} (i - r/2)^k, exact.
inline Rational centred_moment(std::uint64_t r, unsigned k) {
  Rational sum = 0;
  for (std::uint64_t i = 0; i <= r; ++i) {
    const Rational t = frac(static_cast<long>(2 * i) - static_cast<long>(r), 2);
    Rational power = 1;
    for (unsigned e = 0; e < k; ++e) power *= t;
    sum += power;
  }
  return sum;
}

}  // namespace oracle
