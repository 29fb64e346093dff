#include "hypharm/number_theory.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace hypharm {

namespace {

std::uint64_t isqrt_u64(std::uint64_t n) {
  auto x = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
  while (x * x > n) --x;
  while ((x + 1) * (x + 1) <= n) ++x;
  return x;
}

void require_prime(std::uint64_t p) {
  if (!is_prime_u64(p)) throw std::invalid_argument("not a prime: " + std::to_string(p));
}

}  // namespace

PrimeSieve::PrimeSieve(std::uint64_t limit) : limit_(limit), bits_(limit / 16 + 1, 0xFF) {
  if (limit < 2) throw std::invalid_argument("sieve limit must be at least 2");
  if (limit <= kSegmentThreshold) {
    fill_plain();
  } else {
    fill_segmented();
  }
  clear_odd(1);
}

void PrimeSieve::fill_plain() {
  for (std::uint64_t p = 3; p * p <= limit_; p += 2) {
    if (!is_prime(p)) continue;
    for (std::uint64_t m = p * p; m <= limit_; m += 2 * p) clear_odd(m);
  }
}

void PrimeSieve::fill_segmented() {
  const std::uint64_t root = isqrt_u64(limit_);
  PrimeSieve base(std::max<std::uint64_t>(root, 2));
  std::vector<std::uint64_t> base_primes;
  for (std::uint64_t p = 3; p <= root; p += 2)
    if (base.is_prime(p)) base_primes.push_back(p);

  constexpr std::uint64_t kSegment = std::uint64_t{1} << 20;
  std::vector<std::uint8_t> composite(kSegment);
  for (std::uint64_t lo = 0; lo <= limit_; lo += kSegment) {
    const std::uint64_t hi = std::min(limit_, lo + kSegment - 1);
    std::fill(composite.begin(), composite.end(), 0);
    for (const std::uint64_t p : base_primes) {
      std::uint64_t start = std::max(p * p, (lo + p - 1) / p * p);
      if (start % 2 == 0) start += p;
      for (std::uint64_t m = start; m <= hi; m += 2 * p) composite[m - lo] = 1;
    }
    for (std::uint64_t n = lo | 1; n <= hi; n += 2)
      if (composite[n - lo]) clear_odd(n);
  }
}

bool PrimeSieve::is_prime(std::uint64_t n) const {
  if (n > limit_) throw std::out_of_range("sieve query beyond limit: " + std::to_string(n));
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  return (bits_[n >> 4] >> ((n >> 1) & 7)) & 1u;
}

std::optional<std::uint64_t> PrimeSieve::first_prime_in(std::uint64_t lo, std::uint64_t hi) const {
  for (std::uint64_t n = lo; n <= hi; ++n)
    if (is_prime(n)) return n;
  return std::nullopt;
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exponent, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (exponent > 0) {
    if (exponent & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exponent >>= 1;
  }
  return result;
}

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (const std::uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  unsigned s = 0;
  while (d % 2 == 0) {
    d /= 2;
    ++s;
  }
  // These twelve bases are sufficient for every n < 2^64.
  for (const std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    std::uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (unsigned i = 1; i < s; ++i) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

std::uint64_t inverse_mod_prime(std::uint64_t a, std::uint64_t p) {
  a %= p;
  if (a == 0) throw std::domain_error("no inverse: modulus divides value");
  return pow_mod(a, p - 2, p);
}

unsigned p_adic_valuation(std::uint64_t n, std::uint64_t p) {
  if (n == 0) throw std::invalid_argument("valuation of zero is undefined");
  require_prime(p);
  unsigned e = 0;
  while (n % p == 0) {
    n /= p;
    ++e;
  }
  return e;
}

unsigned p_adic_valuation(const BigInt& n, std::uint64_t p) {
  if (n == 0) throw std::invalid_argument("valuation of zero is undefined");
  require_prime(p);
  BigInt rest = abs(n);
  const BigInt bp = to_big(p);
  unsigned e = 0;
  while (mpz_divisible_p(rest.get_mpz_t(), bp.get_mpz_t())) {
    rest /= bp;
    ++e;
  }
  return e;
}

std::uint64_t factorial_valuation(std::uint64_t n, std::uint64_t p) {
  require_prime(p);
  std::uint64_t total = 0;
  while (n > 0) {
    n /= p;
    total += n;
  }
  return total;
}

BigInt lcm_progression(std::uint64_t a, std::uint64_t b, std::uint64_t n) {
  if (a == 0 || b == 0) throw std::invalid_argument("lcm_progression requires a, b >= 1");
  BigInt acc = to_big(a);
  for (std::uint64_t i = 1; i <= n; ++i) {
    const BigInt term = to_big(a) + to_big(b) * to_big(i);
    mpz_lcm(acc.get_mpz_t(), acc.get_mpz_t(), term.get_mpz_t());
  }
  return acc;
}

BigInt factorial(std::uint64_t n) {
  BigInt out;
  mpz_fac_ui(out.get_mpz_t(), n);
  return out;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; d += (d == 2 ? 1 : 2)) {
    if (n % d != 0) continue;
    out.push_back(d);
    while (n % d == 0) n /= d;
  }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace hypharm
