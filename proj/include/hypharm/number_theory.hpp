#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "hypharm/rational.hpp"

namespace hypharm {

/// Primality table for [0, limit]. Built once, read-only afterwards.
///
/// Tables above 2^24 are filled segment by segment so that working memory
/// stays at one segment plus the base primes; the stored table is one bit
/// per odd number either way.
class PrimeSieve {
 public:
  static constexpr std::uint64_t kSegmentThreshold = std::uint64_t{1} << 24;

  explicit PrimeSieve(std::uint64_t limit);

  std::uint64_t limit() const { return limit_; }

  /// Throws std::out_of_range when n > limit().
  bool is_prime(std::uint64_t n) const;

  /// Smallest prime in [lo, hi] or nullopt. Scanning past limit() throws.
  std::optional<std::uint64_t> first_prime_in(std::uint64_t lo, std::uint64_t hi) const;

 private:
  void fill_plain();
  void fill_segmented();
  void clear_odd(std::uint64_t n) { bits_[n >> 4] &= static_cast<std::uint8_t>(~(1u << ((n >> 1) & 7))); }

  std::uint64_t limit_;
  std::vector<std::uint8_t> bits_;  // bit (n/2) set iff odd n is prime
};

/// Deterministic Miller-Rabin for the full 64-bit range.
bool is_prime_u64(std::uint64_t n);

inline std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exponent, std::uint64_t m);

/// Inverse modulo a prime p via Fermat. Throws std::domain_error if p | a.
std::uint64_t inverse_mod_prime(std::uint64_t a, std::uint64_t p);

/// Largest e with p^e | n. Rejects n == 0 and composite p.
unsigned p_adic_valuation(std::uint64_t n, std::uint64_t p);
unsigned p_adic_valuation(const BigInt& n, std::uint64_t p);

/// v_p(n!) by Legendre's formula sum_{i>=1} floor(n / p^i).
std::uint64_t factorial_valuation(std::uint64_t n, std::uint64_t p);

/// lcm{a, a+b, ..., a+nb}. Requires a, b >= 1.
BigInt lcm_progression(std::uint64_t a, std::uint64_t b, std::uint64_t n);

BigInt factorial(std::uint64_t n);

/// Distinct prime factors in increasing order, by trial division.
std::vector<std::uint64_t> prime_factors(std::uint64_t n);

}  // namespace hypharm
