#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "hypharm/partial_sums.hpp"

namespace hypharm {

struct SearchConfig {
  std::uint64_t max_n = 2;        // intervals satisfy 1 <= a <= a + r <= max_n
  unsigned exponent = 2;          // 2: squares, 1: harmonic cross-check
  unsigned modulus_count = 3;
  std::uint64_t seed = 0;
  unsigned modulus_bits = 62;     // moduli are drawn from [2^(bits-1), 2^bits)

  /// Throws std::invalid_argument on an unusable configuration.
  void validate() const;

  friend bool operator==(const SearchConfig&, const SearchConfig&) = default;
};

/// Residues of one interval sum, one per screening modulus. Equal exact sums
/// give equal fingerprints.
struct Fingerprint {
  std::vector<std::uint64_t> residues;
  friend bool operator==(const Fingerprint&, const Fingerprint&) = default;
};

/// Distinct primes > max_n drawn from a generator seeded with config.seed.
std::vector<std::uint64_t> select_moduli(const SearchConfig& config);

/// prefix[n] = sum_{k=1}^{n} k^-exponent mod p, prefix[0] = 0. Requires p prime, p > n_max.
std::vector<std::uint64_t> prefix_residues(std::uint64_t n_max, std::uint64_t p, unsigned exponent);

/// Prefix tables for a fixed modulus set; fingerprints any interval inside [1, n_max]
/// with one subtraction per modulus.
class FingerprintScreen {
 public:
  FingerprintScreen(std::uint64_t n_max, unsigned exponent, std::vector<std::uint64_t> moduli);

  const std::vector<std::uint64_t>& moduli() const { return moduli_; }
  Fingerprint fingerprint(const Interval& iv) const;

  /// Groups of positions (ascending, each group of size >= 2) whose intervals
  /// share a fingerprint, ordered by their first position.
  std::vector<std::vector<std::size_t>> collision_groups(std::span<const Interval> intervals) const;

 private:
  std::uint64_t residue(std::size_t k, const Interval& iv) const;
  std::uint64_t hash(const Interval& iv) const;
  bool same(const Interval& x, const Interval& y) const;

  std::uint64_t n_max_;
  std::vector<std::uint64_t> moduli_;
  std::vector<std::vector<std::uint64_t>> prefixes_;
};

struct CollisionReport {
  SearchConfig config;
  std::vector<std::uint64_t> moduli;
  std::uint64_t interval_count = 0;
  std::vector<IntervalPair> screen_collision_pairs;
  std::vector<IntervalPair> exact_collision_pairs;
  double wall_time_seconds = 0;
};

/// Every interval in [1, max_n] is fingerprinted; every fingerprint group of
/// size >= 2 is confirmed pairwise with exact sums.
CollisionReport search(const SearchConfig& config);

/// All intervals with 1 <= a <= a + r <= n_max, ordered by (a, r).
std::vector<Interval> enumerate_intervals(std::uint64_t n_max);

/// G(first) == G(second) exactly.
bool confirm_exact(const IntervalPair& pair, unsigned exponent = 2);

}  // namespace hypharm
