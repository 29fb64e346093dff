#include "hypharm/search.hpp"

#include <algorithm>
#include <chrono>
#include <limits>
#include <map>
#include <random>
#include <stdexcept>
#include <string>

#include "hypharm/number_theory.hpp"
#include "hypharm/parallel.hpp"

namespace hypharm {

namespace {

constexpr std::uint32_t kEmpty = std::numeric_limits<std::uint32_t>::max();

std::uint64_t mix(std::uint64_t h, std::uint64_t v) {
  h ^= v + 0x9E3779B97F4A7C15ull + (h << 6) + (h >> 2);
  h ^= h >> 31;
  h *= 0xBF58476D1CE4E5B9ull;
  return h ^ (h >> 29);
}

}  // namespace

void SearchConfig::validate() const {
  if (max_n < 2) throw std::invalid_argument("max_n must be at least 2");
  if (max_n > (std::uint64_t{1} << 16)) throw std::invalid_argument("max_n above 65536 is outside desk scale");
  if (exponent == 0) throw std::invalid_argument("exponent must be positive");
  if (modulus_count == 0 || modulus_count > 8) throw std::invalid_argument("modulus_count must be in [1, 8]");
  if (modulus_bits < 8 || modulus_bits > 62) throw std::invalid_argument("modulus_bits must be in [8, 62]");
  if ((std::uint64_t{1} << modulus_bits) <= 2 * max_n)
    throw std::invalid_argument("modulus_bits too small for primes above max_n");
}

std::vector<std::uint64_t> select_moduli(const SearchConfig& config) {
  config.validate();
  std::mt19937_64 rng(config.seed);
  const std::uint64_t lo = std::uint64_t{1} << (config.modulus_bits - 1);
  const std::uint64_t mask = lo - 1;
  std::vector<std::uint64_t> out;
  std::size_t attempts = 0;
  while (out.size() < config.modulus_count) {
    if (++attempts > 1'000'000) throw std::invalid_argument("could not find enough distinct primes");
    const std::uint64_t candidate = lo | (rng() & mask) | 1;
    if (candidate <= config.max_n || !is_prime_u64(candidate)) continue;
    if (std::find(out.begin(), out.end(), candidate) != out.end()) continue;
    out.push_back(candidate);
  }
  return out;
}

std::vector<std::uint64_t> prefix_residues(std::uint64_t n_max, std::uint64_t p, unsigned exponent) {
  if (!is_prime_u64(p)) throw std::invalid_argument("prefix modulus is not prime");
  if (p <= n_max) throw std::invalid_argument("prefix modulus must exceed n_max");
  std::vector<std::uint64_t> prefix(n_max + 1, 0);
  for (std::uint64_t k = 1; k <= n_max; ++k) {
    std::uint64_t v = prefix[k - 1] + inverse_mod_prime(pow_mod(k, exponent, p), p);
    prefix[k] = v >= p ? v - p : v;
  }
  return prefix;
}

FingerprintScreen::FingerprintScreen(std::uint64_t n_max, unsigned exponent, std::vector<std::uint64_t> moduli)
    : n_max_(n_max), moduli_(std::move(moduli)), prefixes_(moduli_.size()) {
  if (moduli_.empty()) throw std::invalid_argument("fingerprint screen needs at least one modulus");
  parallel_chunks(moduli_.size(), [&](unsigned, std::size_t begin, std::size_t end) {
    for (std::size_t k = begin; k < end; ++k) prefixes_[k] = prefix_residues(n_max_, moduli_[k], exponent);
  });
}

std::uint64_t FingerprintScreen::residue(std::size_t k, const Interval& iv) const {
  const auto& prefix = prefixes_[k];
  const std::uint64_t hi = prefix[iv.last()];
  const std::uint64_t lo = prefix[iv.a - 1];
  return hi >= lo ? hi - lo : hi + moduli_[k] - lo;
}

Fingerprint FingerprintScreen::fingerprint(const Interval& iv) const {
  if (iv.last() > n_max_) throw std::out_of_range("interval beyond the screen's range");
  Fingerprint fp;
  fp.residues.reserve(moduli_.size());
  for (std::size_t k = 0; k < moduli_.size(); ++k) fp.residues.push_back(residue(k, iv));
  return fp;
}

std::uint64_t FingerprintScreen::hash(const Interval& iv) const {
  std::uint64_t h = 0;
  for (std::size_t k = 0; k < moduli_.size(); ++k) h = mix(h, residue(k, iv));
  return h;
}

bool FingerprintScreen::same(const Interval& x, const Interval& y) const {
  for (std::size_t k = 0; k < moduli_.size(); ++k)
    if (residue(k, x) != residue(k, y)) return false;
  return true;
}

std::vector<std::vector<std::size_t>> FingerprintScreen::collision_groups(std::span<const Interval> intervals) const {
  if (intervals.size() >= kEmpty) throw std::invalid_argument("too many intervals for one screen");
  for (const auto& iv : intervals)
    if (iv.last() > n_max_) throw std::out_of_range("interval beyond the screen's range");

  // Open-addressing table per shard; a shard owns the hashes whose top bits
  // select it, so equal fingerprints always meet in the same shard, and each
  // shard inserts in position order.
  const unsigned shards = std::max(1u, worker_count());
  std::size_t capacity = 16;
  while (capacity < 2 * intervals.size() / shards + 16) capacity <<= 1;

  std::vector<std::map<std::size_t, std::vector<std::size_t>>> found(shards);
  parallel_chunks(
      shards,
      [&](unsigned, std::size_t begin, std::size_t end) {
        for (std::size_t shard = begin; shard < end; ++shard) {
          std::vector<std::uint32_t> table(capacity, kEmpty);
          auto& groups = found[shard];
          for (std::size_t i = 0; i < intervals.size(); ++i) {
            const std::uint64_t h = hash(intervals[i]);
            if ((h >> 40) % shards != shard) continue;
            std::size_t slot = h & (capacity - 1);
            while (true) {
              const std::uint32_t held = table[slot];
              if (held == kEmpty) {
                table[slot] = static_cast<std::uint32_t>(i);
                break;
              }
              if (same(intervals[held], intervals[i])) {
                auto& members = groups[held];
                if (members.empty()) members.push_back(held);
                members.push_back(i);
                break;
              }
              slot = (slot + 1) & (capacity - 1);
            }
          }
        }
      },
      shards);

  std::map<std::size_t, std::vector<std::size_t>> merged;
  for (auto& groups : found) merged.merge(groups);
  std::vector<std::vector<std::size_t>> out;
  out.reserve(merged.size());
  for (auto& [first, members] : merged) out.push_back(std::move(members));
  return out;
}

std::vector<Interval> enumerate_intervals(std::uint64_t n_max) {
  std::vector<Interval> out;
  out.reserve(n_max * (n_max + 1) / 2);
  for (std::uint64_t a = 1; a <= n_max; ++a)
    for (std::uint64_t r = 0; a + r <= n_max; ++r) out.emplace_back(a, r);
  return out;
}

bool confirm_exact(const IntervalPair& pair, unsigned exponent) {
  return g_exact(pair.first, exponent) == g_exact(pair.second, exponent);
}

CollisionReport search(const SearchConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  config.validate();

  CollisionReport report;
  report.config = config;
  report.moduli = select_moduli(config);
  const FingerprintScreen screen(config.max_n, config.exponent, report.moduli);
  const std::vector<Interval> intervals = enumerate_intervals(config.max_n);
  report.interval_count = intervals.size();

  for (const auto& group : screen.collision_groups(intervals)) {
    std::vector<Rational> exact;
    exact.reserve(group.size());
    for (const std::size_t i : group) exact.push_back(g_exact(intervals[i], config.exponent));
    for (std::size_t x = 0; x < group.size(); ++x) {
      for (std::size_t y = x + 1; y < group.size(); ++y) {
        const IntervalPair pair = IntervalPair::canonical(intervals[group[x]], intervals[group[y]]);
        report.screen_collision_pairs.push_back(pair);
        if (exact[x] == exact[y]) report.exact_collision_pairs.push_back(pair);
      }
    }
  }
  std::sort(report.screen_collision_pairs.begin(), report.screen_collision_pairs.end());
  std::sort(report.exact_collision_pairs.begin(), report.exact_collision_pairs.end());
  report.wall_time_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace hypharm
