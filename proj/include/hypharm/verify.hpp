#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace hypharm {

/// Range parameters for one batch verification; unset fields take the
/// per-lemma defaults (the ranges of the exhaustive suites).
struct VerifyOptions {
  std::string lemma;
  std::optional<std::uint64_t> n_min, n_max, k_max, window, a_max, b_max, r_max, s_max, count, max_end;
  std::uint64_t seed = 0;
  unsigned precision_bits = 64;
};

struct VerifyOutcome {
  std::string lemma;
  nlohmann::json parameters = nlohmann::json::object();  // resolved ranges
  std::uint64_t checked = 0;
  std::vector<nlohmann::json> failures;                   // in range order
  nlohmann::json summary = nlohmann::json::object();
  bool holds() const { return failures.empty(); }
};

const std::vector<std::string_view>& lemma_ids();

/// Runs every instance of the lemma in range across HYPHARM_THREADS workers;
/// the outcome does not depend on the worker count.
/// Throws std::invalid_argument on an unknown lemma id or bad range.
VerifyOutcome run_verification(const VerifyOptions& options);

nlohmann::json to_json(const VerifyOutcome& outcome);

}  // namespace hypharm
