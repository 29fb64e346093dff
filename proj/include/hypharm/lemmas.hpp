#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hypharm/enclosure.hpp"
#include "hypharm/number_theory.hpp"
#include "hypharm/partial_sums.hpp"
#include "hypharm/rational.hpp"

namespace hypharm {

/// Outcome of one lemma instance. Existential claims carry the element and/or
/// prime that certifies them; extra exact values go in `values`.
struct WitnessReport {
  std::string claim;
  std::map<std::string, std::int64_t> parameters;
  std::optional<std::uint64_t> element;
  std::optional<std::uint64_t> prime;
  std::map<std::string, std::string> values;
  bool holds = false;

  friend bool operator==(const WitnessReport&, const WitnessReport&) = default;
};

// ---- prime windows and lcm -------------------------------------------------

/// Smallest prime in [n, 2n], or in [n, 2n-1] when remark_mode (then n > 1).
/// The sieve must reach 2n.
WitnessReport check_bertrand(std::uint64_t n, const PrimeSieve& sieve, bool remark_mode = false);

/// n > k >= 1: some element of {n, ..., n+k-1} has a prime factor >= k+1.
WitnessReport check_prime_window(std::uint64_t n, std::uint64_t k);

/// n >= (k+1)^2: some element of {n, ..., n+k} has a prime factor >= 2(k+1).
WitnessReport check_large_prime_window(std::uint64_t n, std::uint64_t k);

struct LcmBound {
  BigInt lhs;    // lcm{a, a+b, ..., a+nb}
  Rational rhs;  // prod_{p | b} p^{v_p(n!)} * (1/n!) * prod_i (a+ib)
};

/// Both sides of the lcm lower bound. Requires gcd(a, b) = 1.
LcmBound lcm_bound_sides(std::uint64_t a, std::uint64_t b, std::uint64_t n);
WitnessReport check_lcm_bound(std::uint64_t a, std::uint64_t b, std::uint64_t n);

// ---- power sums ------------------------------------------------------------

/// Closed form for sum_{i=1}^{r/2} i^e (r even) or sum_{i=1}^{(r+1)/2} (2i-1)^e (r odd),
/// e in {2, 4, 6}. Throws std::invalid_argument otherwise.
Rational power_sum_closed_form(std::uint64_t r, unsigned exponent);
BigInt power_sum_direct(std::uint64_t r, unsigned exponent);
WitnessReport check_power_sum(std::uint64_t r, unsigned exponent);

/// (2k-1) * sum_{i=0}^{r} (i - r/2)^(2k-2) for k = 2, 3, 4 as given by the closed forms,
/// i.e. the Taylor weights ((r+1)^3-(r+1))/4, (3(r+1)^5-...)/48, (3(r+1)^7-...)/192.
std::array<Rational, 3> taylor_moment_closed_forms(std::uint64_t r);
std::array<Rational, 3> taylor_moment_direct(std::uint64_t r);

// ---- the Diophantine condition and L ---------------------------------------

struct LValue {
  Rational value;            // s(s+2)/(4(s+1)) - r(r+2)/(4(r+1))
  bool alternate_form = false;  // equals (1/4)[s+1 - 1/(s+1) - (r+1) + 1/(r+1)]
  bool below_bound = false;     // value < (s+1)/4
  bool sign_matches = false;    // value > 0 iff s > r
};

LValue compute_L(std::uint64_t r, std::uint64_t s);

/// (r+1)[(2a2-1)(2a2+2s+1)+1] == (s+1)[(2a1-1)(2a1+2r+1)+1]
bool check_necessary_identity(const IntervalPair& pair);

/// All (a1, r, a2, s) with a1, a2 in [1, a_max], r, s in [0, r_max], (a1, r) != (a2, s),
/// satisfying the identity, in lexicographic order. Solves for a2 per (r, s, a1).
std::vector<IntervalPair> e11_search(std::uint64_t a_max, std::uint64_t r_max);

struct Eq11Check {
  bool e11 = false;   // integer identity
  bool eq11 = false;  // (a1+r/2)^2/(r+1) - (r+1-1/(r+1))/4 == same in (a2, s)
  bool eq12 = false;  // (s+1)/(a2+s/2)^2 == (r+1)/((a1+r/2)^2 + (r+1)L)
  bool agree() const { return e11 == eq11 && eq11 == eq12; }
};

Eq11Check check_eq11_equivalence(const IntervalPair& pair);

// ---- Taylor decomposition and the positivity chain -------------------------

struct RewriteChecks {
  bool r1 = false;      // R1 = (r+1)L/c1^2 * (s+1)/c2^2
  bool r1_r2 = false;   // R1 + R2 in terms of L
  bool r1_r3 = false;   // R1 + R2 + R3 in terms of L
  bool r1_r5 = false;   // R1 + ... + R5 in terms of L
  bool all() const { return r1 && r1_r2 && r1_r3 && r1_r5; }
  friend bool operator==(const RewriteChecks&, const RewriteChecks&) = default;
};

/// G(a1, r) - G(a2, s) split into the closed-form terms R1..R6 around the
/// centres c1 = a1 + r/2, c2 = a2 + s/2, with R7 the exact residual.
struct DecompositionReport {
  IntervalPair pair;
  Rational L;
  std::array<Rational, 7> R;
  Rational difference;
  bool identity_holds = false;        // R1 + ... + R7 == difference
  bool moment_forms_hold = false;     // closed-form Taylor weights == direct moments
  bool e11 = false;
  std::optional<RewriteChecks> rewrites;  // only when e11 holds

  friend bool operator==(const DecompositionReport&, const DecompositionReport&) = default;
};

/// Requires a disjoint, ordered pair (a1 + r < a2). Throws std::invalid_argument otherwise.
DecompositionReport taylor_decompose(const IntervalPair& pair);

struct NamedCheck {
  std::string name;
  bool holds = false;
  friend bool operator==(const NamedCheck&, const NamedCheck&) = default;
};

/// Every inequality of the positivity argument, compared exactly. Meaningful
/// only under the chain's hypotheses; check_positivity_chain enforces them.
std::vector<NamedCheck> evaluate_positivity_bounds(const DecompositionReport& report);

struct PositivityReport {
  IntervalPair pair;
  std::vector<std::string> failed_hypotheses;  // empty iff the chain was evaluated
  std::vector<NamedCheck> bounds;
  std::optional<DecompositionReport> decomposition;
  /// G(a1, r) != G(a2, s), checked exactly when the chain is not evaluated.
  std::optional<bool> fallback_distinct;
  bool holds() const;
};

/// Hypotheses: s > r, a2 > a1 + r, the integer identity, a2 >= 4(s+1)^3.
PositivityReport check_positivity_chain(const IntervalPair& pair);

/// The three coefficient facts used to drop terms in the chain:
///   (s+1)^2 + 2(r+1)^2 - 10 + 6/(r+1)^2 + 1/(s+1)^2 > 0
///   3(r+1)^2/16 - 5/8 + 7/(16(r+1)^2) > 0
///   (r+1)^2/16 - 5/24 + 7/(48(r+1)^2) > 0
std::array<bool, 3> sign_facts(std::uint64_t r, std::uint64_t s);

struct BracketIdentityCheck {
  IntervalPair pair;
  unsigned precision_bits = 0;
  Enclosure lhs;  // (s+1) A1 - (r+1) A2
  Rational rhs;   // (r+1) B2 - (s+1) B1 + 4(r+1)(s+1)(1/G1 - 1/G2)
  Certainty status = Certainty::inconclusive;
};

/// Certified iff lhs contains rhs and is at most 2^-precision_bits wide.
BracketIdentityCheck check_bracket_identity(const IntervalPair& pair, unsigned precision_bits);

/// Seeded disjoint pairs with a1 + r < a2 and a2 + s <= max_end.
std::vector<IntervalPair> random_disjoint_pairs(std::size_t count, std::uint64_t max_end, std::uint64_t seed);

}  // namespace hypharm
