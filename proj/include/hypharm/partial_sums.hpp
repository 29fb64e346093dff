#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>

#include "hypharm/enclosure.hpp"
#include "hypharm/rational.hpp"

namespace hypharm {

/// Raised when a computation contradicts a proven statement (a falsifying event),
/// as opposed to std::invalid_argument for bad input.
class VerificationFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The window {a, a+1, ..., a+r} of consecutive integers.
struct Interval {
  std::uint64_t a = 1;
  std::uint64_t r = 0;

  Interval() = default;
  Interval(std::uint64_t start, std::uint64_t extent) : a(start), r(extent) {
    if (start == 0) throw std::invalid_argument("interval start must be >= 1");
  }

  std::uint64_t last() const { return a + r; }
  std::uint64_t size() const { return r + 1; }

  friend auto operator<=>(const Interval&, const Interval&) = default;
};

std::string to_string(const Interval& iv);

struct IntervalPair {
  Interval first;   // (a1, r)
  Interval second;  // (a2, s)

  /// Orders the two intervals by start (then extent).
  static IntervalPair canonical(const Interval& x, const Interval& y) {
    return x <= y ? IntervalPair{x, y} : IntervalPair{y, x};
  }

  bool is_ordered() const { return first.a < second.a; }
  bool disjoint() const { return first.last() < second.a; }
  /// a1 < a2 <= a1 + r, i.e. the second window starts inside the first.
  bool overlapping() const { return first.a < second.a && second.a <= first.last(); }

  friend auto operator<=>(const IntervalPair&, const IntervalPair&) = default;
};

/// sum_{i=0}^{r} 1/(a+i)^exponent, exact and reduced.
Rational g_exact(const Interval& iv, unsigned exponent = 2);

/// The same sum mod p, i.e. sum of inverses of (a+i)^exponent.
/// Requires p prime and p > a + r; throws std::invalid_argument otherwise.
std::uint64_t g_mod(const Interval& iv, std::uint64_t p, unsigned exponent = 2);

/// Certified enclosure of (2n + 1 - sqrt(4n^2 + 1)) / 2, width <= 2^-precision_bits.
Enclosure epsilon(std::uint64_t n, unsigned precision_bits);

struct TelescopeCheck {
  std::uint64_t n = 0;
  unsigned precision_bits = 0;
  Enclosure lhs;  // 1/(n - eps_n) - 1/(n + 1 - eps_n)
  Rational rhs;   // 1/n^2
  Certainty status = Certainty::inconclusive;
};

/// Certified iff the lhs enclosure contains 1/n^2 and is at most 2^(4 - precision_bits) wide.
TelescopeCheck telescope_check(std::uint64_t n, unsigned precision_bits);

/// Root of S*eta^2 - S*(2a+r+1)*eta + S*a*(a+r+1) - (r+1) = 0 with S = G(a, r),
/// i.e. G(a, r) = (r+1) / ((a+r+1-eta)(a-eta)).
struct EtaSolution {
  Interval interval;
  Enclosure eta;
  std::array<Rational, 3> quadratic;  // coefficients of eta^2, eta^1, eta^0
  Enclosure eps_start;                // eps_a
  Enclosure eps_end;                  // eps_{a+r}
  int sign_at_lo = 0;                 // exact sign of the quadratic at eta.lo()
  int sign_at_hi = 0;
  unsigned precision_bits = 0;
  /// certified: eps_a < eta < eps_{a+r} (for r = 0: eta and eps_a enclosures intersect).
  Certainty status = Certainty::inconclusive;
};

/// Exact sign of the quadratic at q.
int quadratic_sign(const std::array<Rational, 3>& coeffs, const Rational& q);

/// Bisection on exact signs. Throws VerificationFailure if the bracket shows no sign change.
EtaSolution solve_eta(const Interval& iv, unsigned precision_bits = kDefaultPrecisionBits);

/// Bands for 1 - 2*eta and for A = (4a+2r)(1-2eta) - 1 + (1-2eta)^2.
struct EtaBands {
  Enclosure one_minus_two_eta;
  Certainty band_lower = Certainty::inconclusive;  // 1/(4(a+r)+1) < 1 - 2eta
  Certainty band_upper = Certainty::inconclusive;  // 1 - 2eta < 2/(4a+1)
  Enclosure bracket;                               // A, from the eta enclosure
  Rational bracket_exact;                          // A = 4(r+1)/G - B, exactly
  Rational bracket_bound;                          // (2r+1)/(4(a+r))
  Certainty bracket_lower = Certainty::inconclusive;  // A > -bound
  Certainty bracket_upper = Certainty::inconclusive;  // A < bound
};

EtaBands check_eta_bands(const EtaSolution& sol);

/// Integer bracket (2a-1)(2a+2r+1) + 1 of the Diophantine condition.
BigInt integer_bracket(const Interval& iv);

/// A = (4a+2r)(1-2eta) - 1 + (1-2eta)^2 evaluated on an eta enclosure.
Enclosure eta_bracket(const Interval& iv, const Enclosure& eta);

/// ((a1, r), (a2, s)) with a1 < a2 <= a1 + r < a2 + s
///   -> ((a1, a2 - a1 - 1), (a1 + r + 1, a2 + s - a1 - r - 1)).
/// Removes the shared terms, so G(first) - G(second) is unchanged.
IntervalPair reduce_overlap(const IntervalPair& pair);

}  // namespace hypharm
