#include "hypharm/lemmas.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>

namespace hypharm {

namespace {

Rational q(std::uint64_t v) { return Rational(to_big(v)); }

std::int64_t as_param(std::uint64_t v) { return static_cast<std::int64_t>(v); }

std::optional<std::uint64_t> largest_prime_factor(std::uint64_t n) {
  const auto factors = prime_factors(n);
  if (factors.empty()) return std::nullopt;
  return factors.back();
}

// Element of [lo, hi] owning a prime factor >= threshold, with that factor.
WitnessReport window_witness(std::string claim, std::uint64_t n, std::uint64_t k, std::uint64_t lo,
                             std::uint64_t hi, std::uint64_t threshold) {
  WitnessReport out;
  out.claim = std::move(claim);
  out.parameters = {{"n", as_param(n)}, {"k", as_param(k)}};
  for (std::uint64_t e = lo; e <= hi; ++e) {
    const auto p = largest_prime_factor(e);
    if (p && *p >= threshold) {
      out.element = e;
      out.prime = *p;
      out.holds = true;
      break;
    }
  }
  return out;
}

using u128 = unsigned __int128;

u128 isqrt_u128(u128 n) {
  auto x = static_cast<u128>(std::sqrt(static_cast<long double>(n)));
  while (x * x > n) --x;
  while ((x + 1) * (x + 1) <= n) ++x;
  return x;
}

struct Centres {
  Rational R, S, c1, c2;
};

Centres centres(const IntervalPair& pair) {
  const auto& [x, y] = pair;
  return {q(x.r + 1), q(y.r + 1), make_rational(to_big(2 * x.a + x.r), 2), make_rational(to_big(2 * y.a + y.r), 2)};
}

RewriteChecks rewrite_checks(const DecompositionReport& d) {
  const auto [R, S, c1, c2] = centres(d.pair);
  const Rational& L = d.L;
  const std::uint64_t r = d.pair.first.r;
  const Rational k = q(r * (r + 2)) / (4 * R);  // r(r+2)/(4(r+1))
  const Rational c1_2 = pow(c1, 2), c1_4 = pow(c1, 4), c1_6 = pow(c1, 6);
  const Rational c2_4 = pow(c2, 4), c2_6 = pow(c2, 6);
  const Rational S2 = S * S, S3 = S2 * S, R2 = R * R, R3 = R2 * R;

  RewriteChecks out;
  out.r1 = d.R[0] == R * L / c1_2 * S / pow(c2, 2);

  const Rational r12 = L * (L + 2 * k) * S2 * R / (c2_4 * c1_2) + k * S2 * R2 * L * L / (c2_4 * c1_4);
  out.r1_r2 = d.R[0] + d.R[1] == r12;

  const Rational inv_gap = 1 / S2 - 1 / R2;
  const Rational r13 = Rational(1, 16) * inv_gap * S2 * R / (c2_4 * c1_2) +
                       (S2 - R2) / 16 * S3 * R * L / (c2_6 * c1_2) + k * S2 * R2 * L * L / (c2_4 * c1_4) +
                       3 * R2 * S3 * R * L / (16 * c2_6 * c1_2) + 3 * R2 * S3 * R2 * L * L / (16 * c2_6 * c1_4) +
                       R2 * S3 * R3 * L * L * L / (16 * c2_6 * c1_6);
  out.r1_r3 = d.R[0] + d.R[1] + d.R[2] == r13;

  const Rational r15 = Rational(1, 12) * (1 / R2 - 1 / S2) * S3 / c2_6 +
                       Rational(1, 16) * (S2 + 2 * R2 - 10 + 6 / R2 + 1 / S2) * S3 * R * L / (c2_6 * c1_2) +
                       k * S2 * R2 * L * L / (c2_4 * c1_4) +
                       (3 * R2 / 16 - Rational(5, 8) + 7 / (16 * R2)) * S3 * R2 * L * L / (c2_6 * c1_4) +
                       (R2 / 16 - Rational(5, 24) + 7 / (48 * R2)) * S3 * R3 * L * L * L / (c2_6 * c1_6);
  out.r1_r5 = d.R[0] + d.R[1] + d.R[2] + d.R[3] + d.R[4] == r15;
  return out;
}

std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t lo, std::uint64_t hi) {
  // Rejection keeps the draw identical across standard library implementations.
  const std::uint64_t span = hi - lo + 1;
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() / span * span;
  std::uint64_t v = rng();
  while (v >= limit) v = rng();
  return lo + v % span;
}

}  // namespace

WitnessReport check_bertrand(std::uint64_t n, const PrimeSieve& sieve, bool remark_mode) {
  if (n == 0) throw std::invalid_argument("bertrand check requires n >= 1");
  if (remark_mode && n < 2) throw std::invalid_argument("bertrand remark mode requires n > 1");
  const std::uint64_t hi = remark_mode ? 2 * n - 1 : 2 * n;
  if (hi > sieve.limit()) throw std::invalid_argument("sieve too small for bertrand window");
  WitnessReport out;
  out.claim = remark_mode ? "bertrand-remark" : "bertrand";
  out.parameters = {{"n", as_param(n)}};
  out.prime = sieve.first_prime_in(n, hi);
  out.holds = out.prime.has_value();
  return out;
}

WitnessReport check_prime_window(std::uint64_t n, std::uint64_t k) {
  if (k == 0 || n <= k) throw std::invalid_argument("prime window requires n > k >= 1");
  return window_witness("prime-window", n, k, n, n + k - 1, k + 1);
}

WitnessReport check_large_prime_window(std::uint64_t n, std::uint64_t k) {
  if (k == 0 || n < (k + 1) * (k + 1)) throw std::invalid_argument("large prime window requires k >= 1, n >= (k+1)^2");
  return window_witness("large-prime-window", n, k, n, n + k, 2 * (k + 1));
}

LcmBound lcm_bound_sides(std::uint64_t a, std::uint64_t b, std::uint64_t n) {
  if (a == 0 || b == 0) throw std::invalid_argument("lcm bound requires a, b >= 1");
  if (std::gcd(a, b) != 1) throw std::invalid_argument("lcm bound requires gcd(a, b) = 1");
  LcmBound out;
  out.lhs = lcm_progression(a, b, n);
  BigInt factor(1);
  for (const std::uint64_t p : prime_factors(b)) factor *= pow(to_big(p), factorial_valuation(n, p));
  BigInt product(1);
  for (std::uint64_t i = 0; i <= n; ++i) product *= to_big(a) + to_big(b) * to_big(i);
  out.rhs = make_rational(factor * product, factorial(n));
  return out;
}

WitnessReport check_lcm_bound(std::uint64_t a, std::uint64_t b, std::uint64_t n) {
  const LcmBound sides = lcm_bound_sides(a, b, n);
  WitnessReport out;
  out.claim = "lcm-bound";
  out.parameters = {{"a", as_param(a)}, {"b", as_param(b)}, {"n", as_param(n)}};
  out.values = {{"lhs", to_string(Rational(sides.lhs))}, {"rhs", to_string(sides.rhs)}};
  out.holds = Rational(sides.lhs) >= sides.rhs;
  return out;
}

Rational power_sum_closed_form(std::uint64_t r, unsigned exponent) {
  if (r == 0) throw std::invalid_argument("power sums are defined for r >= 1");
  const BigInt R = to_big(r + 1);
  const bool even = r % 2 == 0;
  switch (exponent) {
    case 2: return make_rational(pow(R, 3) - R, even ? 24 : 6);
    case 4: return make_rational(3 * pow(R, 5) - 10 * pow(R, 3) + 7 * R, even ? 480 : 30);
    case 6:
      return make_rational(3 * pow(R, 7) - 21 * pow(R, 5) + 49 * pow(R, 3) - 31 * R, even ? 2688 : 42);
    default: throw std::invalid_argument("power sum exponent must be 2, 4 or 6");
  }
}

BigInt power_sum_direct(std::uint64_t r, unsigned exponent) {
  BigInt sum(0);
  if (r % 2 == 0) {
    for (std::uint64_t i = 1; i <= r / 2; ++i) sum += pow(to_big(i), exponent);
  } else {
    for (std::uint64_t i = 1; i <= (r + 1) / 2; ++i) sum += pow(to_big(2 * i - 1), exponent);
  }
  return sum;
}

WitnessReport check_power_sum(std::uint64_t r, unsigned exponent) {
  const Rational closed = power_sum_closed_form(r, exponent);
  const BigInt direct = power_sum_direct(r, exponent);
  WitnessReport out;
  out.claim = "power-sums";
  out.parameters = {{"r", as_param(r)}, {"exponent", exponent}};
  out.values = {{"closed_form", to_string(closed)}, {"direct", to_string(Rational(direct))}};
  out.holds = closed == Rational(direct);
  return out;
}

std::array<Rational, 3> taylor_moment_closed_forms(std::uint64_t r) {
  const BigInt R = to_big(r + 1);
  return {make_rational(pow(R, 3) - R, 4), make_rational(3 * pow(R, 5) - 10 * pow(R, 3) + 7 * R, 48),
          make_rational(3 * pow(R, 7) - 21 * pow(R, 5) + 49 * pow(R, 3) - 31 * R, 192)};
}

std::array<Rational, 3> taylor_moment_direct(std::uint64_t r) {
  // (i - r/2)^k = (2i - r)^k / 2^k
  std::array<BigInt, 3> sums{BigInt(0), BigInt(0), BigInt(0)};
  for (std::uint64_t i = 0; i <= r; ++i) {
    const BigInt d = BigInt(static_cast<long>(2 * i)) - to_big(r);
    const BigInt d2 = d * d;
    sums[0] += d2;
    sums[1] += d2 * d2;
    sums[2] += d2 * d2 * d2;
  }
  return {make_rational(3 * sums[0], 4), make_rational(5 * sums[1], 16), make_rational(7 * sums[2], 64)};
}

LValue compute_L(std::uint64_t r, std::uint64_t s) {
  const Rational R = q(r + 1), S = q(s + 1);
  LValue out;
  out.value = q(s * (s + 2)) / (4 * S) - q(r * (r + 2)) / (4 * R);
  out.alternate_form = out.value == (S - 1 / S - R + 1 / R) / 4;
  out.below_bound = out.value < S / 4;
  out.sign_matches = (sgn(out.value) > 0) == (s > r);
  return out;
}

bool check_necessary_identity(const IntervalPair& pair) {
  return to_big(pair.first.r + 1) * integer_bracket(pair.second) ==
         to_big(pair.second.r + 1) * integer_bracket(pair.first);
}

std::vector<IntervalPair> e11_search(std::uint64_t a_max, std::uint64_t r_max) {
  if (a_max > (std::uint64_t{1} << 28) || r_max > (std::uint64_t{1} << 16))
    throw std::invalid_argument("e11 search box too large for 128-bit arithmetic");
  std::vector<IntervalPair> out;
  // (2a2 + s)^2 = (s+1) B1 / (r+1) + s^2 + 2s, so a2 is determined by (r, s, a1).
  for (std::uint64_t a1 = 1; a1 <= a_max; ++a1) {
    for (std::uint64_t r = 0; r <= r_max; ++r) {
      const u128 b1 = static_cast<u128>(2 * a1 - 1) * (2 * a1 + 2 * r + 1) + 1;
      for (std::uint64_t s = 0; s <= r_max; ++s) {
        const u128 num = static_cast<u128>(s + 1) * b1;
        if (num % (r + 1) != 0) continue;
        const u128 target = num / (r + 1) + static_cast<u128>(s) * s + 2 * s;
        const u128 root = isqrt_u128(target);
        if (root * root != target || root < s + 2 || (root - s) % 2 != 0) continue;
        const auto a2 = static_cast<std::uint64_t>((root - s) / 2);
        if (a2 > a_max || (a1 == a2 && r == s)) continue;
        out.push_back({Interval(a1, r), Interval(a2, s)});
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

Eq11Check check_eq11_equivalence(const IntervalPair& pair) {
  const auto [R, S, c1, c2] = centres(pair);
  const Rational L = compute_L(pair.first.r, pair.second.r).value;
  Eq11Check out;
  out.e11 = check_necessary_identity(pair);
  out.eq11 = c1 * c1 / R - (R - 1 / R) / 4 == c2 * c2 / S - (S - 1 / S) / 4;
  out.eq12 = S / (c2 * c2) == R / (c1 * c1 + R * L);
  return out;
}

DecompositionReport taylor_decompose(const IntervalPair& pair) {
  if (!pair.is_ordered() || !pair.disjoint())
    throw std::invalid_argument("taylor_decompose needs a1 + r < a2; reduce overlapping pairs first");
  const auto [R, S, c1, c2] = centres(pair);

  DecompositionReport d;
  d.pair = pair;
  d.L = compute_L(pair.first.r, pair.second.r).value;
  d.R[0] = R / pow(c1, 2) - S / pow(c2, 2);
  d.R[1] = (pow(R, 3) - R) / (4 * pow(c1, 4)) - (pow(S, 3) - S) / (4 * pow(c2, 4));
  d.R[2] = pow(R, 5) / (16 * pow(c1, 6)) - pow(S, 5) / (16 * pow(c2, 6));
  d.R[3] = Rational(5, 24) * (pow(S, 3) / pow(c2, 6) - pow(R, 3) / pow(c1, 6));
  d.R[4] = Rational(7, 48) * (R / pow(c1, 6) - S / pow(c2, 6));
  d.R[5] = Rational(1, 64) * (pow(R, 7) / pow(c1, 8) - pow(S, 7) / pow(c2, 8));
  d.difference = g_exact(pair.first) - g_exact(pair.second);
  Rational partial(0);
  for (std::size_t i = 0; i < 6; ++i) partial += d.R[i];
  d.R[6] = d.difference - partial;
  d.identity_holds = partial + d.R[6] == d.difference;
  d.moment_forms_hold = taylor_moment_closed_forms(pair.first.r) == taylor_moment_direct(pair.first.r) &&
                        taylor_moment_closed_forms(pair.second.r) == taylor_moment_direct(pair.second.r);
  d.e11 = check_necessary_identity(pair);
  if (d.e11) d.rewrites = rewrite_checks(d);
  return d;
}

std::array<bool, 3> sign_facts(std::uint64_t r, std::uint64_t s) {
  const Rational R2 = q((r + 1) * (r + 1)), S2 = q((s + 1) * (s + 1));
  return {S2 + 2 * R2 - 10 + 6 / R2 + 1 / S2 > 0, 3 * R2 / 16 - Rational(5, 8) + 7 / (16 * R2) > 0,
          R2 / 16 - Rational(5, 24) + 7 / (48 * R2) > 0};
}

std::vector<NamedCheck> evaluate_positivity_bounds(const DecompositionReport& d) {
  const auto [R, S, c1, c2] = centres(d.pair);
  const std::uint64_t r = d.pair.first.r, s = d.pair.second.r;
  const Rational gap = q(s) - q(r);  // s - r
  const Rational X6 = pow(c2, 6), X10 = pow(c2, 10);
  const Rational r1_5 = d.R[0] + d.R[1] + d.R[2] + d.R[3] + d.R[4];
  const Rational r7_floor = -Rational(7) / (512 * S * X6) - 1 / (32768 * pow(S, 3) * X10);
  const Rational final_bound = gap / (7 * X6) + r7_floor;
  const auto facts = sign_facts(r, s);

  return {
      {"coefficient_fact_1", facts[0]},
      {"coefficient_fact_2", facts[1]},
      {"coefficient_fact_3", facts[2]},
      {"r1_to_r5_lower", r1_5 > gap / (6 * X6)},
      {"r6_lower", d.R[5] > -gap / (512 * X6)},
      {"r1_to_r6_lower", r1_5 + d.R[5] > gap / (7 * X6)},
      {"l_ratio_below_1_63", R * d.L / (c1 * c1) < Rational(1, 63)},
      {"centre_ratio_below_65_64", c2 / q(d.pair.second.a) < Rational(65, 64)},
      {"r7_lower", d.R[6] > r7_floor},
      {"final_bound_positive", sgn(final_bound) > 0},
      {"difference_positive", sgn(d.difference) > 0},
  };
}

bool PositivityReport::holds() const {
  if (failed_hypotheses.empty())
    return std::all_of(bounds.begin(), bounds.end(), [](const NamedCheck& c) { return c.holds; });
  return fallback_distinct.value_or(false);
}

PositivityReport check_positivity_chain(const IntervalPair& pair) {
  const auto& [x, y] = pair;
  PositivityReport out;
  out.pair = pair;
  if (!(y.r > x.r)) out.failed_hypotheses.emplace_back("s > r");
  if (!(y.a > x.last())) out.failed_hypotheses.emplace_back("a2 > a1 + r");
  if (!check_necessary_identity(pair)) out.failed_hypotheses.emplace_back("e11");
  if (to_big(y.a) < 4 * pow(to_big(y.r + 1), 3)) out.failed_hypotheses.emplace_back("a2 >= 4(s+1)^3");

  if (!out.failed_hypotheses.empty()) {
    out.fallback_distinct = g_exact(x) != g_exact(y);
    return out;
  }
  out.decomposition = taylor_decompose(pair);
  out.bounds = evaluate_positivity_bounds(*out.decomposition);
  return out;
}

BracketIdentityCheck check_bracket_identity(const IntervalPair& pair, unsigned precision_bits) {
  const auto& [x, y] = pair;
  const unsigned work = precision_bits + 48;
  const EtaSolution eta1 = solve_eta(x, work);
  const EtaSolution eta2 = solve_eta(y, work);
  const BigInt R = to_big(x.r + 1), S = to_big(y.r + 1);

  BracketIdentityCheck out;
  out.pair = pair;
  out.precision_bits = precision_bits;
  out.lhs = Dyadic(S, 0) * eta_bracket(x, eta1.eta) - Dyadic(R, 0) * eta_bracket(y, eta2.eta);
  out.rhs = Rational(R * integer_bracket(y) - S * integer_bracket(x)) +
            4 * Rational(R * S) * (1 / g_exact(x) - 1 / g_exact(y));
  const Rational tolerance = Dyadic(BigInt(1), -static_cast<std::int64_t>(precision_bits)).to_rational();
  if (!out.lhs.contains(out.rhs)) {
    out.status = Certainty::refuted;
  } else if (out.lhs.width() <= tolerance) {
    out.status = Certainty::certified;
  } else {
    out.status = Certainty::inconclusive;
  }
  return out;
}

std::vector<IntervalPair> random_disjoint_pairs(std::size_t count, std::uint64_t max_end, std::uint64_t seed) {
  if (max_end < 2) throw std::invalid_argument("disjoint pairs need max_end >= 2");
  std::mt19937_64 rng(seed);
  std::vector<IntervalPair> out;
  out.reserve(count);
  while (out.size() < count) {
    const std::uint64_t a1 = bounded(rng, 1, max_end - 1);
    const std::uint64_t r = bounded(rng, 0, max_end - 1 - a1);
    const std::uint64_t a2 = bounded(rng, a1 + r + 1, max_end);
    const std::uint64_t s = bounded(rng, 0, max_end - a2);
    out.push_back({Interval(a1, r), Interval(a2, s)});
  }
  return out;
}

}  // namespace hypharm
