#include "hypharm/partial_sums.hpp"

#include <utility>

#include "hypharm/number_theory.hpp"

namespace hypharm {

namespace {

struct Fraction {
  BigInt num;
  BigInt den;
};

// Binary splitting over [lo, hi): sum of 1/k^exponent, unreduced.
Fraction split_sum(std::uint64_t lo, std::uint64_t hi, unsigned exponent) {
  if (hi - lo == 1) return {BigInt(1), pow(to_big(lo), exponent)};
  const std::uint64_t mid = lo + (hi - lo) / 2;
  Fraction left = split_sum(lo, mid, exponent);
  Fraction right = split_sum(mid, hi, exponent);
  return {left.num * right.den + right.num * left.den, left.den * right.den};
}

Rational scaled_int(std::uint64_t v) { return Rational(to_big(v)); }

}  // namespace

std::string to_string(const Interval& iv) {
  return "(" + std::to_string(iv.a) + "," + std::to_string(iv.r) + ")";
}

Rational g_exact(const Interval& iv, unsigned exponent) {
  Fraction f = split_sum(iv.a, iv.a + iv.r + 1, exponent);
  return make_rational(f.num, f.den);
}

std::uint64_t g_mod(const Interval& iv, std::uint64_t p, unsigned exponent) {
  if (!is_prime_u64(p)) throw std::invalid_argument("g_mod modulus is not prime");
  if (p <= iv.last()) throw std::invalid_argument("g_mod modulus must exceed a + r");
  std::uint64_t acc = 0;
  for (std::uint64_t k = iv.a; k <= iv.last(); ++k) {
    acc += inverse_mod_prime(pow_mod(k, exponent, p), p);
    if (acc >= p) acc -= p;
  }
  return acc;
}

Enclosure epsilon(std::uint64_t n, unsigned precision_bits) {
  if (n == 0) throw std::invalid_argument("epsilon requires n >= 1");
  const BigInt nn = to_big(n);
  const Enclosure root = sqrt_enclosure(Rational(4 * nn * nn + 1), precision_bits + 1);
  const Dyadic top(2 * nn + 1, 0);
  Enclosure eps((top - root.hi()).ldexp(-1), (top - root.lo()).ldexp(-1));
  if (eps.lo().sign() <= 0 || !eps.below(Rational(1, 2)))
    throw VerificationFailure("epsilon enclosure escaped (0, 1/2) at n = " + std::to_string(n));
  return eps;
}

TelescopeCheck telescope_check(std::uint64_t n, unsigned precision_bits) {
  if (n == 0) throw std::invalid_argument("telescope_check requires n >= 1");
  const unsigned work = precision_bits + 8;
  const Enclosure eps = epsilon(n, work);
  const Dyadic nd(to_big(n), 0);
  const Enclosure x1 = Enclosure::point(nd) - eps;
  const Enclosure x2 = Enclosure::point(nd + Dyadic::from_int(1)) - eps;

  TelescopeCheck out;
  out.n = n;
  out.precision_bits = precision_bits;
  out.lhs = reciprocal(x1, work) - reciprocal(x2, work);
  out.rhs = Rational(1) / (scaled_int(n) * scaled_int(n));
  const Rational tolerance = Rational(Dyadic(BigInt(1), 4 - static_cast<std::int64_t>(precision_bits)).to_rational());
  if (!out.lhs.contains(out.rhs)) {
    out.status = Certainty::refuted;
  } else if (out.lhs.width() <= tolerance) {
    out.status = Certainty::certified;
  } else {
    out.status = Certainty::inconclusive;
  }
  return out;
}

int quadratic_sign(const std::array<Rational, 3>& c, const Rational& q) {
  const Rational v = c[0] * q * q + c[1] * q + c[2];
  return sgn(v);
}

EtaSolution solve_eta(const Interval& iv, unsigned precision_bits) {
  // Work on the grid 2^-grid. epsilon(n, grid - 2) has endpoints on that grid.
  const unsigned grid = precision_bits + 8;
  const std::int64_t shift = -static_cast<std::int64_t>(grid);

  EtaSolution sol;
  sol.interval = iv;
  sol.precision_bits = precision_bits;
  sol.eps_start = epsilon(iv.a, grid - 2);
  sol.eps_end = epsilon(iv.last(), grid - 2);

  const Rational s = g_exact(iv);
  const Rational b = scaled_int(2 * iv.a + iv.r + 1);
  const Rational c = scaled_int(iv.a) * scaled_int(iv.a + iv.r + 1);
  sol.quadratic = {s, -s * b, s * c - scaled_int(iv.r + 1)};

  // Clear denominators: Q(m / 2^grid) * den(S) * 4^grid is the integer
  //   N m^2 - N b m 2^grid + (N c - D (r+1)) 4^grid.
  const BigInt& num = s.get_num();
  const BigInt& den = s.get_den();
  BigInt lin = num * b.get_num();
  mpz_mul_2exp(lin.get_mpz_t(), lin.get_mpz_t(), grid);
  BigInt cst = num * c.get_num() - den * to_big(iv.r + 1);
  mpz_mul_2exp(cst.get_mpz_t(), cst.get_mpz_t(), 2 * grid);
  auto sign_at = [&](const BigInt& m) { return sgn(BigInt(num * m * m - lin * m + cst)); };
  auto on_grid = [&](const Dyadic& d) {
    BigInt m = d.mantissa();
    mpz_mul_2exp(m.get_mpz_t(), m.get_mpz_t(), static_cast<mp_bitcnt_t>(d.exponent() - shift));
    return m;
  };

  BigInt lo = on_grid(sol.eps_start.lo());
  BigInt hi = on_grid(sol.eps_end.hi());
  int s_lo = sign_at(lo);
  int s_hi = sign_at(hi);
  auto finish_point = [&](const BigInt& m) {
    sol.eta = Enclosure::point(Dyadic(m, shift));
    sol.sign_at_lo = sol.sign_at_hi = 0;
  };

  bool exact_root = false;
  if (s_lo == 0) {
    finish_point(lo);
    exact_root = true;
  } else if (s_hi == 0) {
    finish_point(hi);
    exact_root = true;
  } else if (!(s_lo > 0 && s_hi < 0)) {
    throw VerificationFailure("no sign change of the eta quadratic on [eps_a, eps_{a+r}] for " + to_string(iv));
  } else {
    BigInt limit(1);
    mpz_mul_2exp(limit.get_mpz_t(), limit.get_mpz_t(), grid - precision_bits);
    while (hi - lo > limit) {
      BigInt mid = lo + hi;
      mpz_fdiv_q_2exp(mid.get_mpz_t(), mid.get_mpz_t(), 1);
      const int s_mid = sign_at(mid);
      if (s_mid == 0) {
        finish_point(mid);
        exact_root = true;
        break;
      }
      (s_mid > 0 ? lo : hi) = mid;
    }
    if (!exact_root) {
      sol.eta = Enclosure(Dyadic(lo, shift), Dyadic(hi, shift));
      sol.sign_at_lo = s_lo;
      sol.sign_at_hi = s_hi;
    }
  }

  if (iv.r == 0) {
    const bool meets = !(sol.eta.below(sol.eps_start) || sol.eps_start.below(sol.eta));
    sol.status = meets ? Certainty::certified : Certainty::refuted;
  } else if (sol.eps_start.below(sol.eta) && sol.eta.below(sol.eps_end)) {
    sol.status = Certainty::certified;
  } else if (sol.eta.below(sol.eps_start) || sol.eps_end.below(sol.eta)) {
    sol.status = Certainty::refuted;
  } else {
    sol.status = Certainty::inconclusive;
  }
  return sol;
}

BigInt integer_bracket(const Interval& iv) {
  const BigInt a = to_big(iv.a);
  const BigInt r = to_big(iv.r);
  return (2 * a - 1) * (2 * a + 2 * r + 1) + 1;
}

Enclosure eta_bracket(const Interval& iv, const Enclosure& eta) {
  const Enclosure u = Enclosure::point(Dyadic::from_int(1)) - Enclosure::point(Dyadic::from_int(2)) * eta;
  const Dyadic coeff(to_big(4 * iv.a + 2 * iv.r), 0);
  return coeff * u + (-Dyadic::from_int(1)) + u * u;
}

namespace {

Certainty strictly_greater(const Enclosure& x, const Rational& bound) {
  if (x.above(bound)) return Certainty::certified;
  if (compare(x.hi(), bound) <= 0) return Certainty::refuted;
  return Certainty::inconclusive;
}

Certainty strictly_less(const Enclosure& x, const Rational& bound) {
  if (x.below(bound)) return Certainty::certified;
  if (compare(x.lo(), bound) >= 0) return Certainty::refuted;
  return Certainty::inconclusive;
}

}  // namespace

EtaBands check_eta_bands(const EtaSolution& sol) {
  const Interval& iv = sol.interval;
  EtaBands out;
  out.one_minus_two_eta =
      Enclosure::point(Dyadic::from_int(1)) - Enclosure::point(Dyadic::from_int(2)) * sol.eta;
  out.band_lower = strictly_greater(out.one_minus_two_eta, Rational(1) / scaled_int(4 * iv.last() + 1));
  out.band_upper = strictly_less(out.one_minus_two_eta, Rational(2) / scaled_int(4 * iv.a + 1));

  out.bracket = eta_bracket(iv, sol.eta);
  out.bracket_exact = 4 * scaled_int(iv.r + 1) / g_exact(iv) - Rational(integer_bracket(iv));
  if (!out.bracket.contains(out.bracket_exact))
    throw VerificationFailure("eta enclosure inconsistent with exact bracket for " + to_string(iv));
  out.bracket_bound = scaled_int(2 * iv.r + 1) / scaled_int(4 * iv.last());
  out.bracket_lower = strictly_greater(out.bracket, -out.bracket_bound);
  out.bracket_upper = strictly_less(out.bracket, out.bracket_bound);
  return out;
}

IntervalPair reduce_overlap(const IntervalPair& pair) {
  const Interval& x = pair.first;
  const Interval& y = pair.second;
  if (!pair.overlapping())
    throw std::invalid_argument("reduce_overlap needs a1 < a2 <= a1 + r");
  if (y.last() <= x.last())
    throw std::invalid_argument("reduce_overlap needs a2 + s > a1 + r (second window must extend past the first)");
  return {Interval(x.a, y.a - x.a - 1), Interval(x.last() + 1, y.last() - x.last() - 1)};
}

}  // namespace hypharm
