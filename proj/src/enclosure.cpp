#include "hypharm/enclosure.hpp"

#include <algorithm>
#include <stdexcept>

namespace hypharm {

namespace {

// q * 2^k as an exact rational.
Rational times_pow2(const Rational& q, std::int64_t k) {
  Rational out;
  if (k >= 0) {
    mpq_mul_2exp(out.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(k));
  } else {
    mpq_div_2exp(out.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(-k));
  }
  return out;
}

// Both mantissas aligned to the smaller exponent.
std::pair<BigInt, BigInt> align(const Dyadic& x, const Dyadic& y, std::int64_t& exponent) {
  exponent = std::min(x.exponent(), y.exponent());
  BigInt mx = x.mantissa();
  BigInt my = y.mantissa();
  mpz_mul_2exp(mx.get_mpz_t(), mx.get_mpz_t(), static_cast<mp_bitcnt_t>(x.exponent() - exponent));
  mpz_mul_2exp(my.get_mpz_t(), my.get_mpz_t(), static_cast<mp_bitcnt_t>(y.exponent() - exponent));
  return {mx, my};
}

}  // namespace

Dyadic::Dyadic(BigInt mantissa, std::int64_t exponent) : mantissa_(std::move(mantissa)), exponent_(exponent) {
  if (mantissa_ == 0) {
    exponent_ = 0;
    return;
  }
  const auto tz = mpz_scan1(mantissa_.get_mpz_t(), 0);
  if (tz > 0) {
    mpz_fdiv_q_2exp(mantissa_.get_mpz_t(), mantissa_.get_mpz_t(), tz);
    exponent_ += static_cast<std::int64_t>(tz);
  }
}

Rational Dyadic::to_rational() const { return times_pow2(Rational(mantissa_), exponent_); }

Dyadic operator+(const Dyadic& x, const Dyadic& y) {
  std::int64_t e = 0;
  auto [mx, my] = align(x, y, e);
  return Dyadic(mx + my, e);
}

Dyadic operator-(const Dyadic& x, const Dyadic& y) {
  std::int64_t e = 0;
  auto [mx, my] = align(x, y, e);
  return Dyadic(mx - my, e);
}

Dyadic operator*(const Dyadic& x, const Dyadic& y) {
  return Dyadic(x.mantissa_ * y.mantissa_, x.exponent_ + y.exponent_);
}

int compare(const Dyadic& x, const Dyadic& y) {
  std::int64_t e = 0;
  auto [mx, my] = align(x, y, e);
  return cmp(mx, my);
}

int compare(const Dyadic& x, const Rational& q) { return cmp(x.to_rational(), q); }

Dyadic floor_dyadic(const Rational& q, unsigned bits) {
  const Rational scaled = times_pow2(q, bits);
  BigInt f;
  mpz_fdiv_q(f.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
  return Dyadic(f, -static_cast<std::int64_t>(bits));
}

Dyadic ceil_dyadic(const Rational& q, unsigned bits) {
  const Rational scaled = times_pow2(q, bits);
  BigInt c;
  mpz_cdiv_q(c.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
  return Dyadic(c, -static_cast<std::int64_t>(bits));
}

std::string to_string(const Dyadic& d) {
  return d.mantissa().get_str(10) + "*2^" + std::to_string(d.exponent());
}

Dyadic parse_dyadic(std::string_view text) {
  const auto star = text.find("*2^");
  if (star == std::string_view::npos) throw std::invalid_argument("malformed dyadic: " + std::string(text));
  try {
    BigInt m(std::string(text.substr(0, star)), 10);
    const std::int64_t e = std::stoll(std::string(text.substr(star + 3)));
    return Dyadic(m, e);
  } catch (const std::exception&) {
    throw std::invalid_argument("malformed dyadic: " + std::string(text));
  }
}

Enclosure::Enclosure(Dyadic lo, Dyadic hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
  if (hi_ < lo_) throw std::invalid_argument("enclosure with lo > hi");
}

Enclosure Enclosure::from_rational(const Rational& q, unsigned bits) {
  return {floor_dyadic(q, bits), ceil_dyadic(q, bits)};
}

Enclosure operator*(const Enclosure& x, const Enclosure& y) {
  const Dyadic c[] = {x.lo_ * y.lo_, x.lo_ * y.hi_, x.hi_ * y.lo_, x.hi_ * y.hi_};
  return {*std::min_element(std::begin(c), std::end(c)), *std::max_element(std::begin(c), std::end(c))};
}

Enclosure operator+(const Enclosure& x, const Dyadic& d) { return {x.lo() + d, x.hi() + d}; }

Enclosure operator*(const Dyadic& d, const Enclosure& x) { return Enclosure::point(d) * x; }

Enclosure reciprocal(const Enclosure& x, unsigned bits) {
  if (x.contains_zero()) throw std::domain_error("reciprocal of an enclosure containing zero");
  const Rational lo = 1 / x.hi().to_rational();
  const Rational hi = 1 / x.lo().to_rational();
  return {floor_dyadic(lo, bits), ceil_dyadic(hi, bits)};
}

Enclosure scale(const Rational& q, const Enclosure& x, unsigned bits) {
  Rational a = q * x.lo().to_rational();
  Rational b = q * x.hi().to_rational();
  if (b < a) std::swap(a, b);
  return {floor_dyadic(a, bits), ceil_dyadic(b, bits)};
}

Enclosure sqrt_enclosure(const Rational& x, unsigned precision_bits) {
  if (sgn(x) < 0) throw std::domain_error("square root of a negative rational");
  // floor(sqrt(y)) == isqrt(floor(y)) for real y >= 0.
  const Rational scaled = times_pow2(x, 2 * static_cast<std::int64_t>(precision_bits));
  BigInt f;
  mpz_fdiv_q(f.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
  BigInt root;
  mpz_sqrt(root.get_mpz_t(), f.get_mpz_t());
  const Dyadic lo(root, -static_cast<std::int64_t>(precision_bits));
  if (cmp(Rational(root * root), scaled) == 0) return Enclosure::point(lo);
  return {lo, Dyadic(root + 1, -static_cast<std::int64_t>(precision_bits))};
}

std::string_view to_string(Certainty c) {
  switch (c) {
    case Certainty::certified: return "certified";
    case Certainty::inconclusive: return "inconclusive";
    case Certainty::refuted: return "refuted";
  }
  return "unknown";
}

}  // namespace hypharm
