#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "hypharm/rational.hpp"

namespace hypharm {

/// mantissa * 2^exponent, normalized so the mantissa is odd (or the value is 0 with exponent 0).
class Dyadic {
 public:
  Dyadic() = default;
  Dyadic(BigInt mantissa, std::int64_t exponent);
  static Dyadic from_int(std::int64_t v) { return Dyadic(BigInt(static_cast<long>(v)), 0); }

  const BigInt& mantissa() const { return mantissa_; }
  std::int64_t exponent() const { return exponent_; }

  Rational to_rational() const;
  int sign() const { return sgn(mantissa_); }

  /// Exact scaling by 2^k.
  Dyadic ldexp(std::int64_t k) const { return Dyadic(mantissa_, exponent_ + k); }

  friend Dyadic operator+(const Dyadic& x, const Dyadic& y);
  friend Dyadic operator-(const Dyadic& x, const Dyadic& y);
  friend Dyadic operator*(const Dyadic& x, const Dyadic& y);
  friend Dyadic operator-(const Dyadic& x) { return Dyadic(-x.mantissa_, x.exponent_); }

  friend int compare(const Dyadic& x, const Dyadic& y);
  friend int compare(const Dyadic& x, const Rational& q);
  friend bool operator==(const Dyadic& x, const Dyadic& y) {
    return x.mantissa_ == y.mantissa_ && x.exponent_ == y.exponent_;
  }
  friend bool operator<(const Dyadic& x, const Dyadic& y) { return compare(x, y) < 0; }
  friend bool operator<=(const Dyadic& x, const Dyadic& y) { return compare(x, y) <= 0; }

 private:
  BigInt mantissa_{0};
  std::int64_t exponent_ = 0;
};

/// Largest multiple of 2^-bits that is <= q.
Dyadic floor_dyadic(const Rational& q, unsigned bits);
/// Smallest multiple of 2^-bits that is >= q.
Dyadic ceil_dyadic(const Rational& q, unsigned bits);

/// "m*2^e"
std::string to_string(const Dyadic& d);
Dyadic parse_dyadic(std::string_view text);

/// Certified real interval [lo, hi] with dyadic endpoints.
///
/// Sums, differences and products of dyadic endpoints are exact, so only
/// operations that leave the dyadics (division, rational scaling) round, and
/// they always round lo down and hi up.
class Enclosure {
 public:
  Enclosure() = default;
  /// Throws std::invalid_argument when lo > hi.
  Enclosure(Dyadic lo, Dyadic hi);
  static Enclosure point(Dyadic v) { return Enclosure(v, v); }
  /// Outward-rounded enclosure of q on a 2^-bits grid (a point when q is on the grid).
  static Enclosure from_rational(const Rational& q, unsigned bits);

  const Dyadic& lo() const { return lo_; }
  const Dyadic& hi() const { return hi_; }
  Rational width() const { return (hi_ - lo_).to_rational(); }
  bool is_point() const { return lo_ == hi_; }

  bool contains(const Rational& q) const { return compare(lo_, q) <= 0 && compare(hi_, q) >= 0; }
  bool contains_zero() const { return lo_.sign() <= 0 && hi_.sign() >= 0; }
  /// Whole enclosure strictly below / above q.
  bool below(const Rational& q) const { return compare(hi_, q) < 0; }
  bool above(const Rational& q) const { return compare(lo_, q) > 0; }
  bool below(const Enclosure& other) const { return hi_ < other.lo_; }

  friend Enclosure operator+(const Enclosure& x, const Enclosure& y) { return {x.lo_ + y.lo_, x.hi_ + y.hi_}; }
  friend Enclosure operator-(const Enclosure& x, const Enclosure& y) { return {x.lo_ - y.hi_, x.hi_ - y.lo_}; }
  friend Enclosure operator-(const Enclosure& x) { return {-x.hi_, -x.lo_}; }
  friend Enclosure operator*(const Enclosure& x, const Enclosure& y);
  friend bool operator==(const Enclosure& x, const Enclosure& y) { return x.lo_ == y.lo_ && x.hi_ == y.hi_; }

 private:
  Dyadic lo_;
  Dyadic hi_;
};

Enclosure operator+(const Enclosure& x, const Dyadic& d);
Enclosure operator*(const Dyadic& d, const Enclosure& x);

/// 1/x rounded outward to 2^-bits. Throws std::domain_error if x contains 0.
Enclosure reciprocal(const Enclosure& x, unsigned bits);
/// q*x rounded outward to 2^-bits.
Enclosure scale(const Rational& q, const Enclosure& x, unsigned bits);

/// [lo, hi] with lo^2 <= x <= hi^2 and hi - lo <= 2^-precision_bits.
/// Degenerate when sqrt(x) is itself a multiple of 2^-precision_bits.
/// Throws std::domain_error on negative x.
Enclosure sqrt_enclosure(const Rational& x, unsigned precision_bits);

/// Outcome of a certified check evaluated in enclosure arithmetic.
enum class Certainty { certified, inconclusive, refuted };

std::string_view to_string(Certainty c);

constexpr unsigned kDefaultPrecisionBits = 64;
constexpr unsigned kMaxPrecisionBits = 1024;

/// Re-runs fn at doubled precision while its result is inconclusive, up to
/// kMaxPrecisionBits. fn(bits) must return a type with a `status` member.
template <typename Fn>
auto with_precision_ladder(unsigned start_bits, Fn&& fn) {
  unsigned bits = start_bits == 0 ? kDefaultPrecisionBits : start_bits;
  auto result = fn(bits);
  while (result.status == Certainty::inconclusive && bits * 2 <= kMaxPrecisionBits) {
    bits *= 2;
    result = fn(bits);
  }
  return result;
}

}  // namespace hypharm
