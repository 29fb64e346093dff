#include "hypharm/rational.hpp"

#include <stdexcept>

namespace hypharm {

Rational make_rational(const BigInt& num, const BigInt& den) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

BigInt pow(const BigInt& base, unsigned long exponent) {
  BigInt out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exponent);
  return out;
}

Rational pow(const Rational& base, unsigned long exponent) {
  // Powers of a reduced fraction stay reduced.
  Rational out;
  mpz_pow_ui(out.get_num_mpz_t(), base.get_num_mpz_t(), exponent);
  mpz_pow_ui(out.get_den_mpz_t(), base.get_den_mpz_t(), exponent);
  return out;
}

std::string to_string(const BigInt& z) { return z.get_str(10); }

std::string to_string(const Rational& q) {
  return q.get_num().get_str(10) + "/" + q.get_den().get_str(10);
}

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  BigInt num, den{1};
  try {
    if (slash == std::string_view::npos) {
      num = BigInt(std::string(text), 10);
    } else {
      num = BigInt(std::string(text.substr(0, slash)), 10);
      den = BigInt(std::string(text.substr(slash + 1)), 10);
    }
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("malformed rational: " + std::string(text));
  }
  return make_rational(num, den);
}

}  // namespace hypharm
