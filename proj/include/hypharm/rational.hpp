#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace hypharm {

using BigInt = mpz_class;

// mpq_class arithmetic keeps results in lowest terms with a positive
// denominator, which comparisons rely on. Its two-argument constructors do
// not reduce, so fractions are built with make_rational.
using Rational = mpq_class;

/// Builds num/den in canonical form. Throws std::invalid_argument on den == 0.
Rational make_rational(const BigInt& num, const BigInt& den);

static_assert(sizeof(unsigned long) == 8, "LP64 platform expected");

inline BigInt to_big(std::uint64_t v) { return BigInt(static_cast<unsigned long>(v)); }

BigInt pow(const BigInt& base, unsigned long exponent);
Rational pow(const Rational& base, unsigned long exponent);

/// "num/den", always with the slash, e.g. "5/1".
std::string to_string(const Rational& q);
std::string to_string(const BigInt& z);

/// Parses "num/den" or a bare integer. Throws std::invalid_argument.
Rational parse_rational(std::string_view text);

inline int sign(const Rational& q) { return sgn(q); }

}  // namespace hypharm
