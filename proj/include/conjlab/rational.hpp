#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace conjlab {

// Exact arbitrary-precision rational, the only scalar in the core modules.
// Always canonical: lowest terms, positive denominator.
using Rational = mpq_class;
using Integer = mpz_class;

Rational make_rational(long num, long den = 1);
Rational make_rational(const Integer& num, const Integer& den);

// Accepts "p/q" or an integer string (optional leading '-'); rejects
// decimals, exponents, whitespace and zero denominators.
Rational parse_rational(std::string_view s);

// Always renders with an explicit denominator, e.g. "1/1", "-2/5".
std::string fraction_str(const Rational& r);

// Fixed-point decimal with `digits` fractional digits, round half to even.
std::string decimal_str(const Rational& r, int digits = 30);

Rational pow_rational(const Rational& base, unsigned long e);
Integer pow2(unsigned long e);

}  // namespace conjlab
