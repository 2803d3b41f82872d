#pragma once

#include <gmpxx.h>

#include <string>

namespace urnlab {

// Exact arithmetic throughout the library is done on GMP rationals.
// mpq_class keeps values canonical (reduced, positive denominator).
using Rational = mpq_class;
using Integer = mpz_class;

// C(n, k); zero when k > n.
Integer binomial(unsigned long n, unsigned long k);

// x^e for e >= 0.
Rational pow(const Rational& x, unsigned long e);

// Parses "p/q" or "p" (arbitrary precision, optional sign). Throws
// ValidationError on malformed input or zero denominator.
Rational parse_fraction(const std::string& text);

// "p/q", or just "p" when the denominator is 1.
std::string fraction_string(const Rational& v);

// Decimal rendering with the given number of significant digits.
// Display only; never used for comparisons.
std::string decimal_string(const Rational& v, int significant_digits);

double to_double(const Rational& v);

// Exact dyadic rational equal to the given double. Rejects non-finite input.
Rational rational_from_double(double x);

// floor(v) and ceil(v) as integers.
Integer floor(const Rational& v);
Integer ceil(const Rational& v);

// Nearest double at 15 significant decimal digits; used for "approx"
// fields in machine-readable output.
double round_sig15(double x);

}  // namespace urnlab
