#pragma once

#include <gmpxx.h>

#include <string>

namespace riccitype {

using Integer = mpz_class;

/// Canonical arbitrary-precision fraction (positive denominator, reduced).
using Rational = mpq_class;

/// Builds num/den in canonical form. Throws ParameterError when den == 0.
Rational make_rational(long long num, long long den = 1);
Rational make_rational(const Integer& num, const Integer& den);

/// "p/q", or "p" when the denominator is one.
std::string to_string(const Rational& r);

/// Parses "p", "-p" or "p/q".
Rational parse_rational(const std::string& text);

}  // namespace riccitype
