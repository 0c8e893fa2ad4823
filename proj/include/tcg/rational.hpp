#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace tcg {

/// Exact arbitrary-precision fraction, always kept in lowest terms with a
/// positive denominator (GMP canonicalizes after every arithmetic operation).
using Rational = mpq_class;

/// Parses "p", "-p" or "p/q" (q > 0, decimal digits only). The result is canonical.
/// Throws FormatError on anything else, including decimal points and a zero denominator.
Rational parse_rational(std::string_view text);

/// Formats as "p" when the denominator is 1, else "p/q". Never emits decimals.
std::string to_string(const Rational& value);

/// num/den in lowest terms. mpq_class(num, den) does not reduce, so always build
/// fractions through this. Throws DomainError when den is 0.
Rational fraction(long num, long den);

Rational factorial(unsigned k);

}  // namespace tcg
