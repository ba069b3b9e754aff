#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace graphlim {

/// Exact rational number. Every density, probability and certificate
/// coefficient in the library is one of these; doubles are views only.
using Rational = mpq_class;
using Integer = mpz_class;

/// "p/q" (or "p" for integers), the canonical textual form used in JSON.
std::string to_string(const Rational& q);

/// Accepts "p/q", "p", and finite decimal literals such as "-0.125".
Rational parse_rational(std::string_view text);

inline double to_double(const Rational& q) { return q.get_d(); }

Rational abs(const Rational& q);

/// Best rational approximation with denominator at most `max_denominator`
/// (continued-fraction convergents and semiconvergents).
Rational rationalize(double value, std::int64_t max_denominator);

/// Nearest multiple of 1/denominator.
Rational round_to_grid(double value, std::int64_t denominator);

Rational pow(const Rational& base, unsigned exponent);

}  // namespace graphlim
