#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace fembed {

// Exact rational scalar. cpp_rational keeps the canonical form we require:
// numerator and denominator coprime, denominator positive, zero as 0/1.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// Parses "p/q" or "p" where p is an optionally signed integer and q a positive
// integer. Anything else (whitespace, signed denominator, q == 0) throws
// std::invalid_argument.
Rational parse_rational(const std::string& text);

// Canonical serialization, always "p/q" (e.g. "3/1", "-5/2", "0/1").
std::string rational_to_string(const Rational& r);

Rational rational_abs(const Rational& r);

// pow with integer exponent >= 0.
Rational rational_pow(const Rational& base, unsigned exp);

}  // namespace fembed
