#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace prodiff {

/// Exact rational scalar. mpq_class keeps values canonical (den > 0, gcd 1)
/// after every arithmetic operation; values built from raw parts must go
/// through make_rational().
using Rational = mpq_class;
using Integer = mpz_class;

/// Malformed input (bad JSON, bad rational literal, unknown key).
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A documented precondition of a library operation was violated.
class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// An internal consistency check failed. Seeing this is a bug.
class InvariantError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

Rational make_rational(const Integer& num, const Integer& den);
Rational make_rational(std::int64_t num, std::int64_t den = 1);

/// Parses "<int>" or "<int>/<posint>". Non-canonical input such as "2/4" is
/// accepted and reduced.
Rational parse_rational(std::string_view text);

/// Canonical text: "p" when the denominator is 1, else "p/q".
std::string to_string(const Rational& value);

Integer factorial(unsigned n);
Rational pow(const Rational& base, unsigned exponent);
Rational abs(const Rational& value);

/// Rational upper bound r with r >= sqrt(value) and r - sqrt(value) <= 2^-bits.
Rational sqrt_upper(const Rational& value, unsigned bits = 64);

/// Smallest dyadic p/2^bits that is >= value.
Rational round_up_dyadic(const Rational& value, unsigned bits);

}  // namespace prodiff
