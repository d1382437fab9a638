#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>

namespace pdecanon {

/// Arbitrary-precision rational, always kept canonical (reduced, positive denominator).
using Rational = mpq_class;

Rational make_rational(long numerator, long denominator = 1);

/// Accepts "p", "-p" or "p/q" with decimal integers. Throws Error(SyntaxError).
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& value);

/// Exact square root when `value` is the square of a rational.
std::optional<Rational> exact_sqrt(const Rational& value);

}  // namespace pdecanon
