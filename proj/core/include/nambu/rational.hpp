#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>

namespace nambu {

using Rational = mpq_class;

// Parses "12", "-3/4", "0.125", "1e-3", "2.5E+2" exactly. Returns nullopt on
// malformed input or a zero denominator.
std::optional<Rational> parse_rational(std::string_view text);

// Exact rational equal to the shortest decimal representation that
// round-trips `value` (0.1 -> 1/10). `value` must be finite.
Rational rational_from_double(double value);

// "3", "-1/2".
std::string to_string(const Rational& value);

bool is_integer(const Rational& value);

}  // namespace nambu
