#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace bohrwave {

/// Exact rational arithmetic, used where integrality is the question being asked.
using Rational = boost::multiprecision::cpp_rational;

/// Parses "7", "-3/2", "137.035999", "1/137.035999" or "1.5e-3" exactly.
/// Throws Error(invalid_argument) on malformed input or a zero denominator.
Rational parse_rational(std::string_view text);

Rational make_rational(std::int64_t num, std::int64_t den);

double to_double(const Rational& q);

bool is_integer(const Rational& q);

/// Distance to the nearest integer.
Rational distance_to_integer(const Rational& q);

/// "p/q" or "p" when the denominator is one.
std::string to_string(const Rational& q);

/// Exact decimal when the denominator has only factors 2 and 5, "p/q" otherwise.
std::string to_decimal_string(const Rational& q);

}  // namespace bohrwave
