#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>
#include <string_view>

namespace symba {

// Numbers are exact rationals so that decimal money values compare by value
// (7.5 == 7.50) and chained arithmetic never accumulates rounding error.
using Rational = boost::multiprecision::cpp_rational;

// Accepts plain decimals ("36", "7.5", "-0.25") plus the exact-ratio form
// "1r3" used to print values whose decimal expansion does not terminate.
std::optional<Rational> parse_number(std::string_view text);

// Terminating decimals print as decimals; everything else prints as
// numerator `r` denominator so that parse_number(format_number(x)) == x.
std::string format_number(const Rational& value);

}  // namespace symba
