#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

namespace treetopo {

using Rat = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// Parses "p", "p/q" or a plain decimal literal like "0.25" into an exact
// rational. Throws std::invalid_argument on malformed input or q == 0.
Rat parse_rational(std::string_view text);

// "p/q", or just "p" when the value is an integer.
std::string format_rational(const Rat& value);

// Fixed four decimal places, round half to even. Presentation only; every
// stored quantity stays rational.
std::string format_decimal4(const Rat& value);

}  // namespace treetopo
