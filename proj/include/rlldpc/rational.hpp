#pragma once

#include <boost/rational.hpp>
#include <cstdint>
#include <string>

namespace rlldpc {

// Exact arithmetic for ensemble coefficients and rate formulas. Decimal
// coefficients like 0.010625 must scale to integer node counts without drift,
// so they are never stored as floats.
using Rational = boost::rational<std::int64_t>;

// Parses "0.0225", "-1.5", "3", or "a/b" exactly. Throws std::invalid_argument.
Rational parse_rational(const std::string& text);

double to_double(const Rational& r);

// "17/1600" or "3" when the denominator is 1.
std::string format_rational(const Rational& r);

// round(r) to nearest integer, half away from zero
std::int64_t round_rational(const Rational& r);

}  // namespace rlldpc
