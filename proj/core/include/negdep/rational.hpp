#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <string_view>

namespace negdep {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Exact binary value of a finite double (no rounding).
Rational rational_from_double(double x);

double to_double(const Rational& r);

/// floor(x * scale) for x >= 0.
BigInt floor_scaled(const Rational& x, const BigInt& scale);

/// b^e as an exact integer. e >= 0.
BigInt int_pow(std::uint64_t base, unsigned exp);

/// Parses "p/q", integers, plain decimals ("0.51") and scientific decimals
/// ("1e-3", "2.5E-4") into exact rationals. Throws std::invalid_argument.
Rational parse_rational(std::string_view token);

/// Canonical "p/q" spelling; the denominator is kept even when it is 1, so
/// exact values survive a round trip through the point-set text format.
std::string format_rational(const Rational& r);

/// Shortest decimal that round-trips to the same double.
std::string format_double(double x);

}  // namespace negdep
