#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <string>
#include <string_view>

namespace bjlevel {

using Rational = boost::multiprecision::mpq_rational;

/// Parses "p/q", an integer, or a finite decimal ("0.25", "-1.5e-2") into an
/// exact rational. Throws Error(MalformedInput) on anything else.
Rational parse_rational(std::string_view text);

/// Canonical text form: "p" for integers, "p/q" otherwise (q > 0, reduced).
std::string to_string(const Rational& value);

inline double to_double(const Rational& value) {
  return value.convert_to<double>();
}

inline Rational abs(const Rational& value) { return value < 0 ? Rational(-value) : value; }

inline int sign(const Rational& value) { return value < 0 ? -1 : (value > 0 ? 1 : 0); }

}  // namespace bjlevel
