#include "bjlevel/rational.hpp"

#include "bjlevel/error.hpp"

#include <cctype>
#include <cstdlib>

namespace bjlevel {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::DimensionMismatch: return "dimension_mismatch";
    case ErrorCode::MalformedInput: return "malformed_input";
    case ErrorCode::ZeroVector: return "zero_vector";
    case ErrorCode::NotUnitVector: return "not_unit_vector";
    case ErrorCode::NotPolyhedral: return "not_polyhedral";
    case ErrorCode::NotLevelVector: return "not_level_vector";
    case ErrorCode::DependentBasis: return "dependent_basis";
    case ErrorCode::NotSupporting: return "not_supporting_functional";
    case ErrorCode::MixedArithmetic: return "mixed_arithmetic";
    case ErrorCode::TooLarge: return "too_large";
    case ErrorCode::Internal: return "internal_error";
  }
  return "unknown";
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

// GMP's string constructor treats a leading zero as an octal prefix.
boost::multiprecision::mpz_int decimal_integer(std::string_view digits) {
  while (digits.size() > 1 && digits.front() == '0') digits.remove_prefix(1);
  return boost::multiprecision::mpz_int(std::string(digits));
}

Rational parse_integer(std::string_view s, std::string_view original) {
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) {
    throw Error(ErrorCode::MalformedInput,
                "not a rational number: '" + std::string(original) + "'");
  }
  boost::multiprecision::mpz_int z = decimal_integer(s);
  return negative ? Rational(-z) : Rational(z);
}

Rational pow10(long exponent) {
  boost::multiprecision::mpz_int ten = 1;
  for (long i = 0; i < (exponent < 0 ? -exponent : exponent); ++i) ten *= 10;
  return exponent < 0 ? Rational(1) / Rational(ten) : Rational(ten);
}

Rational parse_decimal(std::string_view s, std::string_view original) {
  long exponent = 0;
  if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    std::string exp_text(s.substr(e + 1));
    std::string_view digits = exp_text;
    if (!digits.empty() && (digits.front() == '-' || digits.front() == '+')) digits.remove_prefix(1);
    if (!all_digits(digits) || digits.size() > 4) {
      throw Error(ErrorCode::MalformedInput,
                  "not a rational number: '" + std::string(original) + "'");
    }
    exponent = std::strtol(exp_text.c_str(), nullptr, 10);
    s = s.substr(0, e);
  }
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  auto dot = s.find('.');
  std::string whole(s.substr(0, dot));
  std::string frac = dot == std::string_view::npos ? "" : std::string(s.substr(dot + 1));
  if ((whole.empty() && frac.empty()) || (!whole.empty() && !all_digits(whole)) ||
      (!frac.empty() && !all_digits(frac))) {
    throw Error(ErrorCode::MalformedInput,
                "not a rational number: '" + std::string(original) + "'");
  }
  boost::multiprecision::mpz_int mantissa = decimal_integer((whole.empty() ? "0" : whole) + frac);
  Rational value = Rational(mantissa) * pow10(exponent - static_cast<long>(frac.size()));
  return negative ? Rational(-value) : value;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = trim(text);
  if (s.empty()) throw Error(ErrorCode::MalformedInput, "empty rational literal");
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    Rational num = parse_integer(trim(s.substr(0, slash)), text);
    Rational den = parse_integer(trim(s.substr(slash + 1)), text);
    if (den == 0) throw Error(ErrorCode::MalformedInput, "zero denominator in '" + std::string(text) + "'");
    return num / den;
  }
  if (s.find_first_of(".eE") != std::string_view::npos) return parse_decimal(s, text);
  return parse_integer(s, text);
}

std::string to_string(const Rational& value) { return value.str(); }

}  // namespace bjlevel
