#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <string>
#include <string_view>

#include "motivic/error.hpp"

namespace motivic {

using Integer = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>, boost::multiprecision::et_off>;
// cpp_rational keeps numerator/denominator coprime with a positive denominator.
using Rational = boost::multiprecision::number<boost::multiprecision::cpp_rational_backend, boost::multiprecision::et_off>;

inline Integer numerator(const Rational& q) { return boost::multiprecision::numerator(q); }
inline Integer denominator(const Rational& q) { return boost::multiprecision::denominator(q); }

inline bool is_integer(const Rational& q) { return denominator(q) == 1; }

inline Integer floor(const Rational& q) {
  Integer n = numerator(q);
  Integer d = denominator(q);
  Integer f = n / d;  // truncates toward zero
  if (n < 0 && f * d != n) --f;
  return f;
}

/// Fractional part in [0, 1).
inline Rational frac(const Rational& q) { return q - Rational(floor(q)); }

inline Integer gcd(const Integer& a, const Integer& b) {
  return boost::multiprecision::gcd(a, b);
}

inline Integer lcm(const Integer& a, const Integer& b) {
  if (a == 0 || b == 0) return 0;
  return boost::multiprecision::lcm(a, b);
}

/// "p" for integers, "p/q" otherwise.
inline std::string to_string(const Rational& q) {
  if (is_integer(q)) return numerator(q).str();
  return numerator(q).str() + "/" + denominator(q).str();
}

inline Integer parse_integer(std::string_view text) {
  std::size_t i = 0;
  bool negative = false;
  if (i < text.size() && (text[i] == '-' || text[i] == '+')) {
    negative = text[i] == '-';
    ++i;
  }
  if (i == text.size()) throw Error(ErrorCode::ParseError, "empty integer '" + std::string(text) + "'");
  Integer value = 0;
  for (; i < text.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(text[i])))
      throw Error(ErrorCode::ParseError, "bad integer '" + std::string(text) + "'");
    value = value * 10 + (text[i] - '0');
  }
  return negative ? Integer(-value) : value;
}

/// Accepts "p", "p/q", "-p/q" with optional surrounding blanks.
inline Rational parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(text));
  Integer num = parse_integer(text.substr(0, slash));
  Integer den = parse_integer(text.substr(slash + 1));
  if (den == 0) throw Error(ErrorCode::ZeroDenominator, "rational '" + std::string(text) + "'");
  return Rational(num, den);
}

}  // namespace motivic
