#pragma once

#include <cctype>
#include <string>
#include <string_view>

#include "motivic/ratfunc.hpp"

namespace motivic {

namespace detail {

// Recursive-descent reader for the canonical text form. Accepts + - * / ^,
// parentheses, non-negative integer literals and identifiers
// [A-Za-z][A-Za-z0-9_]*. Exponents are (optionally signed) integers.
class ExprParser {
 public:
  explicit ExprParser(std::string_view text) : text_(text) {}

  RatFunc parse() {
    RatFunc r = expr();
    skip();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return r;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorCode::ParseError,
                what + " at position " + std::to_string(pos_) + " in '" + std::string(text_) + "'");
  }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  RatFunc expr() {
    RatFunc acc = term();
    for (;;) {
      if (eat('+'))
        acc = acc + term();
      else if (eat('-'))
        acc = acc - term();
      else
        return acc;
    }
  }

  RatFunc term() {
    RatFunc acc = unary();
    for (;;) {
      if (eat('*'))
        acc = acc * unary();
      else if (eat('/'))
        acc = acc / unary();
      else
        return acc;
    }
  }

  RatFunc unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    return power();
  }

  RatFunc power() {
    RatFunc base = atom();
    if (eat('^')) {
      skip();
      bool negative = eat('-');
      skip();
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_) fail("expected integer exponent");
      if (pos_ - start > 6) fail("exponent too large");
      int k = std::stoi(std::string(text_.substr(start, pos_ - start)));
      return base.pow(negative ? -k : k);
    }
    return base;
  }

  RatFunc atom() {
    skip();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      RatFunc r = expr();
      if (!eat(')')) fail("expected ')'");
      return r;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      return RatFunc(Rational(parse_integer(text_.substr(start, pos_ - start))));
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      return RatFunc(MPoly::var(std::string(text_.substr(start, pos_ - start))));
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline RatFunc parse_ratfunc(std::string_view text) { return detail::ExprParser(text).parse(); }

/// Polynomial text; division is allowed only by constants.
inline MPoly parse_poly(std::string_view text) {
  RatFunc r = parse_ratfunc(text);
  if (!r.is_polynomial())
    throw Error(ErrorCode::ParseError, "'" + std::string(text) + "' is not a polynomial");
  return r.numer().scaled(Rational(1) / r.denom().constant_term());
}

}  // namespace motivic
