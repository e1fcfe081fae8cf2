#pragma once

// Recursive-descent parser for the polynomial text format:
//   expr   := ['+'|'-'] term (('+'|'-') term)*
//   term   := factor ('*' factor)*
//   factor := base ('^' '-'? digits)?
//   base   := name | rational | '(' expr ')'
// Whitespace is ignored. x0,x1,x2 are read as x and y0,y1,y2 as y.

#include <cctype>
#include <map>
#include <string>
#include <string_view>

#include "rlab/errors.hpp"
#include "rlab/laurent_poly.hpp"
#include "rlab/rational.hpp"

namespace rlab {

using Bindings = std::map<std::string, Rational>;

namespace detail {

class PolyParser {
 public:
  static constexpr long max_exponent = 4096;

  PolyParser(std::string_view text, const Bindings& bindings) : s_(text), bind_(bindings) {}

  LaurentPoly run() {
    LaurentPoly p = expr();
    skip_ws();
    if (pos_ != s_.size()) fail("unexpected character '" + std::string(1, s_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  LaurentPoly expr() {
    skip_ws();
    bool neg = false;
    if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) neg = s_[pos_++] == '-';
    LaurentPoly acc = term();
    if (neg) acc = -acc;
    for (;;) {
      if (accept('+')) acc += term();
      else if (accept('-')) acc -= term();
      else return acc;
    }
  }

  LaurentPoly term() {
    LaurentPoly acc = factor();
    while (accept('*')) acc *= factor();
    return acc;
  }

  LaurentPoly factor() {
    LaurentPoly b = base();
    if (!accept('^')) return b;
    skip_ws();
    bool neg = false;
    if (pos_ < s_.size() && s_[pos_] == '-') {
      neg = true;
      ++pos_;
    }
    const std::size_t start = pos_;
    if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_]))) fail("expected exponent digits");
    long e = 0;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      e = e * 10 + (s_[pos_++] - '0');
      if (e > max_exponent) {
        pos_ = start;
        fail("exponent overflow (limit " + std::to_string(max_exponent) + ")");
      }
    }
    if (neg) e = -e;
    if (e < 0 && b.size() != 1) {
      pos_ = start;
      fail("negative power of a non-monomial");
    }
    return b.pow_signed(e);
  }

  LaurentPoly base() {
    skip_ws();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      LaurentPoly inner = expr();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return LaurentPoly::constant(rational());
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      const std::string name(s_.substr(start, pos_ - start));
      if (name == "x" || name == "x0" || name == "x1" || name == "x2") return LaurentPoly::variable("x");
      if (name == "y" || name == "y0" || name == "y1" || name == "y2") return LaurentPoly::variable("y");
      auto it = bind_.find(name);
      if (it == bind_.end()) {
        pos_ = start;
        fail("unbound parameter '" + name + "'");
      }
      return LaurentPoly::constant(it->second);
    }
    fail("unexpected character '" + std::string(1, c) + "'");
  }

  Rational rational() {
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    BigInt num(std::string(s_.substr(start, pos_ - start)));
    // '/' directly followed by digits belongs to the literal
    if (pos_ + 1 < s_.size() && s_[pos_] == '/' && std::isdigit(static_cast<unsigned char>(s_[pos_ + 1]))) {
      const std::size_t ds = ++pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      BigInt den(std::string(s_.substr(ds, pos_ - ds)));
      if (den == 0) {
        pos_ = ds;
        fail("zero denominator");
      }
      return Rational(num, den);
    }
    return Rational(num);
  }

  std::string_view s_;
  const Bindings& bind_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Parse a polynomial in x, y; names other than the variables must be bound.
inline LaurentPoly parse_poly(std::string_view text, const Bindings& bindings = {}) {
  return detail::PolyParser(text, bindings).run();
}

}  // namespace rlab
