#pragma once

/**
 * @file expr.hpp
 * @brief Parser for element expressions and curve strings.
 *
 * Grammar (whitespace ignored):
 *   expr   := term (('+' | '-') term)*
 *   term   := unary (('*' | '/') unary)*
 *   unary  := '-' unary | power
 *   power  := atom ('^' '-'? integer)*
 *   atom   := integer | 'x' | 'y' | '(' expr ')'
 */

#include <cctype>
#include <string>
#include <string_view>

#include "ffspace/curve.hpp"

namespace ffspace {

namespace detail {

/// "line L, column C" for a byte offset.
inline std::string position(std::string_view text, std::size_t pos) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < pos && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

template <class F>
class ExprParser {
 public:
  using Elem = Element<F>;

  ExprParser(CurvePtr<F> c, std::string_view text) : curve_(std::move(c)), s_(text) {}

  Elem parse() {
    Elem r = expr();
    skip();
    if (i_ != s_.size()) fail("unexpected '" + std::string(1, s_[i_]) + "'");
    return r;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw InputError("expression syntax error at " + position(s_, i_) + ": " + msg + " in \"" + std::string(s_) + "\"");
  }

  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool eat(char ch) {
    skip();
    if (i_ < s_.size() && s_[i_] == ch) {
      ++i_;
      return true;
    }
    return false;
  }

  Elem expr() {
    Elem r = term();
    for (;;) {
      if (eat('+'))
        r = r + term();
      else if (eat('-'))
        r = r - term();
      else
        return r;
    }
  }

  Elem term() {
    Elem r = unary();
    for (;;) {
      if (eat('*')) {
        r = r * unary();
      } else if (eat('/')) {
        const std::size_t at = i_;
        Elem d = unary();
        if (d.is_zero()) {
          i_ = at;
          fail("division by zero");
        }
        r = r / d;
      } else {
        return r;
      }
    }
  }

  Elem unary() {
    if (eat('-')) return -unary();
    return power();
  }

  Elem power() {
    Elem r = atom();
    while (eat('^')) {
      const bool neg = eat('-');
      skip();
      const std::size_t start = i_;
      while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
      if (start == i_) fail("expected an integer exponent");
      if (i_ - start > 4) fail("exponent too large");
      int e = std::stoi(std::string(s_.substr(start, i_ - start)));
      if (neg) {
        if (r.is_zero()) fail("negative power of zero");
        e = -e;
      }
      r = r.pow(e);
    }
    return r;
  }

  Elem atom() {
    skip();
    if (i_ >= s_.size()) fail("unexpected end of input");
    const char ch = s_[i_];
    if (ch == '(') {
      ++i_;
      Elem r = expr();
      if (!eat(')')) fail("expected ')'");
      return r;
    }
    if (ch == 'x') {
      ++i_;
      return Elem::x(curve_);
    }
    if (ch == 'y') {
      if (curve_->is_rational()) fail("'y' is not available on the rational curve");
      ++i_;
      return Elem::y(curve_);
    }
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      const std::size_t start = i_;
      while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
      return Elem::constant(curve_, curve_->field().from_decimal(s_.substr(start, i_ - start)));
    }
    fail("unexpected '" + std::string(1, ch) + "'");
  }

  CurvePtr<F> curve_;
  std::string_view s_;
  std::size_t i_ = 0;
};

}  // namespace detail

template <class F>
Element<F> parse_element(const CurvePtr<F>& c, std::string_view text) {
  return detail::ExprParser<F>(c, text).parse();
}

/// A polynomial in x over the field.
template <class F>
Poly<typename F::Elem> parse_poly(const F& field, std::string_view text) {
  const auto line = Curve<F>::rational(field);
  const auto e = parse_element(line, text);
  if (!e.a().is_polynomial()) throw InputError("expected a polynomial in x, got \"" + std::string(text) + "\"");
  return e.a().num();
}

/// "rational" or "y^2 = <polynomial in x>".
template <class F>
CurvePtr<F> parse_curve(const F& field, std::string_view text) {
  std::string t;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) t += ch;
  if (t == "rational") return Curve<F>::rational(field);
  if (t.rfind("y^2=", 0) == 0) {
    const auto eq = text.find('=');
    return Curve<F>::quadratic(field, parse_poly(field, text.substr(eq + 1)));
  }
  throw InputError("curve must be \"rational\" or \"y^2 = <poly in x>\", got \"" + std::string(text) + "\"");
}

}  // namespace ffspace
