#pragma once

// Recursive-descent parser for the polynomial text grammar:
//
//   expr   := term (('+'|'-') term)*
//   term   := unary (('*'|'/') unary)*
//   unary  := ('+'|'-') unary | power
//   power  := atom ('^' UINT)*
//   atom   := INT | VAR | '(' expr ')'
//
// Division is accepted so that rational coefficients and rational functions
// can be written; implicit multiplication is not.

#include <plde/ratfunc.hpp>

#include <cctype>
#include <string>
#include <string_view>

namespace plde {

class ParseError : public InputError {
 public:
  ParseError(const std::string& msg, std::size_t pos)
      : InputError(msg + " at position " + std::to_string(pos)), pos_(pos) {}
  std::size_t position() const { return pos_; }

 private:
  std::size_t pos_;
};

namespace detail {

// num/den pair without gcd reduction while parsing
struct Fraction {
  Poly num, den;
};

class Parser {
 public:
  Parser(std::string_view text, VarList vars) : text_(text), vars_(std::move(vars)) {}

  Fraction parse() {
    Fraction f = expr();
    skip_ws();
    if (pos_ != text_.size()) fail(std::string("unexpected '") + text_[pos_] + "'");
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Fraction constant(const Rational& c) const { return {Poly::constant(vars_, c), Poly::constant(vars_, 1)}; }

  Fraction expr() {
    Fraction acc = term();
    while (true) {
      bool plus = accept('+');
      if (!plus && !accept('-')) return acc;
      Fraction t = term();
      if (!plus) t.num = -t.num;
      if (acc.den == t.den)
        acc.num += t.num;
      else
        acc = {acc.num * t.den + t.num * acc.den, acc.den * t.den};
    }
  }

  Fraction term() {
    Fraction acc = unary();
    while (true) {
      if (accept('*')) {
        Fraction f = unary();
        acc = {acc.num * f.num, acc.den * f.den};
      } else if (accept('/')) {
        std::size_t at = pos_;
        Fraction f = unary();
        if (f.num.is_zero()) throw ParseError("division by zero", at);
        acc = {acc.num * f.den, acc.den * f.num};
      } else {
        return acc;
      }
    }
  }

  Fraction unary() {
    if (accept('-')) {
      Fraction f = unary();
      f.num = -f.num;
      return f;
    }
    if (accept('+')) return unary();
    return power();
  }

  Fraction power() {
    Fraction base = atom();
    while (accept('^')) {
      skip_ws();
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_) fail("expected non-negative integer exponent");
      unsigned long k = std::stoul(std::string(text_.substr(start, pos_ - start)));
      if (k > 1000) throw ParseError("exponent too large", start);
      base = {base.num.pow(static_cast<unsigned>(k)), base.den.pow(static_cast<unsigned>(k))};
    }
    return base;
  }

  Fraction atom() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Fraction f = expr();
      if (!accept(')')) fail("expected ')'");
      return f;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      return constant(Rational(Integer(std::string(text_.substr(start, pos_ - start)))));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      std::string name(text_.substr(start, pos_ - start));
      auto idx = vars_.index_of(name);
      if (idx < 0) throw ParseError("unknown variable '" + name + "'", start);
      return {Poly::variable(vars_, static_cast<std::size_t>(idx)), Poly::constant(vars_, 1)};
    }
    fail(std::string("unexpected '") + c + "'");
  }

  std::string_view text_;
  VarList vars_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses a polynomial; division is only allowed by nonzero constants.
inline Poly parse_poly(std::string_view text, const VarList& vars) {
  auto f = detail::Parser(text, vars).parse();
  if (!f.den.is_constant()) throw InputError("expected a polynomial, got a rational function: '" + std::string(text) + "'");
  return f.num * Rational(1 / f.den.constant_term());
}

inline RationalFunction parse_rational_function(std::string_view text, const VarList& vars) {
  auto f = detail::Parser(text, vars).parse();
  return RationalFunction(f.num, f.den);
}

}  // namespace plde
