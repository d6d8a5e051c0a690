#pragma once

#include <plde/gcd.hpp>

#include <string>

namespace plde {

/// Element of Q(n) kept as num/den with gcd 1 and a normalized denominator.
class RationalFunction {
 public:
  RationalFunction() = default;
  explicit RationalFunction(const Poly& num) : num_(num), den_(Poly::constant(num.vars(), 1)) {}
  RationalFunction(const Poly& num, const Poly& den) : num_(num), den_(den) {
    if (den.is_zero()) throw InputError("rational function with zero denominator");
    num.check_ring(den);
    reduce();
  }

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  const VarList& vars() const { return num_.vars(); }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.is_constant(); }

  RationalFunction operator-() const { return unreduced(-num_, den_); }

  friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
    if (a.den_ == b.den_) return RationalFunction(a.num_ + b.num_, a.den_);
    return RationalFunction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) { return a + (-b); }
  friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
    return RationalFunction(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
    if (b.is_zero()) throw InputError("division by zero rational function");
    return RationalFunction(a.num_ * b.den_, a.den_ * b.num_);
  }

  friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  template <class Vec>
  RationalFunction shift(const Vec& s) const {
    auto [unit, prim] = normalize_primitive(den_.shift(s));
    return unreduced(num_.shift(s) * Rational(1 / unit), std::move(prim));
  }

  /// y(n) -> y(A n).
  template <class Matrix>
  RationalFunction substitute_linear(const Matrix& a) const {
    return RationalFunction(num_.substitute_linear(a), den_.substitute_linear(a));
  }

 private:
  // shifts and negation preserve reducedness
  static RationalFunction unreduced(Poly num, Poly den) {
    RationalFunction r;
    r.num_ = std::move(num);
    r.den_ = std::move(den);
    return r;
  }

  void reduce() {
    if (num_.is_zero()) {
      den_ = Poly::constant(num_.vars(), 1);
      return;
    }
    Poly g = gcd(num_, den_);
    if (!g.is_constant()) {
      num_ = divide_or_throw(num_, g);
      den_ = divide_or_throw(den_, g);
    }
    auto [unit, prim] = normalize_primitive(den_);
    den_ = std::move(prim);
    num_ *= Rational(1 / unit);
  }

  Poly num_;
  Poly den_;
};

inline std::string format(const RationalFunction& f) {
  if (f.is_polynomial()) return format(f.num());
  return "(" + format(f.num()) + ")/(" + format(f.den()) + ")";
}

}  // namespace plde
