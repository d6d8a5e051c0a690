#pragma once

// Sparse multivariate polynomials over Q with a fixed graded-lex term order.

#include <plde/rational.hpp>

#include <algorithm>
#include <map>
#include <memory>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

namespace plde {

/// Ordered list of variable names shared between polynomials of one ring.
class VarList {
 public:
  VarList() : names_(std::make_shared<const std::vector<std::string>>()) {}
  explicit VarList(std::vector<std::string> names) {
    for (std::size_t i = 0; i < names.size(); ++i)
      for (std::size_t j = i + 1; j < names.size(); ++j)
        if (names[i] == names[j]) throw InputError("duplicate variable name '" + names[i] + "'");
    names_ = std::make_shared<const std::vector<std::string>>(std::move(names));
  }

  std::size_t size() const { return names_->size(); }
  const std::string& operator[](std::size_t i) const { return (*names_)[i]; }
  const std::vector<std::string>& names() const { return *names_; }

  std::ptrdiff_t index_of(const std::string& name) const {
    for (std::size_t i = 0; i < names_->size(); ++i)
      if ((*names_)[i] == name) return static_cast<std::ptrdiff_t>(i);
    return -1;
  }

  friend bool operator==(const VarList& a, const VarList& b) {
    return a.names_ == b.names_ || *a.names_ == *b.names_;
  }

 private:
  std::shared_ptr<const std::vector<std::string>> names_;
};

using ExpVec = std::vector<unsigned>;

inline unsigned total_degree(const ExpVec& e) { return std::accumulate(e.begin(), e.end(), 0u); }

/// Graded lexicographic order, largest first; earlier variables dominate.
struct GradedLexGreater {
  bool operator()(const ExpVec& a, const ExpVec& b) const {
    unsigned da = total_degree(a), db = total_degree(b);
    if (da != db) return da > db;
    return a > b;
  }
};

inline bool divides(const ExpVec& a, const ExpVec& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

class Poly {
 public:
  using TermMap = std::map<ExpVec, Rational, GradedLexGreater>;

  Poly() = default;
  explicit Poly(VarList vars) : vars_(std::move(vars)) {}

  static Poly constant(const VarList& vars, const Rational& c) {
    Poly p(vars);
    p.add_term(ExpVec(vars.size(), 0), c);
    return p;
  }

  static Poly variable(const VarList& vars, std::size_t i) {
    ExpVec e(vars.size(), 0);
    e.at(i) = 1;
    Poly p(vars);
    p.add_term(e, 1);
    return p;
  }

  /// Linear form sum_i coeffs[i]*n_i + c.
  static Poly linear(const VarList& vars, const std::vector<Rational>& coeffs, const Rational& c = 0) {
    Poly p = constant(vars, c);
    for (std::size_t i = 0; i < coeffs.size(); ++i)
      if (coeffs[i] != 0) p.add_term(unit_exp(vars.size(), i), coeffs[i]);
    return p;
  }

  const VarList& vars() const { return vars_; }
  std::size_t nvars() const { return vars_.size(); }
  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && plde::total_degree(terms_.begin()->first) == 0); }

  Rational constant_term() const {
    auto it = terms_.find(ExpVec(nvars(), 0));
    return it == terms_.end() ? Rational(0) : it->second;
  }

  /// -1 for the zero polynomial.
  int total_degree() const { return terms_.empty() ? -1 : static_cast<int>(plde::total_degree(terms_.begin()->first)); }

  unsigned degree_in(std::size_t var) const {
    unsigned d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, e[var]);
    return d;
  }

  bool involves(std::size_t var) const { return degree_in(var) > 0; }

  const ExpVec& leading_exp() const { return terms_.begin()->first; }
  const Rational& leading_coeff() const { return terms_.begin()->second; }

  Rational coeff(const ExpVec& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  void add_term(const ExpVec& e, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  Poly homogeneous_part(int degree) const {
    Poly r(vars_);
    for (const auto& [e, c] : terms_)
      if (static_cast<int>(plde::total_degree(e)) == degree) r.terms_.emplace_hint(r.terms_.end(), e, c);
    return r;
  }

  Poly derivative(std::size_t var) const {
    Poly r(vars_);
    for (const auto& [e, c] : terms_) {
      if (e[var] == 0) continue;
      ExpVec f = e;
      --f[var];
      r.add_term(f, c * e[var]);
    }
    return r;
  }

  Poly operator-() const {
    Poly r = *this;
    for (auto& [e, c] : r.terms_) c = -c;
    return r;
  }

  Poly& operator+=(const Poly& o) {
    check_ring(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    check_ring(o);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  Poly& operator*=(const Rational& s) {
    if (s == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [e, c] : terms_) c *= s;
    return *this;
  }

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(Poly a, const Rational& s) { return a *= s; }
  friend Poly operator*(const Rational& s, Poly a) { return a *= s; }

  friend Poly operator*(const Poly& a, const Poly& b) {
    a.check_ring(b);
    Poly r(a.vars_);
    ExpVec e(a.nvars());
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) {
        for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
        r.add_term(e, ca * cb);
      }
    return r;
  }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }

  Poly pow(unsigned k) const {
    Poly result = constant(vars_, 1), base = *this;
    while (k) {
      if (k & 1u) result *= base;
      k >>= 1;
      if (k) base = base * base;
    }
    return result;
  }

  friend bool operator==(const Poly& a, const Poly& b) { return a.vars_ == b.vars_ && a.terms_ == b.terms_; }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  /// Canonical total order: by degree, then term by term from the top.
  friend bool operator<(const Poly& a, const Poly& b) {
    if (a.total_degree() != b.total_degree()) return a.total_degree() < b.total_degree();
    auto ia = a.terms_.begin(), ib = b.terms_.begin();
    GradedLexGreater gt;
    for (; ia != a.terms_.end() && ib != b.terms_.end(); ++ia, ++ib) {
      if (ia->first != ib->first) return gt(ib->first, ia->first);
      if (ia->second != ib->second) return ia->second < ib->second;
    }
    return ia == a.terms_.end() && ib != b.terms_.end();
  }

  Rational eval(const std::vector<Rational>& point) const {
    if (point.size() != nvars()) throw InputError("evaluation point has wrong length");
    Rational sum = 0;
    for (const auto& [e, c] : terms_) {
      Rational t = c;
      for (std::size_t i = 0; i < e.size(); ++i)
        for (unsigned j = 0; j < e[i]; ++j) t *= point[i];
      sum += t;
    }
    return sum;
  }

  /// p(n + s) for a rational shift vector.
  Poly shift(const std::vector<Rational>& s) const {
    if (s.size() != nvars()) throw InputError("shift vector has wrong length");
    Poly cur = *this;
    for (std::size_t v = 0; v < s.size(); ++v) {
      if (s[v] == 0) continue;
      Poly next(vars_);
      for (const auto& [e, c] : cur.terms_) {
        // (x+a)^k = sum_j binom(k,j) a^(k-j) x^j
        unsigned k = e[v];
        Integer binom = 1;
        std::vector<Rational> apow(k + 1);
        apow[0] = 1;
        for (unsigned j = 1; j <= k; ++j) apow[j] = apow[j - 1] * s[v];
        ExpVec f = e;
        for (unsigned j = 0; j <= k; ++j) {
          f[v] = j;
          next.add_term(f, c * Rational(binom) * apow[k - j]);
          binom = binom * (k - j) / (j + 1);
        }
      }
      cur = std::move(next);
    }
    return cur;
  }

  Poly shift(const std::vector<std::int64_t>& s) const {
    std::vector<Rational> q;
    q.reserve(s.size());
    for (auto x : s) q.emplace_back(static_cast<long>(x));
    return shift(q);
  }

  /// Substitutes n_i -> images[i]; images must live in a common ring.
  Poly substitute(const std::vector<Poly>& images) const {
    if (images.size() != nvars()) throw InputError("substitution has wrong number of images");
    VarList target = images.empty() ? vars_ : images.front().vars();
    Poly result(target);
    std::vector<std::vector<Poly>> powers(images.size());
    for (std::size_t i = 0; i < images.size(); ++i) powers[i].push_back(constant(target, 1));
    for (const auto& [e, c] : terms_) {
      Poly t = constant(target, c);
      for (std::size_t i = 0; i < e.size(); ++i) {
        while (powers[i].size() <= e[i]) powers[i].push_back(powers[i].back() * images[i]);
        if (e[i]) t = t * powers[i][e[i]];
      }
      result += t;
    }
    return result;
  }

  /// Substitutes n -> A n, i.e. n_i -> sum_j A[i][j] n_j.
  template <class Matrix>
  Poly substitute_linear(const Matrix& a) const {
    std::vector<Poly> images;
    for (std::size_t i = 0; i < nvars(); ++i) {
      std::vector<Rational> row;
      for (std::size_t j = 0; j < nvars(); ++j) row.emplace_back(a[i][j]);
      images.push_back(linear(vars_, row));
    }
    return substitute(images);
  }

  static ExpVec unit_exp(std::size_t r, std::size_t i) {
    ExpVec e(r, 0);
    e[i] = 1;
    return e;
  }

  void check_ring(const Poly& o) const {
    if (!(vars_ == o.vars_)) throw InputError("polynomials live in different variable lists");
  }

 private:
  VarList vars_;
  TermMap terms_;
};

/// Human-readable form in the input grammar, e.g. "3*n^2-k+1".
inline std::string format(const Poly& p) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [e, c] : p.terms()) {
    Rational a = abs(c);
    bool constant = total_degree(e) == 0;
    if (c < 0)
      out += "-";
    else if (!first)
      out += "+";
    std::string mono;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += p.vars()[i];
      if (e[i] > 1) mono += "^" + std::to_string(e[i]);
    }
    if (constant)
      out += a.get_str();
    else if (a == 1)
      out += mono;
    else
      out += a.get_str() + "*" + mono;
    first = false;
  }
  return out;
}

}  // namespace plde
