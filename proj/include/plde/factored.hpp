#pragma once

// Polynomials kept as unit * prod(prim_i ^ m_i) with canonical factors.

#include <plde/spread.hpp>

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

namespace plde {

/// How much we trust that a factor is irreducible.
enum class Irreducibility {
  unverified,  // neither declared nor proven
  declared,    // user says so
  verified,    // proven here (linear in some variable, or univariate quadratic)
};

inline const char* to_string(Irreducibility t) {
  switch (t) {
    case Irreducibility::unverified: return "unverified";
    case Irreducibility::declared: return "declared";
    case Irreducibility::verified: return "verified";
  }
  return "?";
}

/// True when irreducibility of a primitive non-constant p can be proven cheaply.
inline bool provably_irreducible(const Poly& p) {
  if (p.total_degree() == 1) return true;
  for (std::size_t x = 0; x < p.nvars(); ++x) {
    if (p.degree_in(x) != 1) continue;
    auto cs = detail::coeffs_in(p, x);
    if (gcd(cs[0], cs[1]).is_constant()) return true;
  }
  // univariate quadratic without rational roots
  std::size_t used = 0, var = 0;
  for (std::size_t x = 0; x < p.nvars(); ++x)
    if (p.involves(x)) ++used, var = x;
  if (used == 1 && p.degree_in(var) == 2) {
    auto cs = detail::coeffs_in(p, var);
    Rational disc = cs[1].constant_term() * cs[1].constant_term() - 4 * cs[2].constant_term() * cs[0].constant_term();
    if (disc < 0) return true;
    Integer rn, rd;
    mpz_sqrt(rn.get_mpz_t(), disc.get_num_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), disc.get_den_mpz_t());
    return rn * rn != disc.get_num() || rd * rd != disc.get_den();
  }
  return false;
}

struct Factor {
  Poly poly;  // canonical: integer primitive, positive leading coefficient, non-constant
  int multiplicity = 1;
  Irreducibility tag = Irreducibility::unverified;
};

class FactoredPoly {
 public:
  FactoredPoly() = default;
  explicit FactoredPoly(VarList vars, Rational unit = 1) : vars_(std::move(vars)), unit_(std::move(unit)) {}

  /// Canonicalizes the given factors: normalizes, absorbs constants, merges duplicates.
  FactoredPoly(VarList vars, Rational unit, std::vector<Factor> factors) : vars_(std::move(vars)), unit_(std::move(unit)) {
    if (unit_ == 0) throw InputError("factored polynomial with zero unit");
    for (auto& f : factors) insert(std::move(f));
  }

  static FactoredPoly one(const VarList& vars) { return FactoredPoly(vars); }

  /// A single factor, canonicalized.
  static FactoredPoly of(const Poly& p, int multiplicity = 1, Irreducibility tag = Irreducibility::unverified) {
    return FactoredPoly(p.vars(), 1, {Factor{p, multiplicity, tag}});
  }

  const VarList& vars() const { return vars_; }
  const Rational& unit() const { return unit_; }
  const std::vector<Factor>& factors() const { return factors_; }
  bool is_constant() const { return factors_.empty(); }

  Poly expand() const {
    Poly r = Poly::constant(vars_, unit_);
    for (const auto& f : factors_) r = r * f.poly.pow(static_cast<unsigned>(f.multiplicity));
    return r;
  }

  int multiplicity_of(const Poly& canonical) const {
    auto it = find(canonical);
    return it == factors_.end() ? 0 : it->multiplicity;
  }

  FactoredPoly with_unit(const Rational& u) const {
    FactoredPoly r = *this;
    r.unit_ = u;
    return r;
  }

  friend FactoredPoly operator*(const FactoredPoly& a, const FactoredPoly& b) {
    FactoredPoly r = a;
    r.unit_ *= b.unit_;
    for (const auto& f : b.factors_) r.insert(f);
    return r;
  }

  friend bool operator==(const FactoredPoly& a, const FactoredPoly& b) {
    if (!(a.unit_ == b.unit_) || a.factors_.size() != b.factors_.size()) return false;
    for (std::size_t i = 0; i < a.factors_.size(); ++i)
      if (a.factors_[i].poly != b.factors_[i].poly || a.factors_[i].multiplicity != b.factors_[i].multiplicity)
        return false;
    return true;
  }

  /// Shifted copy; the unit is kept, factors are re-canonicalized.
  template <class Vec>
  FactoredPoly shift(const Vec& s) const {
    FactoredPoly r(vars_, unit_);
    for (const auto& f : factors_) r.insert(Factor{f.poly.shift(s), f.multiplicity, f.tag});
    return r;
  }

  /// Applies a map to every factor (e.g. a linear substitution).
  template <class Fn>
  FactoredPoly map_factors(Fn&& fn, const VarList& target) const {
    FactoredPoly r(target, unit_);
    for (const auto& f : factors_) r.insert(Factor{fn(f.poly), f.multiplicity, f.tag});
    return r;
  }

  /// Keeps only factors satisfying pred; unit is set to 1.
  template <class Pred>
  FactoredPoly filter(Pred&& pred) const {
    FactoredPoly r(vars_);
    for (const auto& f : factors_)
      if (pred(f)) r.factors_.push_back(f);
    return r;
  }

  void insert(Factor f) {
    if (f.poly.is_zero()) throw InputError("zero factor");
    if (f.multiplicity < 0) throw InputError("negative multiplicity");
    if (f.multiplicity == 0) return;
    auto [u, prim] = normalize_primitive(f.poly);
    Rational scale = 1;
    for (int i = 0; i < f.multiplicity; ++i) scale *= u;
    unit_ *= scale;
    if (prim.is_constant()) return;
    f.poly = std::move(prim);
    if (f.tag != Irreducibility::verified && provably_irreducible(f.poly)) f.tag = Irreducibility::verified;
    auto it = std::lower_bound(factors_.begin(), factors_.end(), f.poly,
                               [](const Factor& a, const Poly& b) { return a.poly < b; });
    if (it != factors_.end() && it->poly == f.poly) {
      it->multiplicity += f.multiplicity;
      it->tag = std::max(it->tag, f.tag);
    } else {
      factors_.insert(it, std::move(f));
    }
  }

  void set_multiplicity(const Poly& canonical, int m) {
    auto it = std::lower_bound(factors_.begin(), factors_.end(), canonical,
                               [](const Factor& a, const Poly& b) { return a.poly < b; });
    if (it == factors_.end() || it->poly != canonical) throw std::logic_error("no such factor");
    if (m == 0)
      factors_.erase(it);
    else
      it->multiplicity = m;
  }

 private:
  std::vector<Factor>::const_iterator find(const Poly& p) const {
    auto it = std::lower_bound(factors_.begin(), factors_.end(), p,
                               [](const Factor& a, const Poly& b) { return a.poly < b; });
    return (it != factors_.end() && it->poly == p) ? it : factors_.end();
  }

  VarList vars_;
  Rational unit_ = 1;
  std::vector<Factor> factors_;
};

namespace detail {

template <class Combine>
FactoredPoly merge_factors(const FactoredPoly& a, const FactoredPoly& b, Combine combine) {
  FactoredPoly r(a.vars());
  std::vector<Factor> all;
  for (const auto& f : a.factors()) {
    int m = combine(f.multiplicity, b.multiplicity_of(f.poly));
    if (m > 0) all.push_back(Factor{f.poly, m, f.tag});
  }
  for (const auto& f : b.factors()) {
    if (a.multiplicity_of(f.poly) != 0) continue;
    int m = combine(0, f.multiplicity);
    if (m > 0) all.push_back(Factor{f.poly, m, f.tag});
  }
  for (auto& f : all) r.insert(std::move(f));
  return r;
}

}  // namespace detail

inline FactoredPoly fp_mul(const FactoredPoly& a, const FactoredPoly& b) { return a * b; }

inline FactoredPoly fp_gcd(const FactoredPoly& a, const FactoredPoly& b) {
  return detail::merge_factors(a, b, [](int x, int y) { return std::min(x, y); });
}

inline FactoredPoly fp_lcm(const FactoredPoly& a, const FactoredPoly& b) {
  return detail::merge_factors(a, b, [](int x, int y) { return std::max(x, y); });
}

/// b / a as factored objects when a's factors are a sub-multiset of b's.
inline std::optional<FactoredPoly> fp_divide(const FactoredPoly& b, const FactoredPoly& a) {
  FactoredPoly r = b.with_unit(b.unit() / a.unit());
  for (const auto& f : a.factors()) {
    int have = r.multiplicity_of(f.poly);
    if (have < f.multiplicity) return std::nullopt;
    r.set_multiplicity(f.poly, have - f.multiplicity);
  }
  return r;
}

template <class Vec>
FactoredPoly shift_fp(const FactoredPoly& fp, const Vec& s) {
  return fp.shift(s);
}

/// Factors u with Spread(u) ⊆ w; with drop_aperiodic also removes factors with Spread(u) = {0}.
inline FactoredPoly w_part(const FactoredPoly& fp, const IntLattice& w, bool drop_aperiodic) {
  return fp.filter([&](const Factor& f) {
    if (f.tag == Irreducibility::unverified)
      throw HypothesisError("factor " + format(f.poly) + " is not known to be irreducible");
    IntLattice spread = invariance_lattice(f.poly);
    if (drop_aperiodic && spread.is_zero()) return false;
    return spread.is_sublattice_of(w);
  });
}

/// "(n+k+1)*(3*n+2*k+1)^2", with a leading unit when it is not 1.
inline std::string format(const FactoredPoly& fp) {
  std::string s;
  if (fp.factors().empty()) return fp.unit().get_str();
  if (fp.unit() == -1)
    s = "-";
  else if (fp.unit() != 1)
    s = fp.unit().get_str() + "*";
  for (std::size_t i = 0; i < fp.factors().size(); ++i) {
    const auto& f = fp.factors()[i];
    if (i) s += "*";
    s += "(" + format(f.poly) + ")";
    if (f.multiplicity > 1) s += "^" + std::to_string(f.multiplicity);
  }
  return s;
}

}  // namespace plde
