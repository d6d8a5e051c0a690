#pragma once

// Unimodular changes of variables.
//
// A substitution matrix A acts on functions by (A.y)(n) = y(A n), and
// A.(N^s y) = N^(A^-1 s) (A.y). Transforming an equation by the point map
// M = A^-1 sends the support point s to M s and substitutes n -> A n in
// every coefficient and in the right-hand side; y solves the original
// equation iff A.y solves the new one.

#include <plde/equation.hpp>
#include <plde/ratfunc.hpp>

namespace plde {

inline RationalFunction act_on_rational(const UnimodularMatrix& a, const RationalFunction& y) {
  if (a.size() != y.vars().size()) throw InputError("matrix size does not match the variable count");
  return y.substitute_linear(a.matrix());
}

/// Transformed equation under the point map M (support s -> M s).
inline Plde transform_equation(const Plde& eq, const UnimodularMatrix& m) {
  if (m.size() != eq.r()) throw InputError("matrix size does not match the variable count");
  const IntMat& a = m.inverse_matrix();
  std::map<IntVec, FactoredPoly> terms;
  for (const auto& [s, coeff] : eq.terms)
    terms.emplace(m.apply(s), coeff.map_factors([&](const Poly& p) { return p.substitute_linear(a); }, eq.vars));
  return Plde(eq.vars, std::move(terms), eq.rhs.substitute_linear(a));
}

/// Transformed equation for the substitution n -> A n; the solution becomes A.y.
inline Plde transform_by_substitution(const Plde& eq, const UnimodularMatrix& a) {
  return transform_equation(eq, a.inverse());
}

struct NormalizedFrame {
  UnimodularMatrix m;  // point transform; first row is the witness covector
  std::size_t t = 0;   // rank of the orthogonal complement of W
};

/// M with rows 1..t a basis of the orthogonal complement of W (row 1 = u) and
/// the remaining rows completing it unimodularly, so M W = {0}^t x Z^(r-t).
inline NormalizedFrame build_normalizing_frame(const IntLattice& w, const IntVec& u) {
  const std::size_t r = w.ambient();
  if (u.size() != r) throw InputError("witness has wrong length");
  if (!is_saturated(w)) throw HypothesisError("module " + format_lattice(w) + " is not saturated");
  IntLattice comp = orthogonal_complement(w);
  if (!comp.contains(u)) throw HypothesisError("witness (" + format_vec(u) + ") is not orthogonal to the module");
  const std::size_t t = comp.rank();
  // coordinates of u in the complement basis
  std::vector<std::vector<Rational>> rows(r, std::vector<Rational>(t));
  std::vector<Rational> rhs(r);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < t; ++j) rows[i][j] = static_cast<long>(comp.basis()[j][i]);
    rhs[i] = static_cast<long>(u[i]);
  }
  AffineSolution sol;
  if (!solve_affine(rows, rhs, t, sol)) throw std::logic_error("witness lies in the complement but has no coordinates");
  IntVec c;
  for (const auto& x : sol.particular) {
    if (!is_integer(x)) throw std::logic_error("non-integral coordinates in a saturated lattice");
    c.push_back(to_int64(x.get_num()));
  }
  if (gcd_of(c) != 1) throw HypothesisError("witness (" + format_vec(u) + ") is not primitive in the complement lattice");
  IntMat inner = unimodular_completion({c}, t).matrix();
  IntMat top = matmul(inner, comp.basis());
  return {unimodular_completion(top, r), t};
}

struct FirstShift {
  Plde eq;
  std::int64_t offset = 0;  // subtracted from every first coordinate
  std::int64_t k = 0;       // max first coordinate after the shift
};

/// Applies N_1^(-m) with m the least first coordinate; the solution is unchanged.
inline FirstShift normalize_first_shift(const Plde& eq) {
  std::int64_t lo = eq.terms.begin()->first[0], hi = lo;
  for (const auto& [s, a] : eq.terms) lo = std::min(lo, s[0]), hi = std::max(hi, s[0]);
  IntVec back(eq.r(), 0);
  back[0] = -lo;
  std::map<IntVec, FactoredPoly> terms;
  for (const auto& [s, a] : eq.terms) terms.emplace(s + back, a.shift(back));
  return {Plde(eq.vars, std::move(terms), eq.rhs.shift(back)), lo, checked_sub(hi, lo)};
}

}  // namespace plde
