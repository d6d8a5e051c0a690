#pragma once

// Shift equivalence of polynomials.
//
// For irreducible p, q the spread {s : gcd(p, N^s q) != 1} is the set of
// shifts making N^s q an associate of p. It is empty or a coset of the
// invariance lattice of q.
//
// Invariance: q(n+g) = q(n) for one real g forces q(n+tg) = q(n) for all t,
// so the invariance group is the kernel of g -> sum_i g_i dq/dn_i, a linear
// condition. Shift equivalence is solved one homogeneous layer at a time:
// after the layers above e are matched, the remaining freedom K annihilates
// every higher layer under the directional derivative, so layer e of
// q(n+s+k) equals Q_e + D_k Q_{e+1}, which is linear in k.

#include <plde/gcd.hpp>
#include <plde/lattice.hpp>

#include <set>

namespace plde {

namespace detail {

/// Integer rows of the linear map g -> sum_i g_i * polys[i], one per monomial.
inline IntMat monomial_rows(const std::vector<Poly>& polys) {
  std::set<ExpVec, GradedLexGreater> monos;
  for (const auto& p : polys)
    for (const auto& [e, c] : p.terms()) monos.insert(e);
  IntMat rows;
  for (const auto& m : monos) {
    std::vector<Rational> row;
    Integer den_lcm = 1;
    for (const auto& p : polys) {
      row.push_back(p.coeff(m));
      mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), row.back().get_den_mpz_t());
    }
    IntVec irow;
    for (const auto& x : row) {
      Rational y = x * den_lcm;
      irow.push_back(to_int64(y.get_num()));
    }
    rows.push_back(std::move(irow));
  }
  return rows;
}

}  // namespace detail

/// {g in Z^r : p(n+g) = p(n)}; equals Spread(p) for irreducible p.
inline IntLattice invariance_lattice(const Poly& p) {
  if (p.is_constant()) throw InputError("invariance lattice of a constant polynomial");
  std::vector<Poly> partials;
  for (std::size_t i = 0; i < p.nvars(); ++i) partials.push_back(p.derivative(i));
  return integer_kernel(detail::monomial_rows(partials), p.nvars());
}

inline bool is_aperiodic(const Poly& p) { return invariance_lattice(p).is_zero(); }

/// {s in Z^r : q(n+s) = c*p(n) for some constant c != 0}.
inline ShiftCoset shift_equiv(const Poly& p, const Poly& q) {
  p.check_ring(q);
  if (p.is_constant() || q.is_constant()) throw InputError("shift equivalence of constant polynomials");
  const std::size_t r = p.nvars();
  const int d = q.total_degree();
  if (p.total_degree() != d) return ShiftCoset::empty();
  Poly pd = p.homogeneous_part(d), qd = q.homogeneous_part(d);
  Rational c = qd.leading_coeff() / pd.leading_coeff();
  if (qd != pd * c) return ShiftCoset::empty();

  std::vector<Rational> s(r, Rational(0));
  std::vector<std::vector<Rational>> dirs;  // basis of remaining freedom
  for (std::size_t i = 0; i < r; ++i) {
    std::vector<Rational> e(r, Rational(0));
    e[i] = 1;
    dirs.push_back(e);
  }

  for (int e = d - 1; e >= 0; --e) {
    Poly shifted = q.shift(s);
    Poly upper = shifted.homogeneous_part(e + 1);
    Poly target = p.homogeneous_part(e) * c - shifted.homogeneous_part(e);
    std::vector<Poly> columns;
    for (const auto& k : dirs) {
      Poly dk(p.vars());
      for (std::size_t i = 0; i < r; ++i)
        if (k[i] != 0) dk += upper.derivative(i) * k[i];
      columns.push_back(std::move(dk));
    }
    std::set<ExpVec, GradedLexGreater> monos;
    for (const auto& col : columns)
      for (const auto& [m, x] : col.terms()) monos.insert(m);
    for (const auto& [m, x] : target.terms()) monos.insert(m);
    std::vector<std::vector<Rational>> rows;
    std::vector<Rational> rhs;
    for (const auto& m : monos) {
      std::vector<Rational> row;
      for (const auto& col : columns) row.push_back(col.coeff(m));
      rows.push_back(std::move(row));
      rhs.push_back(target.coeff(m));
    }
    AffineSolution sol;
    if (!solve_affine(rows, rhs, dirs.size(), sol)) return ShiftCoset::empty();
    for (std::size_t j = 0; j < dirs.size(); ++j)
      for (std::size_t i = 0; i < r; ++i) s[i] += sol.particular[j] * dirs[j][i];
    std::vector<std::vector<Rational>> next;
    for (const auto& nu : sol.kernel) {
      std::vector<Rational> k(r, Rational(0));
      for (std::size_t j = 0; j < dirs.size(); ++j)
        for (std::size_t i = 0; i < r; ++i) k[i] += nu[j] * dirs[j][i];
      next.push_back(std::move(k));
    }
    dirs = std::move(next);
  }
  if (q.shift(s) != p * c) throw std::logic_error("shift equivalence: layer solution does not verify");

  // integer points of s + span(dirs); span(dirs) is the invariance space of q
  IntLattice inv = invariance_lattice(q);
  if (inv.rank() != dirs.size()) throw std::logic_error("shift equivalence: invariance dimension mismatch");
  IntLattice comp = orthogonal_complement(inv);
  IntVec beta;
  for (const auto& row : comp.basis()) {
    Rational v = 0;
    for (std::size_t i = 0; i < r; ++i) v += s[i] * static_cast<long>(row[i]);
    if (!is_integer(v)) return ShiftCoset::empty();
    beta.push_back(to_int64(v.get_num()));
  }
  UnimodularMatrix m = unimodular_completion(comp.basis(), r);
  beta.resize(r, 0);
  IntVec sol = m.apply_inverse(beta);
  if (q.shift(sol) != p * c) throw std::logic_error("shift equivalence: integer representative does not verify");
  return ShiftCoset(sol, inv);
}

/// Spread(p,q) for irreducible p and q.
inline ShiftCoset spread_pair(const Poly& p, const Poly& q) { return shift_equiv(p, q); }

/// Brute force: all s in [-radius, radius]^r with gcd(p, N^s q) non-constant.
inline std::vector<IntVec> spread_box_oracle(const Poly& p, const Poly& q, int radius) {
  if (radius < 0) throw InputError("box radius must be non-negative");
  const std::size_t r = p.nvars();
  std::vector<IntVec> hits;
  IntVec s(r, -radius);
  while (true) {
    if (!gcd(p, q.shift(s)).is_constant()) hits.push_back(s);
    std::size_t i = r;
    while (i > 0) {
      --i;
      if (s[i] < radius) {
        ++s[i];
        break;
      }
      s[i] = -radius;
      if (i == 0) return hits;
    }
    if (r == 0) return hits;
  }
}

}  // namespace plde
