#pragma once

// Exact division, primitive normalization and multivariate gcd over Q.
//
// The gcd is the classical recursive primitive-remainder-sequence algorithm:
// split off the content with respect to a main variable, run a primitive PRS
// on the primitive parts, and recombine.

#include <plde/poly.hpp>

#include <optional>
#include <utility>

namespace plde {

/// Quotient p/q when q divides p exactly, std::nullopt otherwise.
inline std::optional<Poly> divide_exact(const Poly& p, const Poly& q) {
  if (q.is_zero()) throw InputError("division by the zero polynomial");
  p.check_ring(q);
  Poly rem = p;
  Poly quot(p.vars());
  const ExpVec& lq = q.leading_exp();
  const Rational& cq = q.leading_coeff();
  ExpVec e(p.nvars());
  while (!rem.is_zero()) {
    const ExpVec& lr = rem.leading_exp();
    if (!divides(lq, lr)) return std::nullopt;
    for (std::size_t i = 0; i < e.size(); ++i) e[i] = lr[i] - lq[i];
    Rational c = rem.leading_coeff() / cq;
    quot.add_term(e, c);
    for (const auto& [eq, cqq] : q.terms()) {
      ExpVec f = eq;
      for (std::size_t i = 0; i < f.size(); ++i) f[i] += e[i];
      rem.add_term(f, -c * cqq);
    }
  }
  return quot;
}

inline Poly divide_or_throw(const Poly& p, const Poly& q) {
  auto r = divide_exact(p, q);
  if (!r) throw std::logic_error("expected exact division failed");
  return *r;
}

/// Splits p = unit * prim with prim integer, content 1, positive leading coefficient.
inline std::pair<Rational, Poly> normalize_primitive(const Poly& p) {
  if (p.is_zero()) throw InputError("cannot normalize the zero polynomial");
  Integer den_lcm = 1, num_gcd = 0;
  for (const auto& [e, c] : p.terms()) {
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den_mpz_t());
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.get_num_mpz_t());
  }
  Rational unit(num_gcd, den_lcm);
  unit.canonicalize();
  if (p.leading_coeff() < 0) unit = -unit;
  Poly prim = p * Rational(1 / unit);
  return {unit, prim};
}

/// Canonical associate; zero stays zero.
inline Poly normalize(const Poly& p) { return p.is_zero() ? p : normalize_primitive(p).second; }

namespace detail {

inline std::vector<Poly> coeffs_in(const Poly& p, std::size_t x) {
  std::vector<Poly> out(p.degree_in(x) + 1, Poly(p.vars()));
  for (const auto& [e, c] : p.terms()) {
    ExpVec f = e;
    f[x] = 0;
    out[e[x]].add_term(f, c);
  }
  return out;
}

inline Poly from_coeffs(const std::vector<Poly>& cs, std::size_t x, const VarList& vars) {
  Poly r(vars);
  for (std::size_t d = 0; d < cs.size(); ++d)
    for (const auto& [e, c] : cs[d].terms()) {
      ExpVec f = e;
      f[x] = static_cast<unsigned>(d);
      r.add_term(f, c);
    }
  return r;
}

inline void trim(std::vector<Poly>& cs) {
  while (!cs.empty() && cs.back().is_zero()) cs.pop_back();
}

/// Pseudo-remainder of a by b as polynomials in x.
inline Poly prem(const Poly& a, const Poly& b, std::size_t x) {
  auto A = coeffs_in(a, x);
  auto B = coeffs_in(b, x);
  trim(A);
  trim(B);
  const std::size_t nb = B.size() - 1;
  const Poly& lcb = B.back();
  while (!A.empty() && A.size() - 1 >= nb) {
    std::size_t da = A.size() - 1;
    Poly lead = A.back();
    for (auto& c : A) c = c * lcb;
    for (std::size_t j = 0; j <= nb; ++j) A[j + da - nb] -= lead * B[j];
    trim(A);
  }
  return from_coeffs(A, x, a.vars());
}

}  // namespace detail

Poly gcd(const Poly& a, const Poly& b);

namespace detail {

inline Poly content_in(const Poly& p, std::size_t x) {
  Poly g(p.vars());
  for (const auto& c : coeffs_in(p, x)) {
    if (c.is_zero()) continue;
    g = gcd(g, c);
    if (g.is_constant()) break;
  }
  return g;
}

inline Poly primitive_part_in(const Poly& p, std::size_t x) {
  return normalize(divide_or_throw(p, content_in(p, x)));
}

inline Poly primitive_prs(Poly a, Poly b, std::size_t x) {
  if (a.degree_in(x) < b.degree_in(x)) std::swap(a, b);
  while (true) {
    Poly r = prem(a, b, x);
    if (r.is_zero()) return primitive_part_in(b, x);
    if (r.degree_in(x) == 0) return Poly::constant(a.vars(), 1);
    a = std::move(b);
    b = primitive_part_in(r, x);
  }
}

}  // namespace detail

/// Normalized greatest common divisor; gcd(p, 0) = normalize(p).
inline Poly gcd(const Poly& a, const Poly& b) {
  a.check_ring(b);
  if (a.is_zero()) return normalize(b);
  if (b.is_zero()) return normalize(a);
  if (a.is_constant() || b.is_constant()) return Poly::constant(a.vars(), 1);

  // main variable: present in both with the smallest degree, else any present one
  std::size_t x = a.nvars();
  unsigned best = ~0u;
  for (std::size_t v = 0; v < a.nvars(); ++v) {
    unsigned da = a.degree_in(v), db = b.degree_in(v);
    if (da && db && std::max(da, db) < best) {
      best = std::max(da, db);
      x = v;
    }
  }
  if (x == a.nvars())
    for (std::size_t v = 0; v < a.nvars() && x == a.nvars(); ++v)
      if (a.involves(v) || b.involves(v)) x = v;

  Poly ca = detail::content_in(a, x);
  Poly cb = detail::content_in(b, x);
  Poly g = gcd(ca, cb);
  Poly pa = divide_or_throw(a, ca);
  Poly pb = divide_or_throw(b, cb);
  if (pa.degree_in(x) == 0 || pb.degree_in(x) == 0) return normalize(g);
  return normalize(g * detail::primitive_prs(pa, pb, x));
}

inline Poly lcm(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return Poly(a.vars());
  return normalize(divide_or_throw(a * b, gcd(a, b)));
}

}  // namespace plde
