#pragma once

#include <plde/parse.hpp>
#include <plde/verify.hpp>

#include <random>

namespace plde::testing {

inline VarList nk() { return VarList({"n", "k"}); }
inline VarList nkm() { return VarList({"n", "k", "m"}); }

inline Poly P(const std::string& text, const VarList& vars = nk()) { return parse_poly(text, vars); }

inline RationalFunction RF(const std::string& text, const VarList& vars = nk()) {
  return parse_rational_function(text, vars);
}

inline IntLattice L(const std::string& gens, std::size_t r = 2) { return parse_lattice(gens, r); }

// Random polynomial with small integer coefficients.
inline Poly random_poly(std::mt19937_64& rng, const VarList& vars, int max_deg, int max_terms, int coef = 5) {
  std::uniform_int_distribution<int> deg(0, max_deg), c(-coef, coef), nterms(1, max_terms);
  Poly p(vars);
  int t = nterms(rng);
  for (int i = 0; i < t; ++i) {
    ExpVec e(vars.size(), 0);
    int budget = deg(rng);
    for (int j = 0; j < budget; ++j) e[std::uniform_int_distribution<std::size_t>(0, vars.size() - 1)(rng)]++;
    p.add_term(e, c(rng));
  }
  return p;
}

inline IntVec random_vec(std::mt19937_64& rng, std::size_t r, int bound) {
  std::uniform_int_distribution<int> d(-bound, bound);
  IntVec v(r);
  for (auto& x : v) x = d(rng);
  return v;
}

inline std::vector<Rational> random_point(std::mt19937_64& rng, std::size_t r) {
  std::uniform_int_distribution<int> d(-20, 20);
  std::vector<Rational> v(r);
  for (auto& x : v) {
    x = Rational(d(rng), 1 + (d(rng) + 20) % 3);
    x.canonicalize();
  }
  return v;
}

struct TermSpec {
  IntVec shift;
  Rational unit;
  std::vector<std::string> factors;
};

// Factors are declared irreducible; provable ones are upgraded automatically.
inline Plde E(const std::vector<TermSpec>& ts, const VarList& vars = nk(), const std::string& rhs = "0") {
  std::map<IntVec, FactoredPoly> terms;
  for (const auto& t : ts) {
    std::vector<Factor> fs;
    for (const auto& f : t.factors) fs.push_back(Factor{P(f, vars), 1, Irreducibility::declared});
    terms.emplace(t.shift, FactoredPoly(vars, t.unit, fs));
  }
  return Plde(vars, std::move(terms), P(rhs, vars));
}

inline Plde ex1() {
  return E({{{0, 0}, 1, {"4*k-2*n+1", "k+n+1"}},
            {{0, 1}, 1, {"8*k^2+2*k*n+k+6*n^2+13*n+6"}},
            {{1, 0}, -2, {"6*k^2+2*k*n+13*k+2*n^2+n+6"}}});
}

inline Plde ex2() {
  return E({{{0, 1}, 1, {"2*k-3*n^2-8*n-5"}},
            {{1, 0}, 1, {"k+3*n^2+5*n+4"}},
            {{1, 1}, -1, {"5*k-3*n^2-11*n-7"}},
            {{2, 0}, 1, {"2*k-3*n^2-8*n-3"}}});
}

inline Plde normalized_ex1() {
  return E({{{0, 0}, 1, {"n+1", "-6*k+4*n+1"}},
            {{1, 0}, 1, {"12*k^2-14*n*k+12*k+8*n^2+n+6"}},
            {{1, 1}, -2, {"6*k^2-10*n*k-12*k+6*n^2+13*n+6"}}});
}

inline Plde sys1() {
  return E({{{0, 0}, -1, {"k+n+1", "2*k+3*n+1"}},
            {{0, 1}, 1, {"k+n+4", "2*k+3*n+3"}},
            {{1, 0}, -1, {"k+n+2", "2*k+3*n+4"}},
            {{1, 1}, 1, {"k+n+5", "2*k+3*n+6"}}});
}

inline Plde sys2() {
  return E({{{0, 1}, 1, {"n^2+n+1", "2*k+3*n+3"}},
            {{1, 0}, -1, {"n^2+5*n+7", "2*k+3*n+4"}},
            {{1, 2}, -1, {"n^2+3*n+3", "2*k+3*n+8"}},
            {{2, 1}, 1, {"n^2+7*n+13", "2*k+3*n+9"}}});
}

// y(n+1,k) - y(n,k+1) = 0
inline Plde shift_diag() { return E({{{1, 0}, 1, {}}, {{0, 1}, -1, {}}}); }

inline RationalFunction system_solution() {
  return RF("1/((n+k+1)*(n+k+2)*(n+k+3)*(n^2+n+1)*(n^2+3*n+3)*(3*n+2*k+1))");
}

inline UnimodularMatrix random_unimodular(std::mt19937_64& rng, std::size_t r, int steps = 4) {
  IntMat m = identity_matrix(r);
  std::uniform_int_distribution<std::size_t> idx(0, r - 1);
  std::uniform_int_distribution<int> c(-2, 2);
  for (int s = 0; s < steps; ++s) {
    std::size_t i = idx(rng), j = idx(rng);
    if (i == j) continue;
    int f = c(rng);
    for (std::size_t x = 0; x < r; ++x) m[i][x] += f * m[j][x];
    if (c(rng) == 2) std::swap(m[i], m[j]);
  }
  return UnimodularMatrix(m);
}

}  // namespace plde::testing
