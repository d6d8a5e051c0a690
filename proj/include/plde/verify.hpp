#pragma once

// Independent checks on fully expanded rational functions, plus a generator
// of equations with known solutions.

#include <plde/bounds.hpp>

#include <random>

namespace plde {

struct SolutionCheck {
  RationalFunction residual;
  bool ok = false;
};

/// sum a_s N^s y - f, computed on expanded polynomials.
inline SolutionCheck check_solution(const Plde& eq, const RationalFunction& y) {
  if (!(y.vars() == eq.vars)) throw InputError("solution uses a different variable list");
  RationalFunction acc(-eq.rhs);
  for (const auto& [s, a] : eq.terms) acc = acc + RationalFunction(a.expand()) * y.shift(s);
  return {acc, acc.is_zero()};
}

/// N^p y - (b + sum b_i N^i y) for a known solution y; zero when the rewrite is right.
inline RationalFunction strip_identity_residual(const StripResult& strip, const RationalFunction& y) {
  auto rf = [](const StripFraction& f) { return RationalFunction(f.num, f.den.expand()); };
  RationalFunction rhs = rf(strip.b);
  for (const auto& [i, f] : strip.terms) rhs = rhs + rf(f) * y.shift(i);
  return y.shift(strip.p) - rhs;
}

struct CoverVerdict {
  Poly factor;
  int multiplicity = 1;
  IntLattice spread;
  ModuleKind kind = ModuleKind::uncovered;
  int case_number = 0;  // 1, 2 or 3; 0 when no case (or more than one) holds
  bool in_d = false, in_p = false;
};

/// For every factor u^m of the solution denominator: case 1 (U and u^m | d),
/// case 2 (O\U and a shift of u in P) or case 3 (not in O).
inline std::vector<CoverVerdict> check_bound_covers(const Plde& eq, const FactoredPoly& den, const BoundReport& report) {
  Support s = eq.support();
  std::vector<CoverVerdict> out;
  for (const auto& f : den.factors()) {
    CoverVerdict v;
    v.factor = f.poly;
    v.multiplicity = f.multiplicity;
    v.spread = invariance_lattice(f.poly);
    v.kind = classify_module(s, v.spread).kind;
    v.in_d = report.d.multiplicity_of(f.poly) >= f.multiplicity;
    v.in_p = std::any_of(report.p_set.begin(), report.p_set.end(),
                         [&](const Poly& p) { return !shift_equiv(p, f.poly).is_empty(); });
    bool c1 = v.kind == ModuleKind::in_u && v.in_d;
    bool c2 = v.kind == ModuleKind::in_o_only && v.in_p;
    bool c3 = v.kind == ModuleKind::uncovered;
    if (c1 + c2 + c3 == 1) v.case_number = c1 ? 1 : c2 ? 2 : 3;
    out.push_back(std::move(v));
  }
  return out;
}

enum class InstanceProfile {
  cleared,    // a_s = N^s q * h_s, inhomogeneous
  two_term,   // g N^s1 q y - g N^s2 q y = 0 with y = 1/q
  polynomial, // y polynomial
  aperiodic,  // cleared with an aperiodic denominator factor
};

struct Instance {
  Plde eq;
  RationalFunction y;
  FactoredPoly den;  // denominator of y, factored
};

/// Random equation over n,k (sometimes n,k,m) with a certified solution.
inline Instance random_instance(std::uint64_t seed, InstanceProfile profile) {
  std::mt19937_64 rng(seed);
  auto uni = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  const bool three = profile != InstanceProfile::two_term && profile != InstanceProfile::aperiodic && uni(0, 3) == 0;
  VarList vars = three ? VarList({"n", "k", "m"}) : VarList({"n", "k"});
  const std::size_t r = vars.size();

  auto random_linear = [&]() {
    std::vector<Rational> c(r);
    bool nonzero = false;
    for (auto& x : c) {
      x = uni(-3, 3);
      nonzero = nonzero || x != 0;
    }
    if (!nonzero) c[uni(0, static_cast<int>(r) - 1)] = 1;
    return Poly::linear(vars, c, uni(-4, 4));
  };
  // n*k + c style factor: invariance lattice {0}
  auto random_aperiodic = [&]() {
    Poly p = Poly::constant(vars, uni(1, 3));
    ExpVec e(r, 0);
    e[0] = 1;
    e[1] = 1;
    p.add_term(e, 1);
    return p;
  };

  FactoredPoly den = FactoredPoly::one(vars);
  const int nden = profile == InstanceProfile::polynomial ? 0 : uni(1, 2);
  for (int i = 0; i < nden; ++i) {
    Poly u = (profile == InstanceProfile::aperiodic && i == 0) ? random_aperiodic() : random_linear();
    den = den * FactoredPoly::of(u, uni(1, 2) == 2 && i == 0 ? 2 : 1, Irreducibility::declared);
  }
  den = den.with_unit(1);
  Poly num = Poly::constant(vars, 1);
  if (profile != InstanceProfile::two_term) {
    num = Poly::constant(vars, uni(1, 3));
    for (std::size_t j = 0; j < r; ++j) {
      ExpVec e(r, 0);
      e[j] = 1;
      num.add_term(e, uni(-2, 2));
    }
  }
  RationalFunction y(num, den.expand());
  // keep the declared factorization even if num and den share a factor
  if (!(y.den() == den.expand())) return random_instance(seed * 6364136223846793005ULL + 1442695040888963407ULL, profile);

  // support: distinct points in a small box
  std::set<IntVec> pts;
  const int npts = profile == InstanceProfile::two_term ? 2 : uni(2, three ? 4 : 5);
  while (static_cast<int>(pts.size()) < npts) {
    IntVec v(r);
    for (auto& x : v) x = uni(0, three ? 1 : 2);
    pts.insert(v);
  }

  std::map<IntVec, FactoredPoly> terms;
  Poly rhs(vars);
  if (profile == InstanceProfile::two_term) {
    Poly g = random_linear();
    auto it = pts.begin();
    IntVec s1 = *it++, s2 = *it;
    FactoredPoly gf = FactoredPoly::of(g, 1, Irreducibility::declared);
    terms.emplace(s1, gf * den.shift(s1));
    FactoredPoly a2 = gf * den.shift(s2);
    terms.emplace(s2, a2.with_unit(-a2.unit()));
  } else {
    for (const auto& s : pts) {
      FactoredPoly h(vars, uni(1, 3) * (uni(0, 1) ? 1 : -1));
      if (uni(0, 1)) h = h * FactoredPoly::of(random_linear(), 1, Irreducibility::declared);
      FactoredPoly a = den.shift(s) * h;
      rhs += h.expand() * num.shift(s);
      terms.emplace(s, a);
    }
  }
  Instance inst{Plde(vars, std::move(terms), rhs), y, den};
  if (!check_solution(inst.eq, inst.y).ok) throw std::logic_error("generated instance does not verify");
  return inst;
}

}  // namespace plde
