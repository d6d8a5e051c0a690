#pragma once

// Exact feasibility of small systems of linear constraints over Q by
// Fourier-Motzkin elimination.

#include <plde/rational.hpp>

#include <algorithm>
#include <optional>
#include <set>
#include <vector>

namespace plde {

enum class Relation { ge, eq };

/// coeffs . v  (>= | =)  rhs
struct LinearConstraint {
  std::vector<Rational> coeffs;
  Relation rel = Relation::ge;
  Rational rhs = 0;
};

namespace detail {

// scale so the first nonzero coefficient is +-1; keeps duplicate detection cheap
inline LinearConstraint scaled_constraint(LinearConstraint c) {
  for (const auto& x : c.coeffs) {
    if (x == 0) continue;
    Rational s = abs(x);
    for (auto& y : c.coeffs) y /= s;
    c.rhs /= s;
    break;
  }
  return c;
}

struct ConstraintKey {
  bool operator()(const LinearConstraint& a, const LinearConstraint& b) const {
    if (a.coeffs != b.coeffs) return a.coeffs < b.coeffs;
    return a.rhs < b.rhs;
  }
};

// Picks a value in [lo, hi] (either side may be open): 0 if allowed, else the
// integer closest to 0, else an endpoint.
inline Rational pick_value(const std::optional<Rational>& lo, const std::optional<Rational>& hi) {
  bool zero_ok = (!lo || *lo <= 0) && (!hi || *hi >= 0);
  if (zero_ok) return 0;
  if (lo && *lo > 0) {
    Integer c;
    mpz_cdiv_q(c.get_mpz_t(), lo->get_num_mpz_t(), lo->get_den_mpz_t());
    Rational ci(c);
    if (!hi || ci <= *hi) return ci;
    return *lo;
  }
  Integer f;
  mpz_fdiv_q(f.get_mpz_t(), hi->get_num_mpz_t(), hi->get_den_mpz_t());
  Rational fi(f);
  if (!lo || fi >= *lo) return fi;
  return *hi;
}

}  // namespace detail

/// One rational solution of the system, or nullopt when it is infeasible.
inline std::optional<std::vector<Rational>> lp_feasible(const std::vector<LinearConstraint>& constraints,
                                                        std::size_t nvars) {
  for (const auto& c : constraints)
    if (c.coeffs.size() != nvars) throw InputError("constraint has wrong number of coefficients");

  // Equalities: eliminate one variable each, remembering v_j = (rhs - sum_{i!=j} a_i v_i) / a_j.
  std::vector<LinearConstraint> ineq, eqs;
  for (const auto& c : constraints) (c.rel == Relation::eq ? eqs : ineq).push_back(c);
  struct Elim {
    std::size_t var;
    LinearConstraint eq;
  };
  std::vector<Elim> eliminated;
  std::vector<bool> is_free(nvars, true);
  while (!eqs.empty()) {
    LinearConstraint e = eqs.back();
    eqs.pop_back();
    std::size_t j = nvars;
    for (std::size_t i = 0; i < nvars; ++i)
      if (e.coeffs[i] != 0) {
        j = i;
        break;
      }
    if (j == nvars) {
      if (e.rhs != 0) return std::nullopt;
      continue;
    }
    auto substitute = [&](LinearConstraint& c) {
      if (c.coeffs[j] == 0) return;
      Rational f = c.coeffs[j] / e.coeffs[j];
      for (std::size_t i = 0; i < nvars; ++i) c.coeffs[i] -= f * e.coeffs[i];
      c.rhs -= f * e.rhs;
    };
    for (auto& c : eqs) substitute(c);
    for (auto& c : ineq) substitute(c);
    for (auto& el : eliminated) substitute(el.eq);
    eliminated.push_back({j, e});
    is_free[j] = false;
  }

  // Fourier-Motzkin over the free variables; levels[i] holds the system before eliminating order[i].
  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < nvars; ++i)
    if (is_free[i]) order.push_back(i);
  std::vector<std::vector<LinearConstraint>> levels;
  std::vector<LinearConstraint> cur;
  {
    std::set<LinearConstraint, detail::ConstraintKey> seen;
    for (auto& c : ineq) {
      auto s = detail::scaled_constraint(c);
      if (seen.insert(s).second) cur.push_back(s);
    }
  }
  for (std::size_t j : order) {
    levels.push_back(cur);
    std::vector<LinearConstraint> pos, neg, next;
    std::set<LinearConstraint, detail::ConstraintKey> seen;
    auto keep = [&](LinearConstraint c) {
      c = detail::scaled_constraint(std::move(c));
      if (seen.insert(c).second) next.push_back(std::move(c));
    };
    for (const auto& c : cur) {
      if (c.coeffs[j] > 0)
        pos.push_back(c);
      else if (c.coeffs[j] < 0)
        neg.push_back(c);
      else
        keep(c);
    }
    for (const auto& a : pos)
      for (const auto& b : neg) {
        Rational fa = -b.coeffs[j], fb = a.coeffs[j];
        LinearConstraint c;
        c.coeffs.resize(nvars);
        for (std::size_t i = 0; i < nvars; ++i) c.coeffs[i] = fa * a.coeffs[i] + fb * b.coeffs[i];
        c.coeffs[j] = 0;
        c.rhs = fa * a.rhs + fb * b.rhs;
        keep(std::move(c));
      }
    cur = std::move(next);
  }
  for (const auto& c : cur)
    if (c.rhs > 0) return std::nullopt;  // 0 >= rhs violated

  std::vector<Rational> v(nvars, Rational(0));
  for (std::size_t idx = order.size(); idx-- > 0;) {
    std::size_t j = order[idx];
    std::optional<Rational> lo, hi;
    for (const auto& c : levels[idx]) {
      if (c.coeffs[j] == 0) continue;
      Rational rest = c.rhs;
      for (std::size_t i = 0; i < nvars; ++i)
        if (i != j) rest -= c.coeffs[i] * v[i];
      Rational bound = rest / c.coeffs[j];
      if (c.coeffs[j] > 0) {
        if (!lo || bound > *lo) lo = bound;
      } else {
        if (!hi || bound < *hi) hi = bound;
      }
    }
    if (lo && hi && *lo > *hi) throw std::logic_error("Fourier-Motzkin back-substitution failed");
    v[j] = detail::pick_value(lo, hi);
  }
  for (auto it = eliminated.rbegin(); it != eliminated.rend(); ++it) {
    const auto& e = it->eq;
    Rational rest = e.rhs;
    for (std::size_t i = 0; i < nvars; ++i)
      if (i != it->var) rest -= e.coeffs[i] * v[i];
    v[it->var] = rest / e.coeffs[it->var];
  }
  for (const auto& c : constraints) {
    Rational lhs = 0;
    for (std::size_t i = 0; i < nvars; ++i) lhs += c.coeffs[i] * v[i];
    if (c.rel == Relation::eq ? lhs != c.rhs : lhs < c.rhs)
      throw std::logic_error("Fourier-Motzkin solution does not satisfy the system");
  }
  return v;
}

}  // namespace plde
