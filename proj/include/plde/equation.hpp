#pragma once

#include <plde/factored.hpp>
#include <plde/geometry.hpp>

#include <map>

namespace plde {

/// sum_{s in S} a_s N^s y = f
struct Plde {
  VarList vars;
  std::map<IntVec, FactoredPoly> terms;
  Poly rhs;

  Plde() = default;
  Plde(VarList v, std::map<IntVec, FactoredPoly> t, Poly f) : vars(std::move(v)), terms(std::move(t)), rhs(std::move(f)) {
    validate();
  }

  std::size_t r() const { return vars.size(); }

  Support support() const {
    Support s;
    for (const auto& [p, a] : terms) s.push_back(p);
    return s;
  }

  const FactoredPoly& coefficient(const IntVec& p) const {
    auto it = terms.find(p);
    if (it == terms.end()) throw InputError("no term at (" + format_vec(p) + ")");
    return it->second;
  }

  void validate() const {
    if (terms.empty()) throw InputError("equation has no terms");
    if (!(rhs.vars() == vars)) throw InputError("right-hand side uses a different variable list");
    for (const auto& [p, a] : terms) {
      if (p.size() != vars.size()) throw InputError("shift (" + format_vec(p) + ") has wrong length");
      if (!(a.vars() == vars)) throw InputError("coefficient uses a different variable list");
      if (a.unit() == 0) throw InputError("zero coefficient at (" + format_vec(p) + ")");
    }
  }

  friend bool operator==(const Plde& a, const Plde& b) {
    return a.vars == b.vars && a.terms == b.terms && a.rhs == b.rhs;
  }
};

}  // namespace plde
