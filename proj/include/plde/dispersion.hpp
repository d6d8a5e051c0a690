#pragma once

#include <plde/factored.hpp>

#include <string>

namespace plde {

/// max over a set of non-negative integers, with -inf for the empty set and
/// +inf for unbounded sets.
struct Dispersion {
  enum class Kind { neg_infinity, finite, infinity };
  Kind kind = Kind::neg_infinity;
  std::int64_t value = 0;

  static Dispersion neg_infinity() { return {}; }
  static Dispersion infinity() { return {Kind::infinity, 0}; }
  static Dispersion finite(std::int64_t v) { return {Kind::finite, v}; }

  bool is_finite() const { return kind == Kind::finite; }

  friend bool operator==(const Dispersion& a, const Dispersion& b) {
    return a.kind == b.kind && (a.kind != Kind::finite || a.value == b.value);
  }
  friend bool operator<(const Dispersion& a, const Dispersion& b) {
    if (a.kind != b.kind) return a.kind < b.kind;
    return a.kind == Kind::finite && a.value < b.value;
  }
};

inline Dispersion max(const Dispersion& a, const Dispersion& b) { return a < b ? b : a; }

inline std::string to_string(const Dispersion& d) {
  switch (d.kind) {
    case Dispersion::Kind::neg_infinity: return "-inf";
    case Dispersion::Kind::infinity: return "inf";
    case Dispersion::Kind::finite: return std::to_string(d.value);
  }
  return "?";
}

/// max |i_axis| over a coset.
inline Dispersion coset_dispersion(const ShiftCoset& c, std::size_t axis) {
  if (c.is_empty()) return Dispersion::neg_infinity();
  for (const auto& g : c.lattice().basis())
    if (g[axis] != 0) return Dispersion::infinity();
  return Dispersion::finite(std::abs(c.base()[axis]));
}

/// Disp_axis(a, b): maximum |i_axis| over Spread(u, v) for all factors u of a, v of b.
/// `axis` is 0-based.
inline Dispersion disp_k(const FactoredPoly& a, const FactoredPoly& b, std::size_t axis) {
  if (axis >= a.vars().size()) throw InputError("dispersion axis out of range");
  Dispersion d = Dispersion::neg_infinity();
  for (const auto& u : a.factors())
    for (const auto& v : b.factors()) d = max(d, coset_dispersion(spread_pair(u.poly, v.poly), axis));
  return d;
}

}  // namespace plde
