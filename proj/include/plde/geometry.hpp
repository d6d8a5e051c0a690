#pragma once

// Geometry of the support set: corner points, witness covectors for pairs of
// corners, classification of modules, and hull faces.

#include <plde/lattice.hpp>
#include <plde/lp.hpp>

#include <map>
#include <set>
#include <string>

namespace plde {

using Support = std::vector<IntVec>;

struct WitnessCertificate {
  IntVec p, p_prime;
  IntVec u;  // primitive integer covector orthogonal to W
  Support min_face, max_face;
};

enum class ModuleKind { in_u, in_o_only, uncovered };

inline const char* to_string(ModuleKind k) {
  switch (k) {
    case ModuleKind::in_u: return "U";
    case ModuleKind::in_o_only: return "O\\U";
    case ModuleKind::uncovered: return "uncovered";
  }
  return "?";
}

struct ModuleClass {
  ModuleKind kind = ModuleKind::uncovered;
  std::optional<WitnessCertificate> certificate;
};

namespace detail {

inline std::vector<Rational> to_rational(const IntVec& v) {
  std::vector<Rational> out;
  for (auto x : v) out.emplace_back(static_cast<long>(x));
  return out;
}

inline LinearConstraint constraint(const IntVec& coeffs, Relation rel, long rhs) {
  return {to_rational(coeffs), rel, Rational(rhs)};
}

/// Clears denominators and divides by the content.
inline IntVec primitive_integer(const std::vector<Rational>& v) {
  Integer l = 1;
  for (const auto& x : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
  IntVec out;
  for (const auto& x : v) {
    Rational y = x * l;
    out.push_back(to_int64(y.get_num()));
  }
  std::int64_t g = gcd_of(out);
  if (g > 1)
    for (auto& x : out) x /= g;
  return out;
}

inline bool injective_mod(const Support& pts, const IntLattice& w) {
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j)
      if (w.contains(pts[i] - pts[j])) return false;
  return true;
}

inline std::pair<Support, Support> faces(const Support& s, const IntVec& u) {
  std::int64_t lo = dot(s[0], u), hi = lo;
  for (const auto& x : s) lo = std::min(lo, dot(x, u)), hi = std::max(hi, dot(x, u));
  Support mn, mx;
  for (const auto& x : s) {
    if (dot(x, u) == lo) mn.push_back(x);
    if (dot(x, u) == hi) mx.push_back(x);
  }
  return {mn, mx};
}

inline void check_support(const Support& s) {
  if (s.empty()) throw InputError("support set is empty");
  std::set<IntVec> seen;
  for (const auto& x : s) {
    if (x.size() != s[0].size()) throw InputError("support points have different lengths");
    if (!seen.insert(x).second) throw InputError("support point repeated: (" + format_vec(x) + ")");
  }
}

}  // namespace detail

/// Vertices of the convex hull: p with (s-p).v >= 1 feasible for all s != p.
inline Support corner_points(const Support& s) {
  detail::check_support(s);
  const std::size_t r = s[0].size();
  Support out;
  for (const auto& p : s) {
    std::vector<LinearConstraint> cs;
    for (const auto& x : s)
      if (x != p) cs.push_back(detail::constraint(x - p, Relation::ge, 1));
    if (lp_feasible(cs, r)) out.push_back(p);
  }
  return out;
}

/// Covector u orthogonal to W with min face exactly {p}, p' on the max face,
/// and the max face injective modulo W. Max faces are tried smallest first.
inline std::optional<WitnessCertificate> witness_for_pair(const Support& s, const IntVec& p, const IntVec& pp,
                                                          const IntLattice& w) {
  detail::check_support(s);
  const std::size_t r = s[0].size();
  if (p == pp) return std::nullopt;
  Support others;
  for (const auto& x : s)
    if (x != p && x != pp) others.push_back(x);
  if (others.size() > 12) throw Unsupported("support too large for exhaustive face enumeration");
  std::vector<LinearConstraint> base;
  for (const auto& g : w.basis()) base.push_back(detail::constraint(g, Relation::eq, 0));
  for (const auto& x : s)
    if (x != p) base.push_back(detail::constraint(x - p, Relation::ge, 1));

  const std::size_t m = others.size();
  std::vector<std::uint32_t> masks;
  for (std::uint32_t mask = 0; mask < (1u << m); ++mask) masks.push_back(mask);
  std::stable_sort(masks.begin(), masks.end(),
                   [](auto a, auto b) { return __builtin_popcount(a) < __builtin_popcount(b); });
  for (auto mask : masks) {
    Support face{pp};
    for (std::size_t i = 0; i < m; ++i)
      if (mask >> i & 1u) face.push_back(others[i]);
    if (!detail::injective_mod(face, w)) continue;
    auto cs = base;
    for (std::size_t i = 0; i < m; ++i) {
      if (mask >> i & 1u)
        cs.push_back(detail::constraint(others[i] - pp, Relation::eq, 0));
      else
        cs.push_back(detail::constraint(pp - others[i], Relation::ge, 1));
    }
    auto sol = lp_feasible(cs, r);
    if (!sol) continue;
    WitnessCertificate cert;
    cert.p = p;
    cert.p_prime = pp;
    cert.u = detail::primitive_integer(*sol);
    std::tie(cert.min_face, cert.max_face) = detail::faces(s, cert.u);
    for (const auto& g : w.basis())
      if (dot(g, cert.u) != 0) throw std::logic_error("witness not orthogonal to module");
    if (cert.min_face != Support{p} || std::find(cert.max_face.begin(), cert.max_face.end(), pp) == cert.max_face.end() ||
        !detail::injective_mod(cert.max_face, w))
      throw std::logic_error("witness certificate fails its own checks");
    return cert;
  }
  return std::nullopt;
}

/// A covector orthogonal to W whose min face is exactly {p}, if any.
inline std::optional<WitnessCertificate> corner_witness(const Support& s, const IntVec& p, const IntLattice& w) {
  const std::size_t r = s[0].size();
  std::vector<LinearConstraint> cs;
  for (const auto& g : w.basis()) cs.push_back(detail::constraint(g, Relation::eq, 0));
  for (const auto& x : s)
    if (x != p) cs.push_back(detail::constraint(x - p, Relation::ge, 1));
  auto sol = lp_feasible(cs, r);
  if (!sol) return std::nullopt;
  WitnessCertificate cert;
  cert.p = p;
  cert.u = detail::primitive_integer(*sol);
  std::tie(cert.min_face, cert.max_face) = detail::faces(s, cert.u);
  cert.p_prime = cert.max_face.front();
  return cert;
}

/// All useful ordered corner pairs for W with their certificates.
inline std::vector<WitnessCertificate> useful_pairs(const Support& s, const IntLattice& w) {
  std::vector<WitnessCertificate> out;
  auto corners = corner_points(s);
  for (const auto& p : corners)
    for (const auto& pp : corners)
      if (auto c = witness_for_pair(s, p, pp, w)) out.push_back(*c);
  return out;
}

/// U: some ordered corner pair is useful; O\U: some corner has a W-orthogonal
/// covector with singleton min face; uncovered otherwise.
inline ModuleClass classify_module(const Support& s, const IntLattice& w) {
  detail::check_support(s);
  if (w.ambient() != s[0].size()) throw InputError("module and support live in different dimensions");
  if (s.size() == 1) {
    // y is determined pointwise by the single coefficient; every module is covered
    WitnessCertificate c{s[0], s[0], IntVec(s[0].size(), 0), s, s};
    return {ModuleKind::in_u, c};
  }
  auto corners = corner_points(s);
  for (const auto& p : corners)
    for (const auto& pp : corners)
      if (auto c = witness_for_pair(s, p, pp, w)) return {ModuleKind::in_u, c};
  for (const auto& p : corners)
    if (auto c = corner_witness(s, p, w)) return {ModuleKind::in_o_only, c};
  return {ModuleKind::uncovered, std::nullopt};
}

struct FaceModules {
  std::vector<IntLattice> modules;
  bool partial = false;  // r > 3: only edges were enumerated
};

/// Saturated modules parallel to edges (and for r = 3, 2-dimensional faces) of the hull.
inline FaceModules face_parallel_modules(const Support& s) {
  detail::check_support(s);
  const std::size_t r = s[0].size();
  auto corners = corner_points(s);
  std::set<IntLattice> found;
  // Is the affine span of `pts` (through pts[0]) a face of the hull?
  auto is_face = [&](const Support& pts) {
    IntLattice dir = IntLattice::from_rows(r, [&] {
      IntMat rows;
      for (std::size_t i = 1; i < pts.size(); ++i) rows.push_back(pts[i] - pts[0]);
      return rows;
    }());
    IntLattice sat = saturation(dir);
    std::vector<LinearConstraint> cs;
    for (const auto& g : sat.basis()) cs.push_back(detail::constraint(g, Relation::eq, 0));
    for (const auto& x : s) {
      IntVec d = x - pts[0];
      // sat is saturated, so membership decides whether x lies on the affine span
      if (!sat.contains(d)) cs.push_back(detail::constraint(d, Relation::ge, 1));
    }
    return std::make_pair(lp_feasible(cs, r).has_value(), sat);
  };
  for (std::size_t i = 0; i < corners.size(); ++i)
    for (std::size_t j = i + 1; j < corners.size(); ++j) {
      auto [ok, module] = is_face({corners[i], corners[j]});
      if (ok) found.insert(module);
    }
  if (r == 3) {
    for (std::size_t i = 0; i < corners.size(); ++i)
      for (std::size_t j = i + 1; j < corners.size(); ++j)
        for (std::size_t k = j + 1; k < corners.size(); ++k) {
          Support tri{corners[i], corners[j], corners[k]};
          if (IntLattice::from_rows(r, {tri[1] - tri[0], tri[2] - tri[0]}).rank() != 2) continue;
          auto [ok, module] = is_face(tri);
          if (ok) found.insert(module);
        }
  }
  return {std::vector<IntLattice>(found.begin(), found.end()), r > 3};
}

}  // namespace plde
