#pragma once

// Denominator bounds with respect to submodules W of Z^r.
//
// Per module: pick a useful corner pair, change variables so the witness is
// the first coordinate and W = {0}^t x Z^(r-t), bound the first-coordinate
// dispersion s of W-periodic denominator factors from the two extreme
// faces, rewrite N^p y through the strip of width s, and read the bound off
// the denominators left in the rewritten form.

#include <plde/dispersion.hpp>
#include <plde/transform.hpp>

#include <map>
#include <set>

namespace plde {

struct BoundOptions {
  bool drop_aperiodic = true;  // leave aperiodic factors to the aperiodic bound
  bool coarse = false;         // full strip product instead of the reduced denominator
  bool refine = true;          // gcd over every useful pair instead of the first one
};

/// num / den with den a product of canonical factors (unit 1).
struct StripFraction {
  Poly num;
  FactoredPoly den;
};

namespace detail {

inline void reduce(StripFraction& f) {
  if (f.num.is_zero()) {
    f.den = FactoredPoly::one(f.num.vars());
    return;
  }
  for (const auto& fac : std::vector<Factor>(f.den.factors())) {
    int m = fac.multiplicity;
    while (m > 0) {
      auto q = divide_exact(f.num, fac.poly);
      if (!q) break;
      f.num = std::move(*q);
      --m;
    }
    if (m != fac.multiplicity) f.den.set_multiplicity(fac.poly, m);
  }
}

inline StripFraction add(const StripFraction& a, const StripFraction& b) {
  if (a.num.is_zero()) return b;
  if (b.num.is_zero()) return a;
  FactoredPoly l = fp_lcm(a.den, b.den);
  StripFraction r{a.num * fp_divide(l, a.den)->expand() + b.num * fp_divide(l, b.den)->expand(), l};
  reduce(r);
  return r;
}

/// c * x / d for a polynomial x and a factored d.
inline StripFraction scale(const StripFraction& c, const Poly& x, const FactoredPoly& d) {
  StripFraction r{c.num * x * Rational(1 / d.unit()), c.den * d.with_unit(1)};
  reduce(r);
  return r;
}

// first coordinate, then lexicographic
struct OffsetOrder {
  bool operator()(const IntVec& a, const IntVec& b) const {
    if (a[0] != b[0]) return a[0] < b[0];
    return a < b;
  }
};

inline IntVec unit_vec(std::size_t r, std::size_t i, std::int64_t scale = 1) {
  IntVec e(r, 0);
  e[i] = scale;
  return e;
}

/// {0}^t x Z^(r-t)
inline IntLattice tail_lattice(std::size_t r, std::size_t t) {
  IntMat rows;
  for (std::size_t i = t; i < r; ++i) rows.push_back(unit_vec(r, i));
  return IntLattice::from_rows(r, rows);
}

}  // namespace detail

/// Bound on the first-coordinate dispersion of denominator
/// factors with spread in W_norm = {0}^t x Z^(r-t), for a normalized equation
/// (least first coordinate 0).
inline Dispersion dispersion_bound(const Plde& eq_norm, std::size_t t, bool drop_aperiodic) {
  const std::size_t r = eq_norm.r();
  IntLattice w_norm = detail::tail_lattice(r, t);
  std::int64_t k = 0;
  for (const auto& [s, a] : eq_norm.terms) {
    if (s[0] < 0) throw HypothesisError("equation is not normalized: point (" + format_vec(s) + ")");
    k = std::max(k, s[0]);
  }
  Support a_face, b_face;
  for (const auto& [s, a] : eq_norm.terms) {
    if (s[0] == 0) a_face.push_back(s);
    if (s[0] == k) b_face.push_back(s);
  }
  for (const auto* face : {&a_face, &b_face})
    for (std::size_t i = 0; i < face->size(); ++i)
      for (std::size_t j = i + 1; j < face->size(); ++j)
        if (std::equal((*face)[i].begin(), (*face)[i].begin() + static_cast<std::ptrdiff_t>(t), (*face)[j].begin()))
          throw HypothesisError("points (" + format_vec((*face)[i]) + ") and (" + format_vec((*face)[j]) +
                                ") agree in the first " + std::to_string(t) + " coordinates");
  const bool drop = drop_aperiodic && !w_norm.is_zero();
  Dispersion s = Dispersion::neg_infinity();
  IntVec back = detail::unit_vec(r, 0, -k);
  for (const auto& pa : a_face)
    for (const auto& pb : b_face) {
      FactoredPoly ua = w_part(eq_norm.coefficient(pa), w_norm, drop);
      FactoredPoly ub = w_part(eq_norm.coefficient(pb), w_norm, drop).shift(back);
      s = max(s, disp_k(ua, ub, 0));
    }
  if (s.kind == Dispersion::Kind::infinity) throw std::logic_error("unbounded dispersion inside W");
  return s;
}

struct StripResult {
  IntVec p;
  Dispersion s;
  std::vector<IntVec> rminus;  // p and every substituted point, in processing order
  std::vector<IntVec> rplus;
  StripFraction b;                                   // coefficient-free part
  std::map<IntVec, StripFraction, detail::OffsetOrder> terms;  // coefficient of N^i y, i in R+
  FactoredPoly d_actual;  // lcm of the reduced denominators
  FactoredPoly product;   // prod_{i in R-} N^(i-p) a_p
};

/// N^p y = b + sum_{i in R+} b_i N^i y, obtained by substituting the shifted
/// equation for every term whose first-coordinate offset from p lies in [1, s].
inline StripResult strip_rewrite(const Plde& eq, const IntVec& p, Dispersion s) {
  for (const auto& [x, a] : eq.terms)
    if (x != p && x[0] <= p[0])
      throw HypothesisError("point (" + format_vec(x) + ") is not strictly beyond (" + format_vec(p) +
                            ") in the first coordinate");
  if (s.kind == Dispersion::Kind::infinity) throw HypothesisError("strip width must be finite");
  const FactoredPoly& ap = eq.coefficient(p);
  const std::int64_t width = s.is_finite() ? s.value : -1;

  StripResult res;
  res.p = p;
  res.s = s;
  res.rminus.push_back(p);
  res.product = ap.with_unit(1);
  FactoredPoly ap1 = ap.with_unit(1);
  Rational inv_unit = 1 / ap.unit();
  res.b = {eq.rhs * inv_unit, ap1};
  detail::reduce(res.b);
  std::map<IntVec, StripFraction, detail::OffsetOrder> live;
  for (const auto& [x, a] : eq.terms) {
    if (x == p) continue;
    StripFraction f{-a.expand() * inv_unit, ap1};
    detail::reduce(f);
    live.emplace(x, std::move(f));
  }
  while (!live.empty()) {
    auto it = live.begin();
    std::int64_t offset = it->first[0] - p[0];
    if (offset > width) break;
    IntVec i = it->first;
    StripFraction c = std::move(it->second);
    live.erase(it);
    if (c.num.is_zero()) continue;  // cancelled term
    res.rminus.push_back(i);
    IntVec delta = i - p;
    FactoredPoly ap_shift = ap.shift(delta);
    res.product = res.product * ap_shift.with_unit(1);
    res.b = detail::add(res.b, detail::scale(c, eq.rhs.shift(delta), ap_shift));
    for (const auto& [x, a] : eq.terms) {
      if (x == p) continue;
      IntVec target = x + delta;
      StripFraction add = detail::scale(c, -a.shift(delta).expand(), ap_shift);
      auto [pos, fresh] = live.emplace(target, add);
      if (!fresh) pos->second = detail::add(pos->second, add);
    }
  }
  res.d_actual = res.b.num.is_zero() ? FactoredPoly::one(eq.vars) : res.b.den;
  for (auto& [x, f] : live) {
    if (f.num.is_zero()) continue;
    if (x[0] - p[0] <= width) throw std::logic_error("strip rewrite left a point inside the strip");
    res.rplus.push_back(x);
    res.d_actual = fp_lcm(res.d_actual, f.den);
    res.terms.emplace(x, std::move(f));
  }
  return res;
}

struct ModuleBound {
  FactoredPoly d;            // bound in the original coordinates
  Dispersion s;              // dispersion bound in the frame
  NormalizedFrame frame;
  IntVec p_frame;            // image of the corner p
  std::optional<StripResult> strip;
  Plde eq_frame;             // normalized equation
};

/// Bound with respect to W from one useful pair certificate.
inline ModuleBound bound_for_module(const Plde& eq, const IntLattice& w, const WitnessCertificate& cert,
                                    const BoundOptions& opts = {}) {
  const std::size_t r = eq.r();
  if (w.ambient() != r) throw InputError("module dimension does not match the equation");
  const bool drop = opts.drop_aperiodic && !w.is_zero();
  ModuleBound out;
  if (eq.terms.size() == 1) {
    const auto& [p, a] = *eq.terms.begin();
    out.d = w_part(a.shift(-p), w, drop);
    out.s = Dispersion::finite(0);
    out.frame = {UnimodularMatrix::identity(r), r - w.rank()};
    out.p_frame = p;
    out.eq_frame = eq;
    return out;
  }
  if (cert.min_face != Support{cert.p})
    throw HypothesisError("corner (" + format_vec(cert.p) + ") does not have a singleton minimal face");
  out.frame = build_normalizing_frame(w, cert.u);
  FirstShift ns = normalize_first_shift(transform_equation(eq, out.frame.m));
  out.eq_frame = ns.eq;
  out.p_frame = out.frame.m.apply(cert.p);
  out.p_frame[0] -= ns.offset;
  const std::size_t t = out.frame.t;
  IntLattice w_norm = detail::tail_lattice(r, t);
  if (out.frame.m.apply(cert.p_prime)[0] - ns.offset != ns.k)
    throw std::logic_error("second point of the pair is not on the far face");
  out.s = dispersion_bound(ns.eq, t, opts.drop_aperiodic);
  FactoredPoly d_frame;
  if (out.s.kind == Dispersion::Kind::neg_infinity) {
    d_frame = FactoredPoly::one(eq.vars);
  } else {
    out.strip = strip_rewrite(ns.eq, out.p_frame, out.s);
    if (opts.coarse) {
      FactoredPoly ap = w_part(ns.eq.coefficient(out.p_frame), w_norm, drop);
      d_frame = FactoredPoly::one(eq.vars);
      for (const auto& i : out.strip->rminus) d_frame = d_frame * ap.shift(i - scaled(out.p_frame, 2));
    } else {
      d_frame = w_part(out.strip->d_actual.shift(-out.p_frame), w_norm, drop);
    }
  }
  const IntMat& m = out.frame.m.matrix();
  out.d = d_frame.map_factors([&](const Poly& f) { return f.substitute_linear(m); }, eq.vars).with_unit(1);
  return out;
}

/// Bound with respect to W: the first useful pair, or the gcd over all of them.
inline std::optional<FactoredPoly> module_bound(const Plde& eq, const IntLattice& w, const BoundOptions& opts = {}) {
  Support s = eq.support();
  if (s.size() == 1) return bound_for_module(eq, w, classify_module(s, w).certificate.value(), opts).d;
  std::optional<FactoredPoly> d;
  for (const auto& cert : useful_pairs(s, w)) {
    FactoredPoly di = bound_for_module(eq, w, cert, opts).d;
    d = d ? fp_gcd(*d, di) : di;
    if (!opts.refine) break;
  }
  return d;
}

/// Bound for aperiodic denominator factors (W = {0}).
inline FactoredPoly aperiodic_bound(const Plde& eq, const BoundOptions& opts = {}) {
  auto d = module_bound(eq, IntLattice::zero(eq.r()), opts);
  if (!d) throw std::logic_error("no useful pair for the zero module");
  return *d;
}

inline FactoredPoly lcm_combine(const VarList& vars, const std::vector<std::pair<IntLattice, FactoredPoly>>& bounds) {
  FactoredPoly d = FactoredPoly::one(vars);
  for (const auto& [w, b] : bounds) d = fp_lcm(d, b);
  return d;
}

/// d * prod_{p in P, s in S'} (N^s p)^m
inline FactoredPoly partial_multiple(const FactoredPoly& d, const std::vector<Poly>& p_set,
                                     const std::vector<IntVec>& shifts, int m) {
  if (m < 1) throw InputError("multiplicity must be positive");
  FactoredPoly out = d;
  for (const auto& p : p_set)
    for (const auto& s : shifts) out = out * FactoredPoly::of(p.shift(s), m, Irreducibility::declared);
  return out;
}

struct ModuleReport {
  IntLattice w;
  ModuleKind kind = ModuleKind::uncovered;
  std::optional<WitnessCertificate> certificate;
  Dispersion s;
  FactoredPoly d_w;  // meaningful for kind == in_u
  std::vector<Poly> factors;  // coefficient factors with this spread
};

struct BoundReport {
  FactoredPoly d;
  std::vector<Poly> p_set;
  std::vector<ModuleReport> modules;
  std::vector<IntLattice> uncovered;
  std::vector<std::string> warnings;
};

/// Combined bound over every spread occurring among corner coefficient factors.
inline BoundReport combined_bound(const Plde& eq, const BoundOptions& opts = {}) {
  const std::size_t r = eq.r();
  Support s = eq.support();
  BoundReport rep;
  rep.d = FactoredPoly::one(eq.vars);

  // every factor is trusted from here on; unproven ones are reported
  Plde trusted = eq;
  std::set<Poly> warned;
  for (auto& [x, a] : trusted.terms) {
    std::vector<Factor> fs;
    for (auto f : a.factors()) {
      if (f.tag != Irreducibility::verified && warned.insert(f.poly).second)
        rep.warnings.push_back("irreducibility of " + format(f.poly) + " is assumed, not verified");
      if (f.tag == Irreducibility::unverified) f.tag = Irreducibility::declared;
      fs.push_back(f);
    }
    a = FactoredPoly(eq.vars, a.unit(), fs);
  }

  std::map<IntLattice, ModuleReport> cache;
  auto visit = [&](const IntLattice& w) -> ModuleReport& {
    auto it = cache.find(w);
    if (it != cache.end()) return it->second;
    ModuleReport mr;
    mr.w = w;
    auto cls = classify_module(s, w);
    mr.kind = cls.kind;
    mr.certificate = cls.certificate;
    mr.d_w = FactoredPoly::one(eq.vars);
    if (mr.kind == ModuleKind::in_u) {
      mr.s = bound_for_module(trusted, w, *cls.certificate, opts).s;
      mr.d_w = *module_bound(trusted, w, opts);
      rep.d = fp_lcm(rep.d, mr.d_w);
    }
    return cache.emplace(w, std::move(mr)).first->second;
  };

  visit(IntLattice::zero(r));
  for (const auto& q : corner_points(s)) {
    for (const auto& f : trusted.coefficient(q).factors()) {
      ModuleReport& mr = visit(invariance_lattice(f.poly));
      if (std::find(mr.factors.begin(), mr.factors.end(), f.poly) == mr.factors.end()) mr.factors.push_back(f.poly);
      if (mr.kind != ModuleKind::in_o_only) continue;
      bool known = std::any_of(rep.p_set.begin(), rep.p_set.end(),
                               [&](const Poly& p) { return !shift_equiv(p, f.poly).is_empty(); });
      if (!known) rep.p_set.push_back(f.poly);
    }
  }
  for (auto& [w, mr] : cache) rep.modules.push_back(std::move(mr));

  auto faces = face_parallel_modules(s);
  if (faces.partial) rep.warnings.push_back("only edge-parallel modules were enumerated (more than 3 variables)");
  for (const auto& w : faces.modules)
    if (classify_module(s, w).kind != ModuleKind::in_u) rep.uncovered.push_back(w);
  std::sort(rep.p_set.begin(), rep.p_set.end());
  return rep;
}

}  // namespace plde
