#pragma once

// JSON forms of equations, factored polynomials and bound reports.
//
// Equation file:
//   {"variables": ["n","k"],
//    "terms": [{"shift": [0,0], "coefficient": {"unit": "-1", "factors": [["k+n+1", 1, "irreducible"]]}}],
//    "rhs": "0"}
// A coefficient may also be a plain polynomial string; it is then split by
// content and square-free parts only.

#include <plde/parse.hpp>
#include <plde/verify.hpp>

#include <json.hpp>

namespace plde {

using Json = nlohmann::json;

namespace detail {

inline const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InputError(std::string("missing field '") + key + "'");
  return j.at(key);
}

inline IntVec int_vec_from_json(const Json& j) {
  if (!j.is_array()) throw InputError("expected an integer vector");
  IntVec v;
  for (const auto& x : j) {
    if (!x.is_number_integer()) throw InputError("expected an integer vector");
    v.push_back(x.get<std::int64_t>());
  }
  return v;
}

inline Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) return Rational(static_cast<long>(j.get<std::int64_t>()));
  if (j.is_string()) return parse_rational(j.get<std::string>());
  throw InputError("expected a rational number (integer or string)");
}

}  // namespace detail

/// Splits p by contents in each variable and square-free decomposition.
/// Pieces whose irreducibility cannot be proven stay unverified.
inline FactoredPoly auto_factor(const Poly& p) {
  if (p.is_zero()) throw InputError("zero coefficient");
  auto [unit, prim] = normalize_primitive(p);
  FactoredPoly out(p.vars(), unit);
  std::vector<std::pair<Poly, int>> work{{prim, 1}};
  while (!work.empty()) {
    auto [q, m] = work.back();
    work.pop_back();
    if (q.is_constant()) {
      out.insert(Factor{q, m, Irreducibility::unverified});
      continue;
    }
    if (provably_irreducible(q)) {
      out.insert(Factor{q, m, Irreducibility::verified});
      continue;
    }
    bool split = false;
    for (std::size_t x = 0; x < q.nvars() && !split; ++x) {
      if (!q.involves(x)) continue;
      Poly c = detail::content_in(q, x);
      if (c.is_constant() || normalize(c) == normalize(q)) continue;
      work.push_back({c, m});
      work.push_back({divide_or_throw(q, c), m});
      split = true;
    }
    for (std::size_t x = 0; x < q.nvars() && !split; ++x) {
      if (!q.involves(x)) continue;
      Poly g = gcd(q, q.derivative(x));
      if (g.is_constant()) continue;
      work.push_back({g, m});
      work.push_back({divide_or_throw(q, g), m});
      split = true;
    }
    if (!split) out.insert(Factor{q, m, Irreducibility::unverified});
  }
  return out;
}

inline Json to_json(const FactoredPoly& fp) {
  Json factors = Json::array();
  for (const auto& f : fp.factors()) {
    Json e = Json::array({format(f.poly), f.multiplicity});
    if (f.tag == Irreducibility::declared) e.push_back("irreducible");
    factors.push_back(e);
  }
  return {{"unit", fp.unit().get_str()}, {"factors", factors}};
}

inline FactoredPoly factored_from_json(const Json& j, const VarList& vars) {
  if (j.is_string()) return auto_factor(parse_poly(j.get<std::string>(), vars));
  if (!j.is_object()) throw InputError("coefficient must be a string or an object");
  Rational unit = j.contains("unit") ? detail::rational_from_json(j.at("unit")) : Rational(1);
  if (unit == 0) throw InputError("coefficient has zero unit");
  std::vector<Factor> fs;
  for (const auto& e : detail::field(j, "factors")) {
    if (!e.is_array() || e.empty() || e.size() > 3 || !e[0].is_string())
      throw InputError("factor must be [poly, multiplicity] or [poly, multiplicity, \"irreducible\"]");
    Factor f;
    f.poly = parse_poly(e[0].get<std::string>(), vars);
    if (f.poly.is_zero()) throw InputError("zero factor");
    if (e.size() > 1) {
      if (!e[1].is_number_integer() || e[1].get<int>() < 1) throw InputError("multiplicity must be a positive integer");
      f.multiplicity = e[1].get<int>();
    }
    if (e.size() == 3) {
      if (e[2] != "irreducible") throw InputError("unknown factor tag " + e[2].dump());
      f.tag = Irreducibility::declared;
    }
    fs.push_back(std::move(f));
  }
  return FactoredPoly(vars, unit, std::move(fs));
}

inline Json to_json(const Plde& eq) {
  Json terms = Json::array();
  for (const auto& [s, a] : eq.terms) terms.push_back({{"shift", s}, {"coefficient", to_json(a)}});
  return {{"variables", eq.vars.names()}, {"terms", terms}, {"rhs", format(eq.rhs)}};
}

/// Equation file text with one term per line.
inline std::string format_equation_file(const Plde& eq) {
  std::string out = "{\n  \"variables\": " + Json(eq.vars.names()).dump() + ",\n  \"terms\": [\n";
  std::size_t i = 0;
  for (const auto& [s, a] : eq.terms) {
    Json t = {{"shift", s}, {"coefficient", to_json(a)}};
    out += "    " + t.dump() + (++i < eq.terms.size() ? ",\n" : "\n");
  }
  return out + "  ],\n  \"rhs\": " + Json(format(eq.rhs)).dump() + "\n}\n";
}

inline Plde equation_from_json(const Json& j) {
  const Json& vs = detail::field(j, "variables");
  if (!vs.is_array() || vs.empty()) throw InputError("'variables' must be a nonempty list");
  std::vector<std::string> names;
  for (const auto& v : vs) {
    if (!v.is_string()) throw InputError("variable names must be strings");
    names.push_back(v.get<std::string>());
  }
  VarList vars(names);
  const Json& ts = detail::field(j, "terms");
  if (!ts.is_array() || ts.empty()) throw InputError("'terms' must be a nonempty list");
  std::map<IntVec, FactoredPoly> terms;
  for (const auto& t : ts) {
    IntVec s = detail::int_vec_from_json(detail::field(t, "shift"));
    if (s.size() != names.size()) throw InputError("shift (" + format_vec(s) + ") has wrong length");
    if (terms.count(s)) throw InputError("shift (" + format_vec(s) + ") appears twice");
    terms.emplace(s, factored_from_json(detail::field(t, "coefficient"), vars));
  }
  Poly rhs = j.contains("rhs") ? parse_poly(j.at("rhs").get<std::string>(), vars) : Poly(vars);
  return Plde(vars, std::move(terms), rhs);
}

inline Json to_json(const WitnessCertificate& c) {
  return {{"pair", {c.p, c.p_prime}}, {"witness", c.u}, {"min_face", c.min_face}, {"max_face", c.max_face}};
}

inline Json dispersion_to_json(const Dispersion& d) {
  if (d.is_finite()) return d.value;
  return to_string(d);
}

inline Dispersion dispersion_from_json(const Json& j) {
  if (j.is_number_integer()) return Dispersion::finite(j.get<std::int64_t>());
  if (j == "-inf") return Dispersion::neg_infinity();
  if (j == "inf") return Dispersion::infinity();
  throw InputError("bad dispersion value " + j.dump());
}

inline Json to_json(const BoundReport& rep) {
  Json mods = Json::array();
  for (const auto& m : rep.modules) {
    Json e = {{"W", format_lattice(m.w)}, {"class", to_string(m.kind)}};
    if (m.certificate) {
      e["pair"] = {m.certificate->p, m.certificate->p_prime};
      e["witness"] = m.certificate->u;
    }
    if (m.kind == ModuleKind::in_u) {
      e["s"] = dispersion_to_json(m.s);
      e["d_W"] = to_json(m.d_w);
    }
    Json fs = Json::array();
    for (const auto& f : m.factors) fs.push_back(format(f));
    e["factors"] = fs;
    mods.push_back(e);
  }
  Json ps = Json::array(), unc = Json::array();
  for (const auto& p : rep.p_set) ps.push_back(format(p));
  for (const auto& w : rep.uncovered) unc.push_back(format_lattice(w));
  return {{"d", to_json(rep.d)}, {"P", ps}, {"modules", mods}, {"uncovered", unc}, {"warnings", rep.warnings}};
}

inline ModuleKind module_kind_from_string(const std::string& s) {
  if (s == "U") return ModuleKind::in_u;
  if (s == "O\\U") return ModuleKind::in_o_only;
  if (s == "uncovered") return ModuleKind::uncovered;
  throw InputError("unknown module class '" + s + "'");
}

/// Inverse of to_json(BoundReport); certificate faces are not serialized and come back empty.
inline BoundReport report_from_json(const Json& j, const VarList& vars) {
  const std::size_t r = vars.size();
  BoundReport rep;
  rep.d = factored_from_json(detail::field(j, "d"), vars);
  for (const auto& p : detail::field(j, "P")) rep.p_set.push_back(parse_poly(p.get<std::string>(), vars));
  for (const auto& m : detail::field(j, "modules")) {
    ModuleReport mr;
    mr.w = parse_lattice(detail::field(m, "W").get<std::string>(), r);
    mr.kind = module_kind_from_string(detail::field(m, "class").get<std::string>());
    mr.d_w = FactoredPoly::one(vars);
    if (m.contains("pair")) {
      WitnessCertificate c;
      c.p = detail::int_vec_from_json(m.at("pair").at(0));
      c.p_prime = detail::int_vec_from_json(m.at("pair").at(1));
      c.u = detail::int_vec_from_json(detail::field(m, "witness"));
      mr.certificate = c;
    }
    if (m.contains("s")) mr.s = dispersion_from_json(m.at("s"));
    if (m.contains("d_W")) mr.d_w = factored_from_json(m.at("d_W"), vars);
    if (m.contains("factors"))
      for (const auto& f : m.at("factors")) mr.factors.push_back(parse_poly(f.get<std::string>(), vars));
    rep.modules.push_back(std::move(mr));
  }
  for (const auto& w : detail::field(j, "uncovered")) rep.uncovered.push_back(parse_lattice(w.get<std::string>(), r));
  for (const auto& w : detail::field(j, "warnings")) rep.warnings.push_back(w.get<std::string>());
  return rep;
}

}  // namespace plde
