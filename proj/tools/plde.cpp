// plde: denominator bounds for linear partial difference equations.
//
// Exit codes: 0 success, 1 malformed input, 2 unsupported input or a
// violated hypothesis, 3 internal consistency failure.

#include <plde/plde.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace plde;

namespace {

Plde load_equation(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::exception& e) {
    throw InputError(std::string("invalid JSON: ") + e.what());
  }
  try {
    return equation_from_json(j);
  } catch (const Json::exception& e) {
    throw InputError(std::string("malformed equation file: ") + e.what());
  }
}

void require_irreducible_factors(const Plde& eq) {
  for (const auto& [s, a] : eq.terms)
    for (const auto& f : a.factors())
      if (f.tag == Irreducibility::unverified)
        throw Unsupported("coefficient of shift (" + format_vec(s) + ") has factor " + format(f.poly) +
                          " that is not known to be irreducible; supply it factored and mark it \"irreducible\"");
}

std::string lattice_text(const IntLattice& l) {
  if (l.is_zero()) return "{0}";
  std::string s;
  for (std::size_t i = 0; i < l.rank(); ++i) s += (i ? "," : "") + std::string("(") + format_vec(l.basis()[i]) + ")";
  return s;
}

// Brute-force comparison of a coset against the box oracle.
bool box_agrees(const Poly& p, const Poly& q, const ShiftCoset& c, int radius) {
  auto hits = spread_box_oracle(p, q, radius);
  std::set<IntVec> oracle(hits.begin(), hits.end());
  IntVec s(p.nvars(), -radius);
  while (true) {
    if (c.contains(s) != (oracle.count(s) > 0)) return false;
    std::size_t i = s.size();
    while (i > 0) {
      --i;
      if (s[i] < radius) {
        ++s[i];
        break;
      }
      s[i] = -radius;
      if (i == 0) return true;
    }
  }
}

void print_report_text(const BoundReport& rep) {
  std::cout << "d: " << format(rep.d) << "\n";
  std::cout << "P:";
  if (rep.p_set.empty()) std::cout << " (none)";
  for (const auto& p : rep.p_set) std::cout << " " << format(p);
  std::cout << "\nmodules:\n";
  for (const auto& m : rep.modules) {
    std::cout << "  W=" << lattice_text(m.w) << "  " << to_string(m.kind);
    if (m.kind == ModuleKind::in_u) {
      const auto& c = *m.certificate;
      std::cout << "  pair (" << format_vec(c.p) << ")->(" << format_vec(c.p_prime) << ")  witness (" << format_vec(c.u)
                << ")  s=" << to_string(m.s) << "  d_W=" << format(m.d_w);
    }
    std::cout << "\n";
  }
  std::cout << "uncovered:";
  if (rep.uncovered.empty()) std::cout << " (none)";
  for (const auto& w : rep.uncovered) std::cout << " " << lattice_text(w);
  std::cout << "\n";
  for (const auto& w : rep.warnings) std::cout << "warning: " << w << "\n";
}

VarList parse_vars(const std::string& text) {
  std::vector<std::string> names;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) throw InputError("empty variable name");
    names.push_back(item);
  }
  if (names.empty()) throw InputError("no variables given");
  return VarList(names);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Denominator bounds for linear partial difference equations"};
  app.require_subcommand(1);

  std::string file, module_text, matrix_text, solution_text, poly_text, pair_text, vars_text = "n,k";
  bool json = false, coarse = false, no_refine = false, keep_aperiodic = false;
  int box = -1;

  auto* bound = app.add_subcommand("bound", "Combined denominator bound of an equation");
  bound->add_option("FILE", file, "equation file")->required();
  bound->add_flag("--json", json, "machine-readable report");
  bound->add_flag("--coarse", coarse, "use the full strip product");
  bound->add_flag("--no-refine", no_refine, "use only the first useful pair per module");
  bound->add_flag("--keep-aperiodic-in-wpart", keep_aperiodic, "keep aperiodic factors in module bounds");
  bound->add_option("--box", box, "cross-check coefficient spreads against a brute-force box of this radius");

  auto* spread = app.add_subcommand("spread", "Spread of a polynomial, or of a pair");
  spread->add_option("POLY", poly_text, "polynomial")->required();
  spread->add_option("--vars", vars_text, "comma-separated variable names");
  spread->add_option("--pair", pair_text, "second polynomial");
  spread->add_option("--box", box, "cross-check against a brute-force box of this radius");

  auto* classify = app.add_subcommand("classify", "Classify a module for the support of an equation");
  classify->add_option("FILE", file, "equation file")->required();
  classify->add_option("--module", module_text, "generators, e.g. \"1,-1\" or \"1,0;0,1\"")->required();

  auto* transform = app.add_subcommand("transform", "Substitute n -> A n in an equation");
  transform->add_option("FILE", file, "equation file")->required();
  transform->add_option("--matrix", matrix_text, "unimodular matrix rows, e.g. \"0,1;1,-1\"")->required();

  auto* check = app.add_subcommand("check", "Check a rational solution");
  check->add_option("FILE", file, "equation file")->required();
  check->add_option("--solution", solution_text, "rational function")->required();
  check->add_flag("--json", json, "machine-readable verdict");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (bound->parsed()) {
      Plde eq = load_equation(file);
      require_irreducible_factors(eq);
      if (box >= 0) {
        for (const auto& q : corner_points(eq.support()))
          for (const auto& f : eq.coefficient(q).factors())
            if (!box_agrees(f.poly, f.poly, ShiftCoset(IntVec(eq.r(), 0), invariance_lattice(f.poly)), box)) {
              std::cerr << "error: spread of " << format(f.poly) << " disagrees with the box oracle\n";
              return 3;
            }
      }
      BoundOptions opts;
      opts.coarse = coarse;
      opts.refine = !no_refine;
      opts.drop_aperiodic = !keep_aperiodic;
      BoundReport rep = combined_bound(eq, opts);
      if (json)
        std::cout << to_json(rep).dump(2) << "\n";
      else
        print_report_text(rep);
    } else if (spread->parsed()) {
      VarList vars = parse_vars(vars_text);
      Poly p = parse_poly(poly_text, vars);
      if (p.is_zero()) throw InputError("spread of the zero polynomial is undefined");
      if (pair_text.empty()) {
        IntLattice l = invariance_lattice(p);
        std::cout << "lattice: " << lattice_text(l) << "\n";
        if (box >= 0) {
          bool ok = box_agrees(p, p, ShiftCoset(IntVec(vars.size(), 0), l), box);
          std::cout << "box(" << box << "): " << (ok ? "agrees" : "DISAGREES") << "\n";
          if (!ok) return 3;
        }
      } else {
        Poly q = parse_poly(pair_text, vars);
        if (q.is_zero()) throw InputError("spread of the zero polynomial is undefined");
        ShiftCoset c = spread_pair(p, q);
        if (c.is_empty())
          std::cout << "coset: empty\n";
        else
          std::cout << "coset: (" << format_vec(c.base()) << ") + " << lattice_text(c.lattice()) << "\n";
        if (box >= 0) {
          bool ok = box_agrees(p, q, c, box);
          std::cout << "box(" << box << "): " << (ok ? "agrees" : "DISAGREES") << "\n";
          if (!ok) return 3;
        }
      }
    } else if (classify->parsed()) {
      Plde eq = load_equation(file);
      IntLattice w = parse_lattice(module_text, eq.r());
      ModuleClass mc = classify_module(eq.support(), w);
      std::cout << to_string(mc.kind) << "\n";
      if (mc.certificate) std::cout << to_json(*mc.certificate).dump() << "\n";
    } else if (transform->parsed()) {
      Plde eq = load_equation(file);
      IntMat rows;
      std::stringstream ss(matrix_text);
      std::string row;
      while (std::getline(ss, row, ';')) rows.push_back(parse_int_vec(row));
      UnimodularMatrix a(rows);
      std::cout << format_equation_file(transform_by_substitution(eq, a));
    } else if (check->parsed()) {
      Plde eq = load_equation(file);
      RationalFunction y = parse_rational_function(solution_text, eq.vars);
      SolutionCheck c = check_solution(eq, y);
      if (json)
        std::cout << Json{{"ok", c.ok}, {"residual", format(c.residual)}}.dump() << "\n";
      else
        std::cout << (c.ok ? "ok" : "not ok") << "\n";
      if (!c.ok && !json) std::cout << "residual: " << format(c.residual) << "\n";
    }
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const Unsupported& e) {
    std::cerr << "unsupported: " << e.what() << "\n";
    return 2;
  } catch (const HypothesisError& e) {
    std::cerr << "unsupported: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
