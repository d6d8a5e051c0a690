#include "support.hpp"

#include <gtest/gtest.h>

#include <chrono>

using namespace plde;
using namespace plde::testing;

namespace {

FactoredPoly F(const std::vector<std::string>& factors, const VarList& v = nk()) {
  std::vector<Factor> fs;
  for (const auto& f : factors) fs.push_back(Factor{P(f, v), 1, Irreducibility::declared});
  return FactoredPoly(v, 1, fs);
}

// Equal up to associates: same canonical factors with the same multiplicities.
void expect_same_factors(const FactoredPoly& a, const FactoredPoly& b) {
  EXPECT_EQ(a.with_unit(1), b.with_unit(1)) << format(a) << " vs " << format(b);
}

WitnessCertificate cert_for(const Plde& eq, IntVec p, IntVec pp, const IntLattice& w) {
  auto c = witness_for_pair(eq.support(), p, pp, w);
  if (!c) throw std::runtime_error("no certificate");
  return *c;
}

const std::vector<InstanceProfile> kProfiles = {InstanceProfile::cleared, InstanceProfile::two_term,
                                                InstanceProfile::polynomial, InstanceProfile::aperiodic};

}  // namespace

TEST(DispersionBound, SystemFrames) {
  auto mb = bound_for_module(sys1(), L("1,-1"), cert_for(sys1(), {0, 0}, {1, 1}, L("1,-1")));
  EXPECT_EQ(mb.frame.m.matrix()[0], (IntVec{1, 1}));
  EXPECT_EQ(mb.s, Dispersion::finite(2));

  auto c2 = cert_for(sys1(), {0, 0}, {1, 1}, L("2,-3"));
  EXPECT_EQ(c2.u, (IntVec{3, 2}));
  EXPECT_EQ(bound_for_module(sys1(), L("2,-3"), c2).s, Dispersion::finite(0));

  auto c3 = cert_for(sys2(), {0, 1}, {2, 1}, L("0,1"));
  EXPECT_EQ(c3.u, (IntVec{1, 0}));
  auto mb3 = bound_for_module(sys2(), L("0,1"), c3);
  EXPECT_EQ(mb3.frame.m, UnimodularMatrix::identity(2));
  EXPECT_EQ(mb3.s, Dispersion::finite(1));
}

TEST(DispersionBound, DirectFrameSys2) {
  // identity frame, already normalized
  EXPECT_EQ(dispersion_bound(sys2(), 1, true), Dispersion::finite(1));
  // no W-periodic factors for W = (0,1)Z when only aperiodic content is kept
  auto eq = E({{{0, 0}, 1, {"n*k+1"}}, {{1, 0}, 1, {"n*k+2"}}});
  EXPECT_EQ(dispersion_bound(eq, 1, true), Dispersion::neg_infinity());
}

TEST(DispersionBound, HypothesisViolationIsLoud) {
  // B = {(1,0),(1,1)} agree in the first coordinate
  try {
    dispersion_bound(normalized_ex1(), 1, true);
    FAIL();
  } catch (const HypothesisError& e) {
    EXPECT_NE(std::string(e.what()).find("(1,0)"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("(1,1)"), std::string::npos);
  }
  auto shifted = E({{{-1, 0}, 1, {}}, {{0, 0}, 1, {}}});
  EXPECT_THROW(dispersion_bound(shifted, 1, true), HypothesisError);
}

TEST(StripRewrite, Examples) {
  auto mb = bound_for_module(sys1(), L("1,-1"), cert_for(sys1(), {0, 0}, {1, 1}, L("1,-1")));
  ASSERT_TRUE(mb.strip.has_value());
  EXPECT_EQ(mb.strip->rminus.size(), 6u);
  expect_same_factors(mb.d, F({"n+k+1", "n+k+2", "n+k+3"}));

  auto mb2 = bound_for_module(sys2(), L("0,1"), cert_for(sys2(), {0, 1}, {2, 1}, L("0,1")));
  EXPECT_EQ(mb2.strip->rminus, (std::vector<IntVec>{{0, 1}, {1, 0}, {1, 2}}));
  expect_same_factors(mb2.d, F({"n^2+n+1", "n^2+3*n+3"}));

  // s = 0: nothing is substituted
  const Plde& fr = mb.eq_frame;
  auto st = strip_rewrite(fr, mb.p_frame, Dispersion::finite(0));
  EXPECT_EQ(st.rminus, (std::vector<IntVec>{mb.p_frame}));
  expect_same_factors(st.d_actual, fr.coefficient(mb.p_frame));
  auto neg = strip_rewrite(fr, mb.p_frame, Dispersion::neg_infinity());
  EXPECT_EQ(neg.rminus.size(), 1u);
  EXPECT_EQ(neg.rplus.size(), 3u);

  EXPECT_THROW(strip_rewrite(normalized_ex1(), {1, 0}, Dispersion::finite(1)), HypothesisError);
}

TEST(StripRewrite, IdentityHoldsForKnownSolution) {
  auto y = system_solution();
  ASSERT_TRUE(check_solution(sys1(), y).ok);
  ASSERT_TRUE(check_solution(sys2(), y).ok);
  auto mb = bound_for_module(sys1(), L("1,-1"), cert_for(sys1(), {0, 0}, {1, 1}, L("1,-1")));
  auto y_frame = act_on_rational(mb.frame.m.inverse(), y);
  ASSERT_TRUE(check_solution(mb.eq_frame, y_frame).ok);
  for (int s = 0; s <= 3; ++s) {
    auto st = strip_rewrite(mb.eq_frame, mb.p_frame, Dispersion::finite(s));
    EXPECT_TRUE(strip_identity_residual(st, y_frame).is_zero()) << s;
  }
}

TEST(ModuleBound, Examples) {
  expect_same_factors(*module_bound(sys1(), L("1,-1")), F({"n+k+1", "n+k+2", "n+k+3"}));
  expect_same_factors(*module_bound(sys1(), L("2,-3")), F({"3*n+2*k+1"}));
  expect_same_factors(*module_bound(sys2(), L("0,1")), F({"n^2+n+1", "n^2+3*n+3"}));

  auto c = cert_for(ex1(), {1, 0}, {0, 1}, L("1,2"));
  EXPECT_EQ(c.u, (IntVec{-2, 1}));
  EXPECT_EQ(c.min_face, (Support{{1, 0}}));
  EXPECT_EQ(c.max_face, (Support{{0, 1}}));
  EXPECT_TRUE(bound_for_module(ex1(), L("1,2"), c).d.is_constant());
  EXPECT_TRUE(module_bound(ex1(), L("1,2"))->is_constant());

  // no useful pair
  EXPECT_FALSE(module_bound(ex1(), L("1,-1")).has_value());
}

TEST(ModuleBound, CoarseIsAMultipleOfRefined) {
  BoundOptions coarse;
  coarse.coarse = true;
  for (const auto& [eq, w] : std::vector<std::pair<Plde, IntLattice>>{
           {sys1(), L("1,-1")}, {sys1(), L("2,-3")}, {sys2(), L("0,1")}}) {
    auto fine = *module_bound(eq, w);
    auto big = *module_bound(eq, w, coarse);
    EXPECT_TRUE(fp_divide(big, fine).has_value()) << format(big) << " / " << format(fine);
  }
  // the literal product repeats factors
  auto big = *module_bound(sys1(), L("1,-1"), coarse);
  EXPECT_GT(big.multiplicity_of(P("n+k+2")), 1);
}

TEST(AperiodicBound, Examples) {
  EXPECT_TRUE(aperiodic_bound(sys1()).is_constant());
  EXPECT_TRUE(aperiodic_bound(ex1()).is_constant());
  // y = 1/(n*k+1) with a two-term equation
  auto eq = E({{{0, 0}, 1, {"n*k+1"}}, {{1, 1}, -1, {"(n+1)*(k+1)+1"}}});
  ASSERT_TRUE(check_solution(eq, RF("1/(n*k+1)")).ok);
  auto d = aperiodic_bound(eq);
  EXPECT_EQ(d.multiplicity_of(P("n*k+1")), 1) << format(d);
}

TEST(CombinedBound, System) {
  auto t0 = std::chrono::steady_clock::now();
  auto r1 = combined_bound(sys1());
  auto r2 = combined_bound(sys2());
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  EXPECT_LT(secs, 30.0);

  expect_same_factors(r1.d, F({"n+k+1", "n+k+2", "n+k+3", "3*n+2*k+1"}));
  EXPECT_EQ(format(r1.d), "(n+k+1)*(n+k+2)*(n+k+3)*(3*n+2*k+1)");
  EXPECT_TRUE(r1.p_set.empty());
  EXPECT_EQ(r1.uncovered, (std::vector<IntLattice>{L("0,1"), L("1,0")}));

  expect_same_factors(r2.d, F({"n^2+n+1", "n^2+3*n+3", "3*n+2*k+1"}));
  EXPECT_TRUE(r2.p_set.empty());
  EXPECT_EQ(r2.uncovered, (std::vector<IntLattice>{L("1,-1"), L("1,1")}));

  auto all = lcm_combine(nk(), {{IntLattice::full(2), r1.d}, {IntLattice::full(2), r2.d}});
  FactoredPoly den = F({"n+k+1", "n+k+2", "n+k+3", "n^2+n+1", "n^2+3*n+3", "3*n+2*k+1"});
  EXPECT_EQ(den.expand(), system_solution().den());
  EXPECT_TRUE(fp_divide(all, den).has_value());
  BoundReport joint{all, {}, {}, {}, {}};
  for (const auto& v : check_bound_covers(sys1(), den, joint)) {
    if (v.kind == ModuleKind::in_u) {
      EXPECT_EQ(v.case_number, 1) << format(v.factor);
    }
  }
}

TEST(CombinedBound, Example1And2) {
  auto r = combined_bound(ex1());
  EXPECT_EQ(r.p_set, (std::vector<Poly>{P("k+n+1")}));
  EXPECT_TRUE(r.d.is_constant());
  auto v = check_bound_covers(ex1(), F({"k+n+1"}), r);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].case_number, 2);

  auto r2 = combined_bound(ex2());
  auto v2 = check_bound_covers(ex2(), F({"k+n+1"}), r2);
  EXPECT_EQ(v2[0].case_number, 3);
  EXPECT_EQ(v2[0].kind, ModuleKind::uncovered);
}

TEST(CombinedBound, Deterministic) {
  auto a = combined_bound(sys2()), b = combined_bound(sys2());
  EXPECT_EQ(a.d, b.d);
  ASSERT_EQ(a.modules.size(), b.modules.size());
  for (std::size_t i = 0; i < a.modules.size(); ++i) {
    EXPECT_EQ(a.modules[i].w, b.modules[i].w);
    EXPECT_EQ(a.modules[i].d_w, b.modules[i].d_w);
  }
  EXPECT_EQ(a.uncovered, b.uncovered);
}

TEST(CombinedBound, WarnsOnUnverifiedFactors) {
  std::map<IntVec, FactoredPoly> terms;
  terms.emplace(IntVec{0, 0}, FactoredPoly::of(P("n^2+k^2+1")));
  terms.emplace(IntVec{1, 0}, FactoredPoly::of(P("n+1")));
  Plde eq(nk(), terms, P("0"));
  auto r = combined_bound(eq);
  ASSERT_FALSE(r.warnings.empty());
  EXPECT_NE(r.warnings[0].find("n^2+k^2+1"), std::string::npos);
}

TEST(LcmCombine, Examples) {
  EXPECT_EQ(lcm_combine(nk(), {}), FactoredPoly::one(nk()));
  auto d = F({"n+1", "k+1"});
  EXPECT_EQ(lcm_combine(nk(), {{L("1,0"), d}}), d);
}

TEST(PartialMultiple, Examples) {
  auto one = FactoredPoly::one(nk());
  EXPECT_EQ(partial_multiple(one, {P("k+n+1")}, {{0, 0}}, 1).expand(), P("k+n+1"));
  EXPECT_EQ(partial_multiple(one, {P("k+n+1")}, {{0, 0}, {0, 1}}, 2).expand(), P("(k+n+1)^2*(k+n+2)^2"));
  auto d = F({"n+1"});
  EXPECT_EQ(partial_multiple(d, {}, {{0, 0}}, 3), d);
  EXPECT_THROW(partial_multiple(d, {}, {{0, 0}}, 0), InputError);
}

TEST(BoundProperties, StripRunsOnGeneratedInstances) {
  int runs = 0;
  for (int i = 0; i < 240; ++i) {
    auto inst = random_instance(50000 + i, kProfiles[i % 4]);
    Support s = inst.eq.support();
    std::vector<IntLattice> modules{IntLattice::zero(inst.eq.r())};
    for (const auto& f : inst.den.factors()) modules.push_back(invariance_lattice(f.poly));
    for (const auto& w : modules) {
      for (const auto& cert : useful_pairs(s, w)) {
        auto mb = bound_for_module(inst.eq, w, cert);
        if (!mb.strip) continue;
        ++runs;
        const auto& st = *mb.strip;
        // the rewrite is an identity once the frame solution is substituted
        auto y_frame = act_on_rational(mb.frame.m.inverse(), inst.y);
        EXPECT_TRUE(check_solution(mb.eq_frame, y_frame).ok);
        EXPECT_TRUE(strip_identity_residual(st, y_frame).is_zero()) << i;
        EXPECT_TRUE(fp_divide(st.product, st.d_actual).has_value()) << i;
        for (const auto& x : st.rplus) EXPECT_GT(x[0] - st.p[0], st.s.is_finite() ? st.s.value : -1) << i;
        for (const auto& x : st.rminus) EXPECT_LE(x[0] - st.p[0], st.s.value) << i;
      }
    }
  }
  EXPECT_GE(runs, 200);
}

TEST(BoundProperties, CoverCasesExhaustiveAndExclusive) {
  int factors = 0;
  std::map<int, int> seen;
  for (int i = 0; i < 240; ++i) {
    auto inst = random_instance(60000 + i, kProfiles[i % 4]);
    auto rep = combined_bound(inst.eq);
    for (const auto& v : check_bound_covers(inst.eq, inst.den, rep)) {
      ++factors;
      ++seen[v.case_number];
      EXPECT_NE(v.case_number, 0) << "instance " << i << " factor " << format(v.factor) << " kind "
                                  << to_string(v.kind) << " d=" << format(rep.d);
    }
  }
  EXPECT_GE(factors, 200);
  EXPECT_GT(seen[1], 0);
}

TEST(BoundProperties, LcmSoundOnTwoModuleSolutions) {
  std::mt19937_64 rng(8080);
  std::uniform_int_distribution<int> c(-3, 3);
  int checked = 0;
  for (int i = 0; checked < 200 && i < 2000; ++i) {
    Poly w1 = Poly::linear(nk(), {1, c(rng)}, c(rng)), w2 = Poly::linear(nk(), {c(rng), 1}, c(rng));
    IntLattice m1 = invariance_lattice(w1), m2 = invariance_lattice(w2);
    if (m1 == m2) continue;
    FactoredPoly den = FactoredPoly::of(w1, 1, Irreducibility::declared) * FactoredPoly::of(w2, 1, Irreducibility::declared);
    den = den.with_unit(1);
    // y = 1/(w1 w2) from a_s = N^s(w1 w2) h_s on a triangle support
    std::map<IntVec, FactoredPoly> terms;
    Poly rhs(nk());
    for (const auto& s : Support{{0, 0}, {1, 0}, {0, 1}}) {
      Rational h = c(rng) == 0 ? 1 : c(rng) + 4;
      terms.emplace(s, den.shift(s).with_unit(h));
      rhs += Poly::constant(nk(), h);
    }
    Plde eq(nk(), terms, rhs);
    RationalFunction y(Poly::constant(nk(), 1), den.expand());
    ASSERT_TRUE(check_solution(eq, y).ok);
    Support s = eq.support();
    if (classify_module(s, m1).kind != ModuleKind::in_u || classify_module(s, m2).kind != ModuleKind::in_u) continue;
    auto d = lcm_combine(nk(), {{m1, *module_bound(eq, m1)}, {m2, *module_bound(eq, m2)}});
    ++checked;
    EXPECT_TRUE(fp_divide(d, den).has_value()) << format(w1) << ", " << format(w2) << " -> " << format(d);
  }
  EXPECT_EQ(checked, 200);
}
