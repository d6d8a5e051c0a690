#include "support.hpp"

#include <plde/dispersion.hpp>

#include <gtest/gtest.h>

#include <set>

using namespace plde;
using namespace plde::testing;

TEST(Invariance, Examples) {
  EXPECT_EQ(invariance_lattice(P("k+n+1")), L("1,-1"));
  EXPECT_EQ(invariance_lattice(P("n*k+1")), L("0"));
  EXPECT_EQ(invariance_lattice(P("2*n-3*k")), L("3,2"));
  EXPECT_EQ(invariance_lattice(P("2*k+3*n+1")), L("2,-3"));
  EXPECT_EQ(invariance_lattice(P("n^2+n+1")), L("0,1"));
  EXPECT_EQ(invariance_lattice(P("(n+k)^2+3*n+3*k+1")), L("1,-1"));
  EXPECT_EQ(invariance_lattice(P("n+k+m", nkm())), L("1,-1,0;1,0,-1", 3));
  EXPECT_THROW(invariance_lattice(P("7")), InputError);
}

TEST(Invariance, SpreadOfExampleFactor) {
  // 4k-2n+1 is invariant under (n,k) -> (n+2,k+1).
  Poly p = P("4*k-2*n+1");
  EXPECT_EQ(p.shift(IntVec{2, 1}), p);
  EXPECT_EQ(invariance_lattice(p), L("2,1"));
}

TEST(ShiftEquiv, Examples) {
  EXPECT_EQ(shift_equiv(P("k+n+1"), P("k+n+3")), ShiftCoset({-2, 0}, L("1,-1")));
  EXPECT_EQ(shift_equiv(P("n^2+3*n+3"), P("n^2+n+1")), ShiftCoset({1, 0}, L("0,1")));
  EXPECT_TRUE(shift_equiv(P("k+n+1"), P("n*k+1")).is_empty());
  EXPECT_TRUE(shift_equiv(P("k+n+1"), P("2*k+3*n+1")).is_empty());
  Poly p = P("n*k+1");
  EXPECT_EQ(spread_pair(p, p), ShiftCoset({0, 0}, invariance_lattice(p)));
  // non-integral solution of the linear layer
  EXPECT_TRUE(shift_equiv(P("2*n+1"), P("2*n")).is_empty());
  // lower layers contradict the linear one
  EXPECT_TRUE(shift_equiv(P("n^2+k"), P("n^2+k+n")).is_empty());
  EXPECT_EQ(shift_equiv(P("n^2+k"), P("n^2+2*n+k+5")), ShiftCoset({-1, -4}, L("0")));
}

TEST(Dispersion, Examples) {
  auto fp = [](const std::string& t) { return FactoredPoly::of(P(t), 1, Irreducibility::declared); };
  EXPECT_EQ(disp_k(fp("k+n+1"), fp("k+n+1"), 0), Dispersion::infinity());
  EXPECT_EQ(disp_k(fp("n*k+1"), fp("n*k+1"), 0), Dispersion::finite(0));
  EXPECT_EQ(disp_k(fp("n+1"), fp("n+3"), 0), Dispersion::finite(2));
  EXPECT_EQ(disp_k(fp("n+1"), fp("k+3"), 0), Dispersion::neg_infinity());
  EXPECT_EQ(disp_k(FactoredPoly::one(nk()), fp("k+3"), 1), Dispersion::neg_infinity());
}

TEST(BoxOracle, Examples) {
  auto hits = spread_box_oracle(P("k+n+1"), P("k+n+1"), 3);
  std::vector<IntVec> expect;
  for (int i = -3; i <= 3; ++i) expect.push_back({i, -i});
  std::sort(hits.begin(), hits.end());
  std::sort(expect.begin(), expect.end());
  EXPECT_EQ(hits, expect);
  EXPECT_EQ(spread_box_oracle(P("n*k+1"), P("n*k+1"), 2), (std::vector<IntVec>{{0, 0}}));
  EXPECT_TRUE(spread_box_oracle(P("k+n+1"), P("2*k+3*n+1"), 3).empty());
}

namespace {

// Irreducible building blocks: linear forms and quadratics certified by the
// factored module, with random shifts applied.
Poly random_irreducible(std::mt19937_64& rng, const VarList& v) {
  static const std::vector<std::string> base2 = {"n+k", "2*n-3*k", "n", "k+2", "n*k+1", "n^2+n+1",
                                                  "n^2+k", "(n+k)^2+n+k+1", "n^2+2*k^2+1", "n*k+n+1"};
  static const std::vector<std::string> base3 = {"n+k+m", "n-m", "n*k+m", "n^2+k+m", "(n+m)^2+k^2+1",
                                                  "n*m+k", "2*n+3*k-m+1"};
  const auto& pool = v.size() == 2 ? base2 : base3;
  Poly p = parse_poly(pool[std::uniform_int_distribution<std::size_t>(0, pool.size() - 1)(rng)], v);
  p = p.shift(random_vec(rng, v.size(), 2));
  return normalize(p);
}

bool in_coset_box(const ShiftCoset& c, const IntVec& s) { return c.contains(s); }

}  // namespace

TEST(SpreadProperties, MatchesBoxOracle) {
  std::mt19937_64 rng(808);
  for (int i = 0; i < 220; ++i) {
    auto v = i % 4 == 3 ? nkm() : nk();
    Poly p = random_irreducible(rng, v);
    // q: either a shift of p (shift-equivalent) or an unrelated factor
    Poly q = i % 2 ? normalize(p.shift(random_vec(rng, v.size(), 3))) : random_irreducible(rng, v);
    const int radius = 3;
    auto hits = spread_box_oracle(p, q, radius);
    auto coset = spread_pair(p, q);
    std::set<IntVec> hit_set(hits.begin(), hits.end());
    IntVec s(v.size(), -radius);
    // enumerate the same box and compare membership
    std::function<void(std::size_t)> walk = [&](std::size_t d) {
      if (d == v.size()) {
        EXPECT_EQ(in_coset_box(coset, s), hit_set.count(s) > 0) << format(p) << " / " << format(q);
        return;
      }
      for (int x = -radius; x <= radius; ++x) {
        s[d] = x;
        walk(d + 1);
      }
    };
    walk(0);
  }
}

TEST(SpreadProperties, CosetStructureAndSymmetry) {
  std::mt19937_64 rng(909);
  for (int i = 0; i < 220; ++i) {
    auto v = i % 3 == 2 ? nkm() : nk();
    Poly p = random_irreducible(rng, v);
    IntVec t = random_vec(rng, v.size(), 4);
    Poly q = normalize(p.shift(t));
    auto c = shift_equiv(p, q);
    ASSERT_FALSE(c.is_empty());
    // q(n + s) ~ p(n) for s = -t
    EXPECT_TRUE(c.contains(-t));
    EXPECT_EQ(c.lattice(), invariance_lattice(q));
    for (const auto& g : c.lattice().basis()) EXPECT_EQ(q.shift(g), q);
    auto back = shift_equiv(q, p);
    EXPECT_TRUE(back.contains(t));
    EXPECT_TRUE(back.contains(-c.base()));
    EXPECT_TRUE(is_saturated(invariance_lattice(p)));
  }
}

TEST(SpreadProperties, FirstProjectionUnique) {
  // factors whose invariance lattice lies in {0}^t x Z^(r-t) have a single
  // first-t projection in any pair spread
  std::mt19937_64 rng(1010);
  const std::vector<std::string> pool2 = {"n^2+n+1", "n+1", "2*n+1", "n^2+3", "n*k+1", "n^2*k+k+1"};
  const std::vector<std::string> pool3 = {"n+1", "n^2+k+1", "n*k+1", "n+k", "2*n+k", "n*m+k"};
  int checked = 0;
  for (int i = 0; checked < 220; ++i) {
    bool three = i % 2;
    auto v = three ? nkm() : nk();
    std::size_t t = three ? 2 : 1;
    const auto& pool = three ? pool3 : pool2;
    auto pick = [&] { return parse_poly(pool[std::uniform_int_distribution<std::size_t>(0, pool.size() - 1)(rng)], v); };
    Poly u = normalize(pick().shift(random_vec(rng, v.size(), 3)));
    Poly w = i % 3 ? normalize(u.shift(random_vec(rng, v.size(), 3))) : normalize(pick());
    IntMat tail;
    for (std::size_t j = t; j < v.size(); ++j) {
      IntVec e(v.size(), 0);
      e[j] = 1;
      tail.push_back(e);
    }
    IntLattice w_norm = IntLattice::from_rows(v.size(), tail);
    if (!invariance_lattice(u).is_sublattice_of(w_norm) || !invariance_lattice(w).is_sublattice_of(w_norm)) continue;
    ++checked;
    auto c = shift_equiv(u, w);
    if (c.is_empty()) continue;
    for (const auto& g : c.lattice().basis())
      for (std::size_t j = 0; j < t; ++j) EXPECT_EQ(g[j], 0);
    for (std::size_t j = 0; j < t; ++j) EXPECT_EQ(coset_dispersion(c, j).kind, Dispersion::Kind::finite);
  }
}
