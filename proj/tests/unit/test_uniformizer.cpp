// Copyright 2026 The unisheaf Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <random>

#include "gtest/gtest.h"
#include "test_util.hpp"
#include "unisheaf/lattice.hpp"
#include "unisheaf/uniformizer.hpp"

namespace unisheaf {
namespace {

using testing_util::all_elements;
using testing_util::count_roots;

struct Fixture {
  std::shared_ptr<Tower> tw;
  TateSystem T;
  Uniformizer U;
  Lattice L;
};

// Codes >= 0 are integers, -1 is the generator of F_q.
FieldElem theta_of(const Tower& tw, int code) { return code < 0 ? tw.fq_generator() : tw.from_int(code); }

Fixture carlitz_fixture(int p, int e, int theta, int depth = 7) {
  Fixture f;
  f.tw = Tower::create(p, e);
  f.T = tate_basis(DModule::carlitz(f.tw, theta_of(*f.tw, theta)), XPoint::rational(f.tw->zero()), depth);
  f.U = uniformizer_from_tate(f.T, depth + 1);
  f.L = lattice_from_uniformizer(f.U, 3, depth + 1 - 3);
  return f;
}

Fixture rank_two_fixture(int p, int theta, int g1, int g2, int depth, int budget = kDefaultBudgetBits) {
  Fixture f;
  f.tw = Tower::create(p, 1, budget);
  DModule m = DModule::drinfeld(f.tw, f.tw->from_int(theta), {f.tw->from_int(g1), f.tw->from_int(g2)});
  f.T = tate_basis(m, XPoint::rational(f.tw->zero()), depth);
  f.U = uniformizer_from_tate(f.T, f.T.depth + 1);
  f.L = lattice_from_uniformizer(f.U, 4, f.U.prec - 4);
  return f;
}

FieldElem power(FieldElem a, std::uint64_t k) {
  FieldElem r = a.tower().one();
  for (std::uint64_t i = 0; i < k; ++i) r *= a;
  return r;
}

SeriesMat random_gl_o(int n, const Level* zl, int prec, std::uint32_t p, std::mt19937_64& rng) {
  SeriesMat g(n, n, zl, prec);
  do {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        Series s(zl, 0, prec);
        for (int e = 0; e <= 2; ++e) s.set_coeff(e, zl->tower->from_int(int(rng() % p)));
        g.at(i, j) = s;
      }
    }
  } while (g.det().coeff(0).is_zero());
  return g;
}

void expect_same_line(const SeriesVec& a, const SeriesVec& b, bool exact = true) {
  LineComparison c = compare_lines(a, b);
  EXPECT_TRUE(c.proportional);
  EXPECT_GT(c.checked_to, 0);
  if (exact && c.proportional) EXPECT_TRUE(c.scalar.is_one()) << c.scalar.to_string();
}

TEST(Carlitz, ArtinSchreierCoefficientsOverF2) {
  auto tw = Tower::create(2, 1);
  Uniformizer c = carlitz_uniformizer(tw, tw->one(), 4);
  const Series& s = c.s()[0];
  EXPECT_TRUE(s.coeff(0).is_one());
  // a_1^2 + a_1 + 1 = 0 has no root in F_2 and two roots in F_4.
  FieldElem a1 = s.coeff(1);
  EXPECT_TRUE((a1 * a1 + a1 + tw->one()).is_zero());
  EXPECT_EQ(count_roots(tw->base_level(), [&](const FieldElem& z) { return z * z + z + tw->one(); }), 0u);
  EXPECT_EQ(a1.min_level()->dim, 2);
  // a_2^2 + a_2 = a_1 needs F_16.
  FieldElem a2 = s.coeff(2);
  EXPECT_TRUE((a2 * a2 + a2 + a1).is_zero());
  EXPECT_EQ(a2.min_level()->dim, 4);
  EXPECT_EQ(count_roots(a1.min_level(), [&](const FieldElem& z) { return z * z + z + a1.embed(z.level()); }), 0u);
}

// a_h^q = a_h - (theta - xi)^-1 a_(h-1), coefficient by coefficient.
TEST(Carlitz, RecursionAndFrobeniusRatio) {
  struct Case {
    int p, e, theta;
  };
  for (Case c : {Case{2, 1, 1}, Case{3, 1, 1}, Case{3, 1, 2}, Case{2, 2, 1}, Case{2, 2, -1}, Case{5, 1, 3}}) {
    auto tw = Tower::create(c.p, c.e);
    FieldElem theta = theta_of(*tw, c.theta);
    Uniformizer u = carlitz_uniformizer(tw, theta, 6);
    const Series& s = u.s()[0];
    FieldElem inv = tw->one() / theta;
    for (int h = 1; h < 6; ++h) {
      FieldElem lhs = power(s.coeff(h), tw->q());
      EXPECT_EQ(lhs, s.coeff(h) - inv * s.coeff(h - 1)) << "q=" << tw->q() << " h=" << h;
    }
    Series expected = Series::constant(tw->one(), 6) - Series::monomial(inv, 1, 6);
    EXPECT_TRUE(frobenius_ratio(s).agrees_with(expected));
    EXPECT_TRUE(master_invariant_holds(u));
  }
}

TEST(Carlitz, ShiftedPlace) {
  auto tw = Tower::create(3, 1);
  FieldElem theta = tw->from_int(2);
  FieldElem xi = tw->one();
  Uniformizer u = carlitz_uniformizer(tw, theta, xi, 5);
  FieldElem inv = tw->one() / (theta - xi);
  const Series& s = u.s()[0];
  for (int h = 1; h < 5; ++h) EXPECT_EQ(power(s.coeff(h), 3), s.coeff(h) - inv * s.coeff(h - 1));
  EXPECT_TRUE(master_invariant_holds(u));
  EXPECT_THROW(
      {
        try {
          carlitz_uniformizer(tw, theta, theta, 4);
        } catch (const Error& e) {
          EXPECT_EQ(e.code(), ErrorCode::kZeroTheta);
          throw;
        }
      },
      Error);
}

TEST(Carlitz, ZeroThetaRejected) {
  auto tw = Tower::create(2, 1);
  try {
    carlitz_uniformizer(tw, tw->zero(), 4);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kZeroTheta);
  }
}

TEST(RankOne, MatchesCarlitzAtMinusTheta) {
  for (int p : {2, 3, 5}) {
    auto tw = Tower::create(p, 1);
    FieldElem theta = tw->one();
    Uniformizer c = carlitz_uniformizer(tw, theta, 5);
    Uniformizer r = rank_one_uniformizer(tw, theta, -theta, tw->zero(), 5);
    EXPECT_TRUE(agrees(c.s(), r.s())) << "p=" << p;
  }
}

// sigma^* s = c^-1 (t - theta) s, so a_h^q = c^-1 (a_(h-1) - theta a_h).
TEST(RankOne, DifferenceEquation) {
  struct Case {
    int p, e, theta, c;
  };
  for (Case k : {Case{3, 1, 1, 2}, Case{3, 1, 2, 1}, Case{2, 2, 1, -1}, Case{5, 1, 2, 3}}) {
    auto tw = Tower::create(k.p, k.e);
    FieldElem theta = tw->from_int(k.theta);
    FieldElem c = theta_of(*tw, k.c);
    for (PickPolicy pol : {PickPolicy::kLexLeast, PickPolicy::kLexGreatest}) {
      Uniformizer u = rank_one_uniformizer(tw, theta, c, tw->zero(), 5, pol);
      const Series& s = u.s()[0];
      EXPECT_FALSE(s.coeff(0).is_zero());
      EXPECT_EQ(power(s.coeff(0), tw->q()), -(theta / c) * s.coeff(0));
      for (int h = 1; h < 5; ++h) {
        EXPECT_EQ(power(s.coeff(h), tw->q()), (s.coeff(h - 1) - theta * s.coeff(h)) / c);
      }
      EXPECT_TRUE(master_invariant_holds(u));
    }
  }
}

// S = r s with r a constant satisfying r^(q-1) = -theta, so r lies in F_q
// exactly when theta = -1.
TEST(Tate, CarlitzUniformizerUpToConstant) {
  struct Case {
    int p, e, theta;
  };
  for (Case c : {Case{2, 1, 1}, Case{3, 1, 1}, Case{3, 1, 2}, Case{2, 2, 1}, Case{2, 2, -1}}) {
    Fixture f = carlitz_fixture(c.p, c.e, c.theta);
    FieldElem theta = theta_of(*f.tw, c.theta);
    EXPECT_TRUE(master_invariant_holds(f.U));
    Uniformizer cz = carlitz_uniformizer(f.tw, theta, 6);
    UnitRatio r = unit_ratio(f.U.s(), cz.s(), 0);
    ASSERT_TRUE(r.consistent);
    EXPECT_TRUE(r.constant);
    FieldElem u0 = r.ratio.coeff(0);
    EXPECT_EQ(power(u0, f.tw->q() - 1), -theta);
    EXPECT_EQ(r.over_fq, (theta + f.tw->one()).is_zero()) << theta.to_string();
  }
}

TEST(Tate, InvariantOnSeveralModules) {
  Fixture a = rank_two_fixture(2, 1, 0, 1, 8);
  EXPECT_TRUE(master_invariant_holds(a.U));
  Fixture b = rank_two_fixture(3, 1, 1, 1, 6);
  EXPECT_TRUE(master_invariant_holds(b.U));

  auto tw = Tower::create(2, 1);
  DModule c = DModule::carlitz(tw, tw->one());
  std::vector<FieldElem> pc = {tw->one(), tw->one(), tw->one()};
  XPoint x = XPoint::from_poly(Poly(pc, tw->base_level()));
  TateSystem T = tate_basis(c, x, 3);
  Uniformizer u = uniformizer_from_tate(T);
  EXPECT_EQ(u.f, 2);
  EXPECT_EQ(static_cast<int>(u.s().size()), 2);
  EXPECT_TRUE(master_invariant_holds(u));
}

TEST(Tate, TensorSquareInvariant) {
  auto tw = Tower::create(2, 1);
  const Level* zl = tw->prime_level();
  OreMat phi(2, zl);
  phi.at(0, 0) = OrePoly::constant(tw->one());
  phi.at(0, 1) = OrePoly::constant(tw->one());
  phi.at(1, 0) = OrePoly::sigma_power(1, tw->one());
  phi.at(1, 1) = OrePoly::constant(tw->one());
  DModule m = DModule::t_module(tw, phi, 1);
  TateSystem T = tate_basis(m, XPoint::rational(tw->zero()), 3);
  Uniformizer u = uniformizer_from_tate(T);
  EXPECT_EQ(u.k, 2);
  EXPECT_EQ(u.n, 1);
  EXPECT_EQ(static_cast<int>(u.series.size()), 2);
  EXPECT_TRUE(master_invariant_holds(u));
}

TEST(Tate, DepthTooShallow) {
  auto tw = Tower::create(2, 1);
  TateSystem T = tate_basis(DModule::carlitz(tw, tw->one()), XPoint::rational(tw->zero()), 3);
  try {
    uniformizer_from_tate(T, 10);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDepthTooShallow);
  }
}

TEST(Invariant, DetectsCorruption) {
  Fixture f = carlitz_fixture(3, 1, 1, 5);
  Uniformizer bad = f.U;
  Series s = bad.series[0][0];
  s.set_coeff(3, s.coeff(3) + f.tw->one());
  bad.series[0][0] = s;
  std::vector<int> fails = master_invariant_failures(bad);
  ASSERT_FALSE(fails.empty());
  EXPECT_EQ(fails.front(), 3);
}

TEST(GlAction, ScalarAndUnitMatrices) {
  Fixture f = rank_two_fixture(2, 1, 0, 1, 10);
  const Level* zl = f.tw->prime_level();
  const int P = 40;
  // t^-1 acts trivially on lines.
  expect_same_line(gl_action(f.U, SeriesMat::diagonal_monomials({-1, -1}, zl, P), f.L).s(), f.U.s());
  expect_same_line(gl_action(f.U, SeriesMat::identity(2, zl, P), f.L).s(), f.U.s());
  std::mt19937_64 rng(11);
  for (int it = 0; it < 3; ++it) {
    SeriesMat g = random_gl_o(2, zl, P, 2, rng);
    expect_same_line(gl_action(f.U, g, f.L).s(), g.apply(f.U.s()));
  }
}

TEST(GlAction, RoutesAgree) {
  Fixture f = rank_two_fixture(3, 1, 0, 2, 8, 100);
  const Level* zl = f.tw->prime_level();
  std::mt19937_64 rng(5);
  for (std::vector<int> ex : {std::vector<int>{-1, 0}, {0, -1}, {-2, 0}, {1, -1}, {-1, -1}}) {
    SeriesMat g = random_gl_o(2, zl, 40, 3, rng) * SeriesMat::diagonal_monomials(ex, zl, 40);
    Uniformizer a = gl_action(f.U, g, f.L);
    Uniformizer b = gl_action_direct(f.U, g);
    expect_same_line(a.s(), b.s());
  }
}

// (s^beta)^gamma = gamma s^beta for gamma in GL_n(K[[t]]).
TEST(GlAction, LeftUnitsCommute) {
  Fixture f = rank_two_fixture(2, 1, 1, 1, 10);
  const Level* zl = f.tw->prime_level();
  std::mt19937_64 rng(3);
  SeriesMat beta = SeriesMat::diagonal_monomials({-1, 0}, zl, 40);
  Uniformizer sb = gl_action(f.U, beta, f.L);
  for (int it = 0; it < 3; ++it) {
    SeriesMat gamma = random_gl_o(2, zl, 40, 2, rng);
    Uniformizer sgb = gl_action(f.U, gamma * beta, f.L);
    expect_same_line(sgb.s(), gamma.apply(sb.s()));
  }
}

TEST(GlAction, ShapeOfDiagonal) {
  auto tw = Tower::create(2, 1);
  const Level* zl = tw->prime_level();
  ActionShape a = action_shape(SeriesMat::diagonal_monomials({-1, 2}, zl, 20), 2);
  EXPECT_EQ(a.l, 1);
  EXPECT_EQ(a.m, 2);
  ActionShape b = action_shape(SeriesMat::diagonal_monomials({-3, 0}, zl, 20), 2);
  EXPECT_EQ(b.l, -3);
  EXPECT_EQ(b.m, 0);
  ActionShape c = action_shape(SeriesMat::diagonal_monomials({2, 1}, zl, 20), 2);
  EXPECT_EQ(c.l, 3);
  EXPECT_EQ(c.m, 2);
}

TEST(Moore, CarlitzMatchesLattice) {
  Fixture f = carlitz_fixture(3, 1, 1);
  const Level* zl = f.tw->prime_level();
  for (int r : {-1, -2}) {
    MooreResult mo = moore_formula(f.U, 0, r, f.T);
    Uniformizer g = gl_action(f.U, beta_ir(1, 0, r, zl, 40), f.L);
    expect_same_line(mo.normalized, g.s());
    expect_same_line(mo.raw, g.s(), false);
  }
}

TEST(Moore, RankTwoMatchesLattice) {
  Fixture f = rank_two_fixture(2, 1, 0, 1, 10);
  const Level* zl = f.tw->prime_level();
  for (int xi = 0; xi < 2; ++xi) {
    for (int r : {-1, -2}) {
      MooreResult mo = moore_formula(f.U, xi, r, f.T);
      Uniformizer g = gl_action(f.U, beta_ir(2, xi, r, zl, 40), f.L);
      expect_same_line(mo.normalized, g.s());
    }
  }
}

TEST(BasisFamily, RankGrowsByN) {
  Fixture f = rank_two_fixture(2, 1, 1, 1, 10);
  const Level* zl = f.tw->prime_level();
  for (int h = 0; h <= 3; ++h) {
    std::vector<SeriesVec> fam = basis_family(f.U, h);
    for (SeriesVec& v : fam) v = truncated(v, 2);
    EXPECT_EQ(Lattice::from_series(2, -h, 2, fam, zl, "family").dim(), 2 * h + 1) << "h=" << h;
  }
}

TEST(BasisFamily, CarlitzIsPowersOfU) {
  Fixture f = carlitz_fixture(2, 1, 1);
  std::vector<SeriesVec> fam = basis_family(f.U, 3);
  ASSERT_EQ(fam.size(), 4u);
  for (int r = 0; r <= 3; ++r) expect_same_line(fam[r], shifted(f.U.s(), -r), false);
}

TEST(Baker, UnitMatricesGiveS) {
  Fixture f = rank_two_fixture(3, 1, 1, 1, 8, 100);
  std::mt19937_64 rng(17);
  for (int it = 0; it < 3; ++it) {
    BakerResult b = baker(f.U, random_gl_o(2, f.tw->prime_level(), 40, 3, rng), f.L);
    EXPECT_TRUE(b.routes_agree);
    EXPECT_TRUE(agrees(b.psi, f.U.s()));
    EXPECT_EQ(b.l, 0);
  }
}

TEST(Baker, PsiLiesInLattice) {
  Fixture f = rank_two_fixture(2, 1, 0, 1, 10);
  const Level* zl = f.tw->prime_level();
  std::mt19937_64 rng(23);
  for (std::vector<int> ex : {std::vector<int>{1, 0}, {2, -1}, {0, 1}, {1, 1}}) {
    SeriesMat g = random_gl_o(2, zl, 40, 2, rng) * SeriesMat::diagonal_monomials(ex, zl, 40);
    BakerResult b = baker(f.U, g, f.L);
    EXPECT_TRUE(b.routes_agree);
    EXPECT_TRUE(b.in_lattice);
    EXPECT_TRUE(b.a0_units);
    EXPECT_EQ(b.l, ex[0] + ex[1]);
  }
}

TEST(Baker, IndependentOfWindow) {
  Fixture f = rank_two_fixture(2, 1, 0, 1, 10);
  const Level* zl = f.tw->prime_level();
  Lattice other = lattice_from_uniformizer(f.U, 3, f.U.prec - 3);
  SeriesMat g = SeriesMat::diagonal_monomials({1, 0}, zl, 40);
  BakerResult a = baker(f.U, g, f.L);
  BakerResult b = baker(f.U, g, other);
  expect_same_line(a.psi, b.psi);
}

TEST(Errors, WindowTooSmall) {
  Fixture f = carlitz_fixture(2, 1, 1, 5);
  SeriesVec v = shifted(f.U.s(), -10);
  try {
    f.L.contains(v);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kWindowTooSmall);
  }
}

TEST(Errors, SigmaCoordinatesOutsideSpan) {
  Fixture f = carlitz_fixture(2, 1, 1, 5);
  SeriesVec v = {Series::monomial(f.tw->one(), 1, 6)};
  try {
    sigma_coordinates(f.U, v, 0, 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kRankNotOne);
  }
}

}  // namespace
}  // namespace unisheaf
