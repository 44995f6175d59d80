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
#include "unisheaf/drinfeld.hpp"

namespace unisheaf {
namespace {

using testing_util::all_elements;
using testing_util::random_element;

Poly random_fq_poly(const Tower& tw, int degree, std::mt19937_64& rng) {
  std::vector<FieldElem> c;
  for (int i = 0; i <= degree; ++i) c.push_back(random_element(tw.base_level(), rng));
  return Poly(c, tw.base_level());
}

Poly t_poly(const Tower& tw, std::initializer_list<int> coeffs) {
  std::vector<FieldElem> c;
  for (int v : coeffs) c.push_back(tw.from_int(v));
  return Poly(c, tw.base_level());
}

DModule rank_two(std::shared_ptr<Tower> tw, int theta, int g1, int g2) {
  return DModule::drinfeld(tw, tw->from_int(theta), {tw->from_int(g1), tw->from_int(g2)});
}

// F_q-span dimension of a set of points, computed over F_p.
int fq_span_dim(const std::vector<Point>& pts, const Level* level) {
  const Tower& tw = *level->tower;
  std::vector<FpVec> rows;
  FieldElem w = tw.one();
  for (int j = 0; j < tw.e(); ++j) {
    for (const Point& z : pts) {
      Point s = z;
      for (FieldElem& c : s) c *= w;
      rows.push_back(flatten(s, level));
    }
    w *= tw.fq_generator();
  }
  const int k = pts.empty() ? 1 : static_cast<int>(pts[0].size());
  return fp_rref(rows, k * level->dim, level->p).rank() / tw.e();
}

TEST(PhiOf, CarlitzExamples) {
  auto tw = Tower::create(2, 1);
  DModule c = DModule::carlitz(tw, tw->one());
  OrePoly t2 = phi_of(c, t_poly(*tw, {0, 0, 1})).at(0, 0);
  EXPECT_EQ(t2, OrePoly::sigma_power(2, tw->one()) + OrePoly::constant(tw->one()));
  OrePoly t2t = phi_of(c, t_poly(*tw, {0, 1, 1})).at(0, 0);
  EXPECT_EQ(t2t, OrePoly::sigma_power(2, tw->one()) + OrePoly::sigma_power(1, tw->one()));
  EXPECT_EQ(phi_of(c, t_poly(*tw, {1})).at(0, 0), OrePoly::constant(tw->one()));
}

TEST(PhiOf, RingHomomorphismAndDegree) {
  auto tw = Tower::create(3, 1);
  const Level* l = tw->extend(3);
  std::mt19937_64 rng(5);
  FieldElem g2 = random_element(l, rng);
  if (g2.is_zero()) g2 = tw->one();
  DModule m = DModule::drinfeld(tw, random_element(l, rng), {random_element(l, rng), g2});
  for (int trial = 0; trial < 10; ++trial) {
    Poly a = random_fq_poly(*tw, 2, rng), b = random_fq_poly(*tw, 3, rng);
    EXPECT_EQ(phi_of(m, a * b), phi_of(m, a) * phi_of(m, b));
    EXPECT_EQ(phi_of(m, a + b), phi_of(m, a) + phi_of(m, b));
  }
  for (int r = 0; r <= 4; ++r) EXPECT_EQ(phi_of(m, pow(Poly::x(tw->base_level()), r)).degree(), 2 * r);
}

TEST(Characteristic, DrinfeldAndJordanBlock) {
  auto tw = Tower::create(3, 1);
  CharacteristicCertificate c = characteristic_of(DModule::carlitz(tw, tw->one()));
  EXPECT_TRUE(c.b.is_one());
  EXPECT_EQ(c.j, 0);
  EXPECT_EQ(c.m, 1);
  EXPECT_EQ(c.nilpotency, 1);

  const Level* zl = tw->prime_level();
  FieldElem theta = tw->from_int(2);
  OreMat phi(2, zl);
  phi.at(0, 0) = OrePoly::constant(theta);
  phi.at(0, 1) = OrePoly::constant(tw->one());
  phi.at(1, 0) = OrePoly::sigma_power(1, tw->one());
  phi.at(1, 1) = OrePoly::constant(theta);
  DModule t2 = DModule::t_module(tw, phi, 1);
  CharacteristicCertificate j = characteristic_of(t2);
  EXPECT_EQ(j.b, theta);
  EXPECT_EQ(j.m, 2);
  EXPECT_EQ(j.nilpotency, 2);
  EXPECT_EQ(t2.theta(), theta);

  OreMat bad(2, zl);
  bad.at(0, 0) = OrePoly::constant(tw->one());
  bad.at(1, 1) = OrePoly::constant(theta);
  bad.at(1, 0) = OrePoly::sigma_power(1, tw->one());
  try {
    DModule::t_module(tw, bad, 1);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNotEllipticCharacteristic);
  }
}

TEST(Characteristic, InseparableShapeInCharacteristicTwo) {
  auto tw = Tower::create(2, 2);
  FieldElem w = tw->fq_generator();
  OreMat phi(2, tw->prime_level());
  phi.at(0, 0) = OrePoly::constant(w);
  phi.at(0, 1) = OrePoly::constant(tw->one());
  phi.at(1, 0) = OrePoly::sigma_power(1, tw->one());
  phi.at(1, 1) = OrePoly::constant(w);
  CharacteristicCertificate c = characteristic_of(DModule::t_module(tw, phi, 1));
  EXPECT_EQ(c.b, w);
  ASSERT_EQ(c.charpoly.size(), 3u);
  EXPECT_TRUE(c.charpoly[1].is_zero());
  EXPECT_EQ(c.charpoly[0], w * w);
}

TEST(Torsion, CarlitzSmallCases) {
  auto tw = Tower::create(2, 1);
  DModule c = DModule::carlitz(tw, tw->one());
  XPoint x = XPoint::rational(tw->zero());
  std::vector<Point> b1 = torsion_basis(c, x, 1);
  ASSERT_EQ(b1.size(), 1u);
  EXPECT_TRUE(b1[0][0].is_one());
  std::vector<Point> b2 = torsion_basis(c, x, 2);
  ASSERT_EQ(b2.size(), 2u);
  const Level* l = b2[0][0].level();
  EXPECT_EQ(l->dim, 2);
  FieldElem w(l);
  w.raw()[1] = 1;
  EXPECT_TRUE((w * w + w).is_one());
  std::vector<Point> with_w = b2;
  with_w.push_back({w});
  EXPECT_EQ(fq_span_dim(with_w, l), 2);
  EXPECT_TRUE(torsion_basis(c, x, 0).empty());
}

TEST(Torsion, CollisionWithCharacteristic) {
  auto tw = Tower::create(2, 1);
  DModule c = DModule::carlitz(tw, tw->zero());
  try {
    torsion_basis(c, XPoint::rational(tw->zero()), 1);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kCharacteristicCollision);
  }
}

// Counts roots of phi_{t_x^r} by enumeration in every level of at most 2^12
// elements and compares with the dimension read off the F_p kernel.
void check_against_enumeration(const DModule& m, const XPoint& x, int rmax) {
  const Tower& tw = m.tower();
  for (int r = 1; r <= rmax; ++r) {
    std::vector<Point> basis = torsion_basis(m, x, r);
    EXPECT_EQ(static_cast<int>(basis.size()), m.n() * r * x.degree());
    OreMat P = phi_of(m, x_power(x, r));
    for (int i = tw.base_level()->index; i < tw.size(); ++i) {
      const Level* L = tw.level(i);
      if (L->bits() > 12) break;
      std::uint64_t roots = testing_util::count_roots(L, [&](const FieldElem& z) { return P({z})[0]; });
      std::uint64_t expect = 1;
      for (int d = 0; d < torsion_dimension_at(m, x, r, L); ++d) expect *= tw.q();
      EXPECT_EQ(roots, expect) << "level " << i << " r " << r;
    }
  }
}

TEST(Torsion, DimensionsMatchEnumeration) {
  auto t2 = Tower::create(2, 1);
  check_against_enumeration(DModule::carlitz(t2, t2->one()), XPoint::rational(t2->zero()), 3);
  auto t3 = Tower::create(3, 1);
  check_against_enumeration(DModule::carlitz(t3, t3->one()), XPoint::rational(t3->zero()), 3);
  auto r2 = Tower::create(2, 1);
  check_against_enumeration(rank_two(r2, 1, 1, 1), XPoint::rational(r2->zero()), 2);
  auto r3 = Tower::create(3, 1);
  check_against_enumeration(rank_two(r3, 1, 1, 1), XPoint::rational(r3->zero()), 2);
}

TEST(Tate, CarlitzDepthOne) {
  auto tw = Tower::create(2, 1);
  TateSystem T = tate_basis(DModule::carlitz(tw, tw->one()), XPoint::rational(tw->zero()), 1);
  ASSERT_EQ(T.depth, 1);
  EXPECT_TRUE(T.alpha(0, 0)[0].is_one());
  FieldElem a1 = T.alpha(0, 1)[0];
  EXPECT_EQ(a1.level()->dim, 2);
  EXPECT_EQ(a1.coord(0), 0);
  EXPECT_EQ(a1.coord(1), 1);
}

// phi_{t_x}(alpha_h) = alpha_{h-1}, phi_{t_x}(alpha_0) = 0, and the level-h
// points generate E[t_x^(h+1)] freely.
void check_chains(const TateSystem& T) {
  const DModule& m = T.module;
  OreMat P = phi_of(m, T.x.pi);
  const int k = m.k();
  for (int xi = 0; xi < T.n(); ++xi) {
    for (int c = 0; c < T.f(); ++c) {
      Point zero(k, m.tower().zero());
      EXPECT_EQ(P(T.alpha(xi, 0, c)), zero);
      for (int h = 1; h <= T.depth; ++h) EXPECT_EQ(P(T.alpha(xi, h, c)), T.alpha(xi, h - 1, c));
    }
  }
  for (int h = 0; h <= T.depth; ++h) {
    std::vector<Point> gens;
    const Level* L = m.tower().base_level();
    for (int xi = 0; xi < T.n(); ++xi) {
      for (int c = 0; c < T.f(); ++c) {
        Point z = T.alpha(xi, h, c);
        for (int j = 0; j <= h; ++j) {
          for (const FieldElem& v : z) L = join_levels(L, v.level());
          gens.push_back(z);
          z = P(z);
        }
      }
    }
    EXPECT_EQ(fq_span_dim(gens, L), T.n() * T.f() * (h + 1)) << "depth " << h;
  }
}

TEST(Tate, ChainsOnSeveralModules) {
  auto t2 = Tower::create(2, 1);
  check_chains(tate_basis(DModule::carlitz(t2, t2->one()), XPoint::rational(t2->zero()), 5));
  auto t3 = Tower::create(3, 1);
  check_chains(tate_basis(DModule::carlitz(t3, t3->from_int(2)), XPoint::rational(t3->one()), 4));
  auto r2 = Tower::create(2, 1);
  check_chains(tate_basis(rank_two(r2, 1, 0, 1), XPoint::rational(r2->zero()), 4));
  auto t4 = Tower::create(2, 2);
  check_chains(tate_basis(DModule::carlitz(t4, t4->fq_generator()), XPoint::rational(t4->zero()), 3));
}

TEST(Tate, PlaceOfDegreeTwo) {
  auto tw = Tower::create(2, 1);
  DModule c = DModule::carlitz(tw, tw->one());
  XPoint x = XPoint::from_poly(t_poly(*tw, {1, 1, 1}));
  EXPECT_EQ(static_cast<int>(torsion_basis(c, x, 1).size()), 2);
  TateSystem T = tate_basis(c, x, 2);
  ASSERT_EQ(T.depth, 2);
  ASSERT_TRUE(T.residue);
  EXPECT_TRUE(T.residue->basis.self_dual);
  check_chains(T);
  // t = zeta + delta: pi(zeta + delta) = t_x to the working precision.
  const ResidueData& rd = *T.residue;
  Series arg = rd.delta + Series::constant(rd.zeta, rd.delta.prec());
  Series v = arg * arg + arg + Series::constant(rd.tower->one(), rd.delta.prec());
  EXPECT_TRUE(v.agrees_with(Series::monomial(rd.tower->one(), 1, rd.delta.prec())));
}

TEST(Tate, TensorSquareOfCarlitz) {
  auto tw = Tower::create(2, 1);
  const Level* zl = tw->prime_level();
  OreMat phi(2, zl);
  phi.at(0, 0) = OrePoly::constant(tw->one());
  phi.at(0, 1) = OrePoly::constant(tw->one());
  phi.at(1, 0) = OrePoly::sigma_power(1, tw->one());
  phi.at(1, 1) = OrePoly::constant(tw->one());
  DModule m = DModule::t_module(tw, phi, 1);
  XPoint x = XPoint::rational(tw->zero());
  for (int r = 1; r <= 2; ++r) EXPECT_EQ(static_cast<int>(torsion_basis(m, x, r).size()), r);
  check_chains(tate_basis(m, x, 3));
}

TEST(Tate, PoliciesDifferByChangeOfLevel) {
  auto tw = Tower::create(3, 1);
  DModule m = rank_two(tw, 1, 0, 2);
  XPoint x = XPoint::rational(tw->zero());
  TateSystem lo = tate_basis(m, x, 3, PickPolicy::kLexLeast);
  TateSystem hi = tate_basis(m, x, 3, PickPolicy::kLexGreatest);
  ASSERT_TRUE(lo.complete() && hi.complete());
  SeriesMat G = change_of_level(lo, hi);
  EXPECT_FALSE(G.det().coeff(0).is_zero());
  // Reconstruct hi from lo through G.
  OreMat P = phi_of(m, x.pi);
  for (int xi = 0; xi < 2; ++xi) {
    for (int h = 0; h <= 3; ++h) {
      Point acc(1, tw->zero());
      for (int eta = 0; eta < 2; ++eta) {
        for (int j = 0; j <= h; ++j) acc[0] += G.at(xi, eta).coeff(j) * lo.alpha(eta, h - j)[0];
      }
      EXPECT_EQ(acc, hi.alpha(xi, h));
    }
  }
}

TEST(Tate, BudgetTruncatesDepth) {
  auto tw = Tower::create(2, 1, 8);
  TateSystem T = tate_basis(DModule::carlitz(tw, tw->one()), XPoint::rational(tw->zero()), 12);
  EXPECT_FALSE(T.complete());
  EXPECT_GE(T.depth, 3);
  EXPECT_LT(T.depth, 12);
  check_chains(T);
}

}  // namespace
}  // namespace unisheaf
