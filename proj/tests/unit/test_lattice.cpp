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

#include "gtest/gtest.h"
#include "unisheaf/lattice.hpp"

namespace unisheaf {
namespace {

struct Bundle {
  std::shared_ptr<Tower> tw;
  DModule m;
  TateSystem T;
  Uniformizer U;
  // Leading coefficient of phi_t.
  FieldElem lead;
};

Bundle carlitz(int p, int theta, int depth) {
  Bundle s;
  s.tw = Tower::create(p, 1);
  s.m = DModule::carlitz(s.tw, s.tw->from_int(theta));
  s.T = tate_basis(s.m, XPoint::rational(s.tw->zero()), depth);
  s.U = uniformizer_from_tate(s.T, depth + 1);
  s.lead = s.tw->one();
  return s;
}

Bundle rank_two(int p, int theta, int g1, int g2, int depth, int budget = kDefaultBudgetBits) {
  Bundle s;
  s.tw = Tower::create(p, 1, budget);
  s.m = DModule::drinfeld(s.tw, s.tw->from_int(theta), {s.tw->from_int(g1), s.tw->from_int(g2)});
  s.T = tate_basis(s.m, XPoint::rational(s.tw->zero()), depth);
  s.U = uniformizer_from_tate(s.T, s.T.depth + 1);
  s.lead = s.tw->from_int(g2);
  return s;
}

template <class F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kInvalidArgument;
}

// In rank one sigma^* acts on s by a polynomial of degree one in t, so L_0 cap
// t^-N K[[t]] is spanned by t^-r s for r = 0..N.
TEST(LatticeFromUniformizer, CarlitzIsPowersOfU) {
  Bundle s = carlitz(3, 1, 7);
  Lattice L = lattice_from_uniformizer(s.U, 3, 5);
  EXPECT_EQ(L.lo(), -3);
  EXPECT_EQ(L.hi(), 5);
  std::vector<SeriesVec> gens;
  for (int r = 0; r <= 3; ++r) gens.push_back(truncated(shifted(s.U.s(), -r), 5));
  Lattice direct = Lattice::from_series(1, -3, 5, gens, s.tw->prime_level(), "direct");
  EXPECT_EQ(L.dim(), 4);
  EXPECT_TRUE(L == direct);
}

TEST(LatticeFromUniformizer, NonnegativePartIsTheUniformizer) {
  for (Bundle s : {carlitz(2, 1, 7), rank_two(2, 1, 0, 1, 10)}) {
    Lattice L = lattice_from_uniformizer(s.U, 3, s.U.prec - 3);
    LineComparison c = compare_lines(nonnegative_generator(L), s.U.s());
    EXPECT_TRUE(c.proportional);
  }
}

TEST(LatticeFromUniformizer, NeedsPrecision) {
  Bundle s = carlitz(2, 1, 4);
  EXPECT_EQ(code_of([&] { lattice_from_uniformizer(s.U, 3, 5); }), ErrorCode::kPrecisionExhausted);
}

TEST(TrivialLattice, NonnegativePartHasRankN) {
  auto tw = Tower::create(2, 1);
  Lattice t = trivial_lattice(2, -3, 4, tw->prime_level());
  EXPECT_EQ(t.dim(), 8);
  EXPECT_EQ(code_of([&] { nonnegative_generator(t); }), ErrorCode::kRankNotOne);
}

TEST(Filtration, MembersAreNested) {
  Bundle s = rank_two(2, 1, 1, 1, 10);
  Lattice L = lattice_from_uniformizer(s.U, 4, s.U.prec - 4);
  const int guard = 3;
  Lattice l1 = filtration_member(L, 1, 1, guard);
  Lattice l2 = filtration_member(L, 2, 1, guard);
  EXPECT_TRUE(l2.contains(l1));
  EXPECT_TRUE(l1.contains(L.restricted(L.lo() + guard)));
  // L_{-2} = t^-1 L_0 for n = 2.
  Lattice lm2 = filtration_member(L, -2, 1, guard);
  EXPECT_EQ(lm2.lo(), L.lo() - 1);
  EXPECT_EQ(lm2.dim(), L.dim());
  EXPECT_EQ(code_of([&] { filtration_member(L, 1, 1, L.hi() - L.lo()); }), ErrorCode::kGuardBandTooNarrow);
}

TEST(Elliptic, CarlitzPasses) {
  for (int theta : {1, 2}) {
    Bundle s = carlitz(3, theta, 7);
    EllipticReport r = elliptic_check(lattice_from_uniformizer(s.U, 3, 5), 1);
    EXPECT_TRUE(r.passes());
    EXPECT_EQ(r.coranks, std::vector<int>{0});
    EXPECT_EQ(r.h0, 0);
    EXPECT_EQ(r.h1, 0);
  }
}

TEST(Elliptic, RankTwoCoranks) {
  for (Bundle s : {rank_two(2, 1, 0, 1, 10), rank_two(2, 1, 1, 1, 10), rank_two(3, 1, 1, 1, 8)}) {
    Lattice L = lattice_from_uniformizer(s.U, 4, s.U.prec - 4);
    EllipticReport r = elliptic_check(L, 1);
    EXPECT_TRUE(r.passes());
    EXPECT_EQ(r.coranks, (std::vector<int>{1, 0}));
    EXPECT_EQ(r.expected_coranks, (std::vector<int>{1, 0}));
  }
}

TEST(Elliptic, TrivialLatticeFailsFlag) {
  Bundle s = rank_two(2, 1, 0, 1, 10);
  Lattice L = lattice_from_uniformizer(s.U, 4, s.U.prec - 4);
  EllipticReport r = elliptic_check(trivial_lattice(2, L.lo(), L.hi(), s.tw->prime_level()), 1);
  EXPECT_TRUE(r.u_stable);
  EXPECT_TRUE(r.flag_contained);
  EXPECT_FALSE(r.flag_coranks);
  EXPECT_FALSE(r.passes());
}

TEST(Elliptic, ShiftedLatticeFailsVanishing) {
  Bundle s = rank_two(2, 1, 0, 1, 10);
  Lattice L = lattice_from_uniformizer(s.U, 4, s.U.prec - 4);
  EllipticReport r = elliptic_check(L.shifted(1), 1);
  EXPECT_TRUE(r.u_stable);
  EXPECT_TRUE(r.flag_spans);
  EXPECT_TRUE(r.flag_coranks);
  EXPECT_FALSE(r.vanishing);
  EXPECT_EQ(r.h0, 2);
}

TEST(Elliptic, StableUnderWiderWindows) {
  Bundle s = rank_two(3, 1, 0, 2, 12, 100);
  ASSERT_GE(s.U.prec, 13);
  Lattice base = lattice_from_uniformizer(s.U, 4, 5);
  EllipticReport a = elliptic_check(base, 1);
  for (auto [N, M] : {std::pair{4, 7}, std::pair{6, 5}, std::pair{6, 7}}) {
    EllipticReport b = elliptic_check(lattice_from_uniformizer(s.U, N, M), 1);
    EXPECT_EQ(a.passes(), b.passes());
    EXPECT_EQ(a.coranks, b.coranks);
    EXPECT_EQ(a.h0, b.h0);
    EXPECT_EQ(a.h1, b.h1);
  }
  EXPECT_TRUE(a.passes());
}

TEST(Elliptic, NarrowWindowRejected) {
  Bundle s = carlitz(2, 1, 4);
  Lattice L = lattice_from_uniformizer(s.U, 1, 2);
  EXPECT_EQ(code_of([&] { elliptic_check(L, 1); }), ErrorCode::kGuardBandTooNarrow);
}

TEST(Stabilizer, PolynomialsInU) {
  for (Bundle s : {carlitz(2, 1, 9), rank_two(2, 1, 0, 1, 10)}) {
    Lattice L = lattice_from_uniformizer(s.U, 4, s.U.prec - 4);
    StabilizerReport r = stabilizer_ring(L, 2, 2);
    EXPECT_TRUE(r.contains_one);
    EXPECT_TRUE(r.contains_u);
    EXPECT_TRUE(r.closed);
    EXPECT_TRUE(r.polynomial_in_u);
    EXPECT_EQ(r.basis.size(), 3u);
  }
}

TEST(Stabilizer, ConstantsOnlyWithoutUStability) {
  auto tw = Tower::create(2, 1);
  const Level* zl = tw->prime_level();
  std::vector<SeriesVec> gens = {{Series::constant(tw->one(), 5)}, {Series::monomial(tw->one(), -3, 5)}};
  Lattice L = Lattice::from_series(1, -4, 5, gens, zl, "sparse");
  StabilizerReport r = stabilizer_ring(L, 2, 2);
  EXPECT_TRUE(r.contains_one);
  EXPECT_FALSE(r.contains_u);
  EXPECT_FALSE(r.polynomial_in_u);
}

TEST(Dense, SlicesHaveDimensionN) {
  Bundle c = carlitz(2, 1, 7);
  for (int x : slice_dimensions(dense_from_module(c.m, c.T, 5), 1)) EXPECT_EQ(x, 1);
  Bundle r = rank_two(3, 1, 1, 1, 8);
  Lattice d = dense_from_module(r.m, r.T, 5);
  for (int x : slice_dimensions(d, 1)) EXPECT_EQ(x, 2);
  for (int x : slice_dimensions(d, 2)) EXPECT_EQ(x, 4);
  for (int x : slice_dimensions(d, 0)) EXPECT_EQ(x, 0);
}

TEST(Scattering, RankOneIsTheUniformizer) {
  Bundle s = carlitz(3, 2, 7);
  ScatteringReport r = scattering_det(s.U);
  EXPECT_EQ(r.n, 1);
  EXPECT_TRUE(r.d.agrees_with(s.U.s()[0]));
  EXPECT_TRUE(r.derived_constant);
  EXPECT_EQ(r.derived_g, r.expected_g);
  EXPECT_TRUE(r.spans_agree);
}

// d is the uniformizer of the determinant module up to F_q[[t]]^*.
TEST(Scattering, RankTwoDeterminant) {
  for (Bundle s : {rank_two(2, 1, 0, 1, 10), rank_two(2, 1, 1, 1, 10), rank_two(3, 1, 0, 2, 8)}) {
    ScatteringReport r = scattering_det(s.U);
    EXPECT_EQ(r.n, 2);
    EXPECT_TRUE(r.derived_constant);
    EXPECT_EQ(r.derived_g, r.expected_g);
    EXPECT_EQ(r.expected_g, -s.lead);
    EXPECT_TRUE(r.ratio.consistent);
    EXPECT_TRUE(r.ratio.over_fq);
    EXPECT_TRUE(r.spans_agree);
    EXPECT_GT(r.wedge_dim, 0);
    EXPECT_EQ(r.wedge_dim, r.translate_dim);
  }
}

TEST(Scattering, DegenerateDeterminant) {
  Bundle s = rank_two(2, 1, 0, 1, 6);
  Uniformizer bad = s.U;
  for (SeriesVec& v : bad.series) v[1] = v[0];
  EXPECT_EQ(code_of([&] { scattering_det(bad); }), ErrorCode::kDegenerateDeterminant);
}

}  // namespace
}  // namespace unisheaf
