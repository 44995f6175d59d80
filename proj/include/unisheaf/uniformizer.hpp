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

// Uniformizer series of t-modules with a formal level structure at x, the
// action of GL_n(K((t_x))) on them, and the Baker function.
//
// Series are in t_x. A series vector has n deg(x) entries: entry xi f + c is
// the coordinate on omega_c of component xi, where omega_1..omega_f is the
// canonical F_q-basis of k(x). For rational x this is just component xi.
//
// Generators of lines are normalized through the sigma^*-power basis: an
// element of L_j cap t^-m K[[t_x]]^n is written t^-m sum_i c_i (sigma^*)^i s
// and scaled so that its last nonzero c_i is 1.

#ifndef UNISHEAF_UNIFORMIZER_HPP_
#define UNISHEAF_UNIFORMIZER_HPP_

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "unisheaf/drinfeld.hpp"
#include "unisheaf/tseries.hpp"
#include "unisheaf/window.hpp"

namespace unisheaf {

struct Uniformizer {
  DModule module;
  XPoint x;
  int n = 1;
  int k = 1;
  int f = 1;
  // Every series is known on [0, prec).
  int prec = 0;
  // series[i] is s_(i+1).
  std::vector<SeriesVec> series;
  // Least entry of s_1 with nonzero constant term.
  int pivot = 0;
  std::shared_ptr<const ResidueData> residue;
  std::string provenance;

  const SeriesVec& s(int i = 0) const { return series[i]; }
  const Level* zero_level() const { return module.tower().prime_level(); }
};

// Assembles s_i from the chains, to precision prec (default depth + 1).
// Throws DepthTooShallow when the chains are shorter than prec - 1.
Uniformizer uniformizer_from_tate(const TateSystem& t, int prec = -1);

// The solution with a_0 = 1 of sigma^* s = (1 - (theta - xi)^-1 t_x) s, with
// coefficients from successive Artin-Schreier equations. Its module is the
// rank one module theta - (theta - xi) sigma, whose torsion it parametrizes.
Uniformizer carlitz_uniformizer(std::shared_ptr<Tower> tower, const FieldElem& theta, int prec);
Uniformizer carlitz_uniformizer(std::shared_ptr<Tower> tower, const FieldElem& theta, const FieldElem& xi,
                                int prec);

// Uniformizer of phi_t = theta + c sigma at x = (t - xi): the solution of
// sigma^* s = c^-1 (t_x - (theta - xi)) s with the lexicographically extreme
// nonzero constant term.
Uniformizer rank_one_uniformizer(std::shared_ptr<Tower> tower, const FieldElem& theta, const FieldElem& c,
                                 const FieldElem& xi, int prec, PickPolicy policy = PickPolicy::kLexLeast);

// Exponents h <= limit where phi_{t_x} applied coefficientwise fails to send
// the t_x^h coefficient to the t_x^(h-1) coefficient. Empty means the
// invariant holds on [0, limit]; limit defaults to prec - 1.
std::vector<int> master_invariant_failures(const Uniformizer& u, int limit = -1);
bool master_invariant_holds(const Uniformizer& u, int limit = -1);

// sigma^* s / s for a unit series s.
Series frobenius_ratio(const Series& s);

// a = scalar * b on the common window.
struct LineComparison {
  bool proportional = false;
  FieldElem scalar;
  // Exclusive end of the compared window.
  int checked_to = 0;
};
LineComparison compare_lines(const SeriesVec& a, const SeriesVec& b);

// a = r * b with r a series, read off entry `entry`, and whether r is
// constant and has coefficients in F_q.
struct UnitRatio {
  Series ratio;
  bool consistent = false;
  bool constant = false;
  bool over_fq = false;
};
UnitRatio unit_ratio(const SeriesVec& a, const SeriesVec& b, int entry);

// t^-m sum_i c_i (sigma^*)^i s with c_top = 1. Throws RankNotOne when w is
// not in the span up to top.
std::vector<FieldElem> sigma_coordinates(const Uniformizer& u, const SeriesVec& w, int m, int top);

// v(det beta), and the least m >= 0 with beta^-1 K[[t_x]]^n inside t^-m.
struct ActionShape {
  int l = 0;
  int m = 0;
  // Highest sigma^*-power in L_{-l} cap t^-m K[[t_x]]^n.
  int top = 0;
};
ActionShape action_shape(const SeriesMat& beta, int n);

// s^beta from the lattice window of L_0. Requires k = 1 and rational x.
Uniformizer gl_action(const Uniformizer& u, const SeriesMat& beta, const Lattice& l0, int guard = -1);
// s^beta from the sigma^*-power parametrization of L_{-l}.
Uniformizer gl_action_direct(const Uniformizer& u, const SeriesMat& beta);

// beta_{(i, r)} = diag(1, .., t_x^r at i, .., 1).
SeriesMat beta_ir(int n, int i, int r, const Level* zero_level, int prec);

struct MooreResult {
  // beta_{(xi, r)} det(...), as expanded.
  SeriesVec raw;
  // Coefficients C_0..C_R of (sigma^*)^i s in the determinant.
  std::vector<FieldElem> cofactors;
  // raw scaled by the inverse of its last nonzero cofactor.
  SeriesVec normalized;
};
MooreResult moore_formula(const Uniformizer& u, int xi, int r, const TateSystem& t);

// beta_{(i,r)}^-1 s^beta_{(i,r)} for 0 <= r <= h: s once, then r >= 1 for each i.
std::vector<SeriesVec> basis_family(const Uniformizer& u, int h);

struct BakerResult {
  SeriesVec psi;
  // s^g = g psi.
  SeriesVec s_g;
  std::vector<int> smith_exponents;
  int l = 0;
  int m = 0;
  bool routes_agree = false;
  bool in_lattice = false;
  bool a0_units = false;
};
// Psi(g) = g^-1 s^g through the Smith form of g and the lattice window,
// checked against gl_action_direct.
BakerResult baker(const Uniformizer& u, const SeriesMat& g, const Lattice& l0, int guard = -1);

}  // namespace unisheaf

#endif  // UNISHEAF_UNIFORMIZER_HPP_
