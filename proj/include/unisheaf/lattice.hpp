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

// Window models of discrete subspaces L_0 of K((t_x))^n and of locally dense
// subspaces D_N, the conditions that make L_0 come from an elliptic sheaf,
// the ring stabilizing L_0, and the determinant of the scattering matrix.

#ifndef UNISHEAF_LATTICE_HPP_
#define UNISHEAF_LATTICE_HPP_

#include <vector>

#include "unisheaf/uniformizer.hpp"
#include "unisheaf/window.hpp"

namespace unisheaf {

// L_0 on [-N, M), spanned by the basis family of depth N. Needs precision
// at least M + N.
Lattice lattice_from_uniformizer(const Uniformizer& u, int N, int M);

// Generator of L cap K[[t_x]]^n. Throws RankNotOne unless it is a line.
SeriesVec nonnegative_generator(const Lattice& l);

// The span of the standard monomials t^j e_xi, j <= 0, on [lo, hi).
Lattice trivial_lattice(int n, int lo, int hi, const Level* zero_level);

// D_N = sum_i K (sigma^*)^i s on [0, prec).
Lattice dense_from_module(const DModule& m, const TateSystem& t, int prec);

// dim (D cap t^m) / (D cap t^(m+h)) in the window, for m = lo .. hi - h.
std::vector<int> slice_dimensions(const Lattice& d, int h);

struct EllipticReport {
  int k = 1;
  int guard = 0;
  // Window on which the flag was compared.
  int flag_lo = 0;
  int flag_hi = 0;
  // u L inside L.
  bool u_stable = false;
  // (sigma^*)^i L inside L(k infinity) for 1 <= i <= n.
  bool flag_contained = false;
  // L + ... + (sigma^*)^n L = L(k infinity).
  bool flag_spans = false;
  // Corank of L + ... + (sigma^*)^i L in L(k infinity), i = 1..n.
  std::vector<int> coranks;
  std::vector<int> expected_coranks;
  bool flag_coranks = false;
  // L_{-k} cap K[[t]]^n and the cokernel of L_{-k} -> K((t))^n / K[[t]]^n.
  int h0 = 0;
  int h1 = 0;
  bool vanishing = false;

  bool passes() const { return u_stable && flag_contained && flag_spans && flag_coranks && vanishing; }
};

EllipticReport elliptic_check(const Lattice& l, int k, int guard = -1);

struct StabilizerReport {
  // Exponent range [-a, b] of the candidates.
  int a = 0;
  int b = 0;
  // F_q-basis, coefficient of t^e at index e + a.
  std::vector<std::vector<FieldElem>> basis;
  bool contains_one = false;
  bool contains_u = false;
  bool closed = false;
  // The span is F_q 1 + F_q u + ... + F_q u^a.
  bool polynomial_in_u = false;
};

// {c in F_q((t_x)) with exponents in [-a, b] : c L inside L} in the window.
StabilizerReport stabilizer_ring(const Lattice& l, int a, int b);

struct ScatteringReport {
  int n = 1;
  // det(s, sigma^* s, .., (sigma^*)^(n-1) s).
  Series d;
  // (t_x - (theta - xi)) d / sigma^* d.
  Series derived;
  bool derived_constant = false;
  FieldElem derived_g;
  // (-1)^(n-1) g_n.
  FieldElem expected_g;
  // d against the rank one uniformizer of theta + derived_g sigma.
  Series rebuilt;
  UnitRatio ratio;
  // Wedges of (sigma^*)^i s against t^a (sigma^*)^b d on [0, prec).
  int wedge_dim = 0;
  int translate_dim = 0;
  bool spans_agree = false;
};

ScatteringReport scattering_det(const Uniformizer& u);

}  // namespace unisheaf

#endif  // UNISHEAF_LATTICE_HPP_
