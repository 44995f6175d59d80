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

// Drinfeld modules and abelian t-modules over A = F_q[t], their torsion, and
// compatible systems of division points at a finite place x.

#ifndef UNISHEAF_DRINFELD_HPP_
#define UNISHEAF_DRINFELD_HPP_

#include <memory>
#include <vector>

#include "unisheaf/ffield.hpp"
#include "unisheaf/ore.hpp"
#include "unisheaf/poly.hpp"
#include "unisheaf/tseries.hpp"

namespace unisheaf {

// A point of G_a^k.
using Point = std::vector<FieldElem>;

// A t-module E over K of dimension k and rank n, given by the image phi_t of
// t in the k x k matrices over K{sigma}. For k = 1 this is a Drinfeld module
// with phi_t = theta + g_1 sigma + ... + g_n sigma^n.
class DModule {
 public:
  DModule() = default;
  static DModule drinfeld(std::shared_ptr<Tower> tower, const FieldElem& theta, const std::vector<FieldElem>& g);
  static DModule carlitz(std::shared_ptr<Tower> tower, const FieldElem& theta);
  static DModule t_module(std::shared_ptr<Tower> tower, const OreMat& phi_t, int n);

  int k() const { return k_; }
  int n() const { return n_; }
  // Constant term of phi_t for k = 1; the characteristic point otherwise.
  const FieldElem& theta() const { return theta_; }
  const OreMat& phi_t() const { return phi_t_; }
  const std::shared_ptr<Tower>& tower_ptr() const { return tower_; }
  Tower& tower() const { return *tower_; }
  const Level* level() const { return phi_t_.level(); }

 private:
  std::shared_ptr<Tower> tower_;
  int k_ = 1;
  int n_ = 1;
  FieldElem theta_;
  OreMat phi_t_;
};

// Image of a in F_q[t] under t -> phi_t.
OreMat phi_of(const DModule& m, const Poly& a);

// Result of reading the action of t on Lie(E) = N / sigma N.
struct CharacteristicCertificate {
  FieldElem b;
  int j = 0;
  int m = 1;
  // Least N with (t - theta)^N Lie(E) = 0.
  int nilpotency = 1;
  // Characteristic polynomial of t on Lie(E), constant term first.
  std::vector<FieldElem> charpoly;
};

// Writes the characteristic polynomial of t on Lie(E) as (x^(p^j) - b)^m with
// the least j. Throws NotEllipticCharacteristic when it has no such shape.
CharacteristicCertificate characteristic_of(const DModule& m);

// A closed point x of Spec F_q[t], given by its monic irreducible generator.
// The uniformizer at x is t_x = pi(t).
struct XPoint {
  Poly pi;

  static XPoint rational(const FieldElem& xi);
  static XPoint from_poly(const Poly& pi);

  int degree() const { return pi.degree(); }
  // The root xi when x is rational.
  FieldElem xi() const;
};

// The A-module generated by t_x in F_q[t], i.e. pi^r.
Poly x_power(const XPoint& x, int r);

// Lexicographically least (or greatest) z in the lowest level at or above
// `from` with P(z) = target, extending the tower when needed.
Point ore_solve(const OreMat& P, const Point& target, const Level* from, PickPolicy policy = PickPolicy::kLexLeast);

// Canonical F_q-basis of ker phi_{pi^r}, in the lowest level where the kernel
// reaches its full dimension n r deg(x).
std::vector<Point> torsion_basis(const DModule& m, const XPoint& x, int r,
                                 PickPolicy policy = PickPolicy::kLexLeast);

// F_q-dimension of ker phi_{pi^r} inside a single level.
int torsion_dimension_at(const DModule& m, const XPoint& x, int r, const Level* level);

// Residue field data at a place of degree f > 1. k(x) lives in its own tower;
// its F_q agrees coordinatewise with the module's.
struct ResidueData {
  std::shared_ptr<Tower> tower;
  const Level* level = nullptr;
  // Root of pi generating k(x).
  FieldElem zeta;
  DualBasis basis;
  // t = zeta + delta(t_x) in k(x)[[t_x]].
  Series delta;
  // a[c][h] in F_q[t] with a(zeta + delta) = omega_c mod t_x^(h+1).
  std::vector<std::vector<Poly>> a;
};

// Chains alpha^xi_{c,h} of division points with phi_{t_x}(alpha_h) =
// alpha_{h-1} and alpha_0 running over a canonical basis of E[x].
struct TateSystem {
  DModule module;
  XPoint x;
  int requested_depth = 0;
  // Achieved depth: chains hold alpha_0 .. alpha_depth.
  int depth = 0;
  PickPolicy policy = PickPolicy::kLexLeast;
  // points[xi][c][h].
  std::vector<std::vector<std::vector<Point>>> points;
  std::shared_ptr<const ResidueData> residue;

  int n() const { return module.n(); }
  int f() const { return x.degree(); }
  bool complete() const { return depth >= requested_depth; }
  const Point& alpha(int xi, int h, int c = 0) const { return points[xi][c][h]; }
};

// Builds chains up to the requested depth. Stops early, recording the achieved
// depth, when the tower budget would be exceeded.
TateSystem tate_basis(const DModule& m, const XPoint& x, int depth, PickPolicy policy = PickPolicy::kLexLeast);

// G over F_q[[t_x]] with s_to = G s_from, to the common depth. Rational x.
SeriesMat change_of_level(const TateSystem& from, const TateSystem& to);

}  // namespace unisheaf

#endif  // UNISHEAF_DRINFELD_HPP_
