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

// Finite windows of K-subspaces of K((t))^n.
//
// A Lattice with window [lo, hi) stands for (L cap t^lo K[[t]]^n) mod t^hi.
// Coordinates are indexed by monomials t^e e_xi ordered by (e, xi), so the
// pivot of a reduced row is its lowest monomial and the rows with pivot
// exponent >= a span the part of the window inside t^a K[[t]]^n.

#ifndef UNISHEAF_WINDOW_HPP_
#define UNISHEAF_WINDOW_HPP_

#include <string>
#include <vector>

#include "unisheaf/kmatrix.hpp"
#include "unisheaf/tseries.hpp"

namespace unisheaf {

class Lattice {
 public:
  Lattice() = default;
  // The zero subspace on [lo, hi).
  Lattice(int n, int lo, int hi, const Level* zero_level, std::string provenance = {});

  static Lattice from_rows(int n, int lo, int hi, std::vector<KVec> rows, const Level* zero_level,
                           std::string provenance);
  // Span of generators that vanish below lo and are known up to hi.
  static Lattice from_series(int n, int lo, int hi, const std::vector<SeriesVec>& gens, const Level* zero_level,
                             std::string provenance);

  int n() const { return n_; }
  int lo() const { return lo_; }
  int hi() const { return hi_; }
  int cols() const { return (hi_ - lo_) * n_; }
  int dim() const { return echelon_.rank(); }
  int column(int exponent, int coord) const { return (exponent - lo_) * n_ + coord; }
  const Level* zero_level() const { return echelon_.zero_level; }
  const KEchelon& echelon() const { return echelon_; }
  const std::string& provenance() const { return provenance_; }
  void set_provenance(std::string p) { provenance_ = std::move(p); }

  // Exponent of the pivot of row r.
  int pivot_exponent(int r) const { return lo_ + echelon_.pivots[r] / n_; }

  KVec to_window(const SeriesVec& v) const;
  SeriesVec to_series(const KVec& v) const;
  SeriesVec row_series(int r) const { return to_series(echelon_.rows[r]); }

  bool contains(const SeriesVec& v) const;
  bool contains(const Lattice& o) const;
  bool operator==(const Lattice& o) const;

  // Part inside t^a K[[t]]^n, same hi.
  Lattice restricted(int a) const;
  // Image mod t^b, same lo.
  Lattice truncated(int b) const;
  Lattice windowed(int a, int b) const { return restricted(a).truncated(b); }
  // Multiplication by t^k.
  Lattice shifted(int k) const;
  // Coefficientwise Frobenius, the action of sigma^*.
  Lattice frobenius(int times = 1) const;
  // beta L for beta invertible over K[[t]].
  Lattice applied(const SeriesMat& beta) const;

  friend Lattice operator+(const Lattice& a, const Lattice& b);

 private:
  int n_ = 1;
  int lo_ = 0;
  int hi_ = 0;
  KEchelon echelon_;
  std::string provenance_;
};

// Window of L_i = L + sigma^* L + ... + (sigma^*)^i L for i >= 0 and of
// t^(-k lambda) L_(i + lambda n) otherwise. Sums lose `guard` exponents at the
// bottom of the window.
Lattice filtration_member(const Lattice& l0, int i, int k, int guard);

}  // namespace unisheaf

#endif  // UNISHEAF_WINDOW_HPP_
