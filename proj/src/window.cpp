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

#include "unisheaf/window.hpp"

#include <utility>

namespace unisheaf {

Lattice::Lattice(int n, int lo, int hi, const Level* zero_level, std::string provenance)
    : n_(n), lo_(lo), hi_(hi), provenance_(std::move(provenance)) {
  require(n >= 1, ErrorCode::kInvalidArgument, "lattice needs n >= 1");
  require(lo <= hi, ErrorCode::kEmptyWindow, "window bounds reversed");
  echelon_.cols = cols();
  echelon_.zero_level = zero_level;
}

Lattice Lattice::from_rows(int n, int lo, int hi, std::vector<KVec> rows, const Level* zero_level,
                           std::string provenance) {
  Lattice l(n, lo, hi, zero_level, std::move(provenance));
  l.echelon_ = k_rref(std::move(rows), l.cols(), zero_level);
  return l;
}

Lattice Lattice::from_series(int n, int lo, int hi, const std::vector<SeriesVec>& gens, const Level* zero_level,
                             std::string provenance) {
  Lattice l(n, lo, hi, zero_level, std::move(provenance));
  std::vector<KVec> rows;
  rows.reserve(gens.size());
  for (const SeriesVec& g : gens) rows.push_back(l.to_window(g));
  l.echelon_ = k_rref(std::move(rows), l.cols(), zero_level);
  return l;
}

KVec Lattice::to_window(const SeriesVec& v) const {
  require(static_cast<int>(v.size()) == n_, ErrorCode::kDimensionMismatch, "vector length differs from lattice rank");
  KVec w(cols(), FieldElem(zero_level()));
  for (int xi = 0; xi < n_; ++xi) {
    const Series& s = v[xi];
    require(s.valuation() >= lo_ || s.is_zero(), ErrorCode::kWindowTooSmall,
            "vector has support below the window start " + std::to_string(lo_));
    require(s.prec() >= hi_, ErrorCode::kPrecisionExhausted,
            "vector known to t^" + std::to_string(s.prec()) + ", window needs t^" + std::to_string(hi_));
    for (int e = std::max(lo_, s.low()); e < hi_; ++e) w[column(e, xi)] = s.coeff(e);
  }
  return w;
}

SeriesVec Lattice::to_series(const KVec& v) const {
  SeriesVec out;
  for (int xi = 0; xi < n_; ++xi) {
    Series s(zero_level(), lo_, hi_);
    for (int e = lo_; e < hi_; ++e) s.set_coeff(e, v[column(e, xi)]);
    out.push_back(std::move(s));
  }
  return out;
}

bool Lattice::contains(const SeriesVec& v) const { return echelon_.contains(to_window(v)); }

bool Lattice::contains(const Lattice& o) const {
  require(o.n_ == n_ && o.lo_ == lo_ && o.hi_ == hi_, ErrorCode::kDimensionMismatch, "windows differ");
  for (const KVec& r : o.echelon_.rows) {
    if (!echelon_.contains(r)) return false;
  }
  return true;
}

bool Lattice::operator==(const Lattice& o) const {
  if (o.n_ != n_ || o.lo_ != lo_ || o.hi_ != hi_) return false;
  if (o.echelon_.pivots != echelon_.pivots) return false;
  for (std::size_t r = 0; r < echelon_.rows.size(); ++r) {
    for (int c = 0; c < cols(); ++c) {
      if (echelon_.rows[r][c] != o.echelon_.rows[r][c]) return false;
    }
  }
  return true;
}

Lattice Lattice::restricted(int a) const {
  require(a >= lo_ && a <= hi_, ErrorCode::kWindowTooSmall,
          "restriction to t^" + std::to_string(a) + " outside [" + std::to_string(lo_) + ", " + std::to_string(hi_) + ")");
  Lattice l(n_, a, hi_, zero_level(), provenance_);
  const int skip = (a - lo_) * n_;
  std::vector<KVec> rows;
  for (std::size_t r = 0; r < echelon_.rows.size(); ++r) {
    if (echelon_.pivots[r] < skip) continue;
    rows.emplace_back(echelon_.rows[r].begin() + skip, echelon_.rows[r].end());
  }
  l.echelon_ = k_rref(std::move(rows), l.cols(), zero_level());
  return l;
}

Lattice Lattice::truncated(int b) const {
  require(b >= lo_ && b <= hi_, ErrorCode::kWindowTooSmall,
          "truncation at t^" + std::to_string(b) + " outside [" + std::to_string(lo_) + ", " + std::to_string(hi_) + ")");
  Lattice l(n_, lo_, b, zero_level(), provenance_);
  const int keep = (b - lo_) * n_;
  std::vector<KVec> rows;
  for (const KVec& r : echelon_.rows) rows.emplace_back(r.begin(), r.begin() + keep);
  l.echelon_ = k_rref(std::move(rows), l.cols(), zero_level());
  return l;
}

Lattice Lattice::shifted(int k) const {
  Lattice l = *this;
  l.lo_ += k;
  l.hi_ += k;
  return l;
}

Lattice Lattice::frobenius(int times) const {
  Lattice l = *this;
  for (KVec& r : l.echelon_.rows) {
    for (FieldElem& x : r) x = x.frobenius(times);
  }
  return l;
}

Lattice Lattice::applied(const SeriesMat& beta) const {
  require(beta.rows() == n_ && beta.cols() == n_, ErrorCode::kDimensionMismatch, "matrix size differs from lattice rank");
  require(beta.min_valuation() >= 0, ErrorCode::kInvalidArgument, "matrix has poles");
  require(!beta.det().truncated(1).is_zero(), ErrorCode::kNotAUnit, "matrix is not invertible over K[[t]]");
  std::vector<KVec> rows;
  for (int r = 0; r < dim(); ++r) {
    SeriesVec v = row_series(r);
    SeriesVec w = beta.apply(v);
    for (Series& s : w) {
      require(s.prec() >= hi_, ErrorCode::kPrecisionExhausted, "matrix precision too low for the window");
      s = s.truncated(hi_);
    }
    rows.push_back(to_window(w));
  }
  return from_rows(n_, lo_, hi_, std::move(rows), zero_level(), provenance_ + "|applied");
}

Lattice operator+(const Lattice& a, const Lattice& b) {
  require(a.n_ == b.n_ && a.lo_ == b.lo_ && a.hi_ == b.hi_, ErrorCode::kDimensionMismatch, "windows differ");
  std::vector<KVec> rows = a.echelon_.rows;
  rows.insert(rows.end(), b.echelon_.rows.begin(), b.echelon_.rows.end());
  return Lattice::from_rows(a.n_, a.lo_, a.hi_, std::move(rows), a.zero_level(), a.provenance_);
}

Lattice filtration_member(const Lattice& l0, int i, int k, int guard) {
  if (i < 0) {
    const int n = l0.n();
    const int lambda = (-i + n - 1) / n;
    Lattice l = filtration_member(l0, i + lambda * n, k, guard).shifted(-lambda * k);
    l.set_provenance(l0.provenance() + "|L_" + std::to_string(i));
    return l;
  }
  Lattice sum = l0;
  Lattice twist = l0;
  for (int j = 1; j <= i; ++j) {
    twist = twist.frobenius();
    sum = sum + twist;
  }
  if (i > 0) {
    require(l0.lo() + guard < l0.hi(), ErrorCode::kGuardBandTooNarrow, "guard band exhausts the window");
    sum = sum.restricted(l0.lo() + guard);
  }
  sum.set_provenance(l0.provenance() + "|L_" + std::to_string(i));
  return sum;
}

}  // namespace unisheaf
