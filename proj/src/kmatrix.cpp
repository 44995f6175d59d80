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

#include "unisheaf/kmatrix.hpp"

#include <utility>

namespace unisheaf {

namespace {

void eliminate(KVec& dst, const KVec& src, const FieldElem& f, int from) {
  for (std::size_t i = from; i < dst.size(); ++i) {
    if (!src[i].is_zero()) dst[i] -= f * src[i];
  }
}

}  // namespace

bool k_is_zero(const KVec& v) {
  for (const FieldElem& x : v) {
    if (!x.is_zero()) return false;
  }
  return true;
}

KVec KEchelon::reduce(KVec v) const {
  require(static_cast<int>(v.size()) == cols, ErrorCode::kDimensionMismatch, "vector length differs from echelon width");
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (v[pivots[i]].is_zero()) continue;
    FieldElem f = v[pivots[i]];
    eliminate(v, rows[i], f, pivots[i]);
  }
  return v;
}

bool KEchelon::contains(const KVec& v) const { return k_is_zero(reduce(v)); }

KEchelon k_rref(std::vector<KVec> rows, int cols, const Level* zero_level) {
  KEchelon e;
  e.cols = cols;
  e.zero_level = zero_level;
  const int n = static_cast<int>(rows.size());
  for (const KVec& r : rows) {
    require(static_cast<int>(r.size()) == cols, ErrorCode::kDimensionMismatch, "ragged matrix");
  }
  int next = 0;
  for (int c = 0; c < cols && next < n; ++c) {
    int sel = -1;
    for (int r = next; r < n; ++r) {
      if (!rows[r][c].is_zero()) {
        sel = r;
        break;
      }
    }
    if (sel < 0) continue;
    std::swap(rows[next], rows[sel]);
    FieldElem inv = rows[next][c].inverse();
    for (int i = c; i < cols; ++i) {
      if (!rows[next][i].is_zero()) rows[next][i] *= inv;
    }
    for (int r = 0; r < n; ++r) {
      if (r == next || rows[r][c].is_zero()) continue;
      FieldElem f = rows[r][c];
      eliminate(rows[r], rows[next], f, c);
    }
    e.pivots.push_back(c);
    ++next;
  }
  rows.resize(next);
  e.rows = std::move(rows);
  return e;
}

std::vector<KVec> k_nullspace(const std::vector<KVec>& eqs, int cols, const Level* zero_level) {
  KEchelon e = k_rref(eqs, cols, zero_level);
  std::vector<bool> is_pivot(cols, false);
  for (int pc : e.pivots) is_pivot[pc] = true;
  std::vector<KVec> basis;
  FieldElem one(zero_level);
  one.raw()[0] = 1;
  for (int f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    KVec v(cols, FieldElem(zero_level));
    v[f] = one;
    for (std::size_t i = 0; i < e.rows.size(); ++i) v[e.pivots[i]] = -e.rows[i][f];
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace unisheaf
