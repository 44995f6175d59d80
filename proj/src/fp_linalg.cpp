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

#include "unisheaf/fp_linalg.hpp"

#include <utility>

#include "unisheaf/error.hpp"

namespace unisheaf {

Coeff fp_inv(Coeff a, std::uint32_t p) {
  require(a % p != 0, ErrorCode::kDivisionByZero, "inverse of zero in F_p");
  std::int64_t t = 0, new_t = 1, r = p, new_r = a % p;
  while (new_r != 0) {
    std::int64_t q = r / new_r;
    std::int64_t tmp = t - q * new_t;
    t = new_t;
    new_t = tmp;
    tmp = r - q * new_r;
    r = new_r;
    new_r = tmp;
  }
  if (t < 0) t += p;
  return Coeff(t);
}

void FpMatrix::set_column(int c, const FpVec& v) {
  for (int r = 0; r < rows_; ++r) at(r, c) = r < static_cast<int>(v.size()) ? v[r] : 0;
}

namespace {

// Subtracts f * src from dst over the column range [from, cols).
void axpy(FpVec& dst, const FpVec& src, Coeff f, int from, std::uint32_t p) {
  if (f == 0) return;
  for (std::size_t i = from; i < dst.size(); ++i) {
    if (src[i] != 0) dst[i] = fp_sub(dst[i], fp_mul(f, src[i], p), p);
  }
}

}  // namespace

FpVec FpEchelon::reduce(FpVec v) const {
  for (std::size_t i = 0; i < rows.size(); ++i) {
    Coeff f = v[pivots[i]];
    if (f != 0) axpy(v, rows[i], f, pivots[i], p);
  }
  return v;
}

bool FpEchelon::contains(const FpVec& v) const {
  FpVec r = reduce(v);
  for (Coeff c : r) {
    if (c != 0) return false;
  }
  return true;
}

FpEchelon fp_rref(std::vector<FpVec> rows, int cols, std::uint32_t p) {
  FpEchelon e;
  e.cols = cols;
  e.p = p;
  int next = 0;
  const int n = static_cast<int>(rows.size());
  for (int c = 0; c < cols && next < n; ++c) {
    int sel = -1;
    for (int r = next; r < n; ++r) {
      if (rows[r][c] != 0) {
        sel = r;
        break;
      }
    }
    if (sel < 0) continue;
    std::swap(rows[next], rows[sel]);
    Coeff inv = fp_inv(rows[next][c], p);
    for (int i = c; i < cols; ++i) rows[next][i] = fp_mul(rows[next][i], inv, p);
    for (int r = 0; r < n; ++r) {
      if (r != next && rows[r][c] != 0) axpy(rows[r], rows[next], rows[r][c], c, p);
    }
    e.pivots.push_back(c);
    ++next;
  }
  rows.resize(next);
  e.rows = std::move(rows);
  return e;
}

std::vector<FpVec> fp_nullspace(const FpMatrix& m) {
  std::vector<FpVec> rows(m.rows(), FpVec(m.cols()));
  for (int r = 0; r < m.rows(); ++r) {
    for (int c = 0; c < m.cols(); ++c) rows[r][c] = m.at(r, c);
  }
  FpEchelon e = fp_rref(std::move(rows), m.cols(), m.p());
  std::vector<bool> is_pivot(m.cols(), false);
  for (int pc : e.pivots) is_pivot[pc] = true;
  std::vector<FpVec> basis;
  for (int f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    FpVec v(m.cols(), 0);
    v[f] = 1;
    for (std::size_t i = 0; i < e.rows.size(); ++i) v[e.pivots[i]] = fp_neg(e.rows[i][f], m.p());
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<FpVec> fp_solve(const FpMatrix& m, const FpVec& b) {
  const int cols = m.cols() + 1;
  std::vector<FpVec> rows(m.rows(), FpVec(cols));
  for (int r = 0; r < m.rows(); ++r) {
    for (int c = 0; c < m.cols(); ++c) rows[r][c] = m.at(r, c);
    rows[r][m.cols()] = r < static_cast<int>(b.size()) ? b[r] : 0;
  }
  FpEchelon e = fp_rref(std::move(rows), cols, m.p());
  FpVec x(m.cols(), 0);
  for (std::size_t i = 0; i < e.rows.size(); ++i) {
    if (e.pivots[i] == m.cols()) return std::nullopt;
    x[e.pivots[i]] = e.rows[i][m.cols()];
  }
  return x;
}

FpVec fp_coset_pick(FpVec x0, const FpEchelon& kernel, bool greatest) {
  FpVec x = kernel.reduce(std::move(x0));
  if (greatest) {
    const Coeff top = Coeff(kernel.p - 1);
    for (std::size_t i = 0; i < kernel.rows.size(); ++i) {
      int pc = kernel.pivots[i];
      Coeff f = fp_sub(x[pc], top, kernel.p);
      axpy(x, kernel.rows[i], f, pc, kernel.p);
    }
  }
  return x;
}

}  // namespace unisheaf
