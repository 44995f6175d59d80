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

// Dense linear algebra over a prime field F_p with small p.

#ifndef UNISHEAF_FP_LINALG_HPP_
#define UNISHEAF_FP_LINALG_HPP_

#include <cstdint>
#include <optional>
#include <vector>

namespace unisheaf {

using Coeff = std::uint16_t;
using FpVec = std::vector<Coeff>;

inline Coeff fp_add(Coeff a, Coeff b, std::uint32_t p) {
  std::uint32_t s = std::uint32_t(a) + b;
  return Coeff(s >= p ? s - p : s);
}
inline Coeff fp_sub(Coeff a, Coeff b, std::uint32_t p) {
  return Coeff(a >= b ? a - b : std::uint32_t(a) + p - b);
}
inline Coeff fp_neg(Coeff a, std::uint32_t p) { return Coeff(a == 0 ? 0 : p - a); }
inline Coeff fp_mul(Coeff a, Coeff b, std::uint32_t p) {
  return Coeff((std::uint32_t(a) * b) % p);
}
Coeff fp_inv(Coeff a, std::uint32_t p);

// Row-major matrix over F_p.
class FpMatrix {
 public:
  FpMatrix(int rows, int cols, std::uint32_t p) : rows_(rows), cols_(cols), p_(p), data_(std::size_t(rows) * cols, 0) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  std::uint32_t p() const { return p_; }
  Coeff& at(int r, int c) { return data_[std::size_t(r) * cols_ + c]; }
  Coeff at(int r, int c) const { return data_[std::size_t(r) * cols_ + c]; }
  void set_column(int c, const FpVec& v);

 private:
  int rows_;
  int cols_;
  std::uint32_t p_;
  FpVec data_;
};

// Reduced row echelon form. Pivots are strictly increasing and each pivot
// entry is 1 with zeros above and below it.
struct FpEchelon {
  int cols = 0;
  std::uint32_t p = 2;
  std::vector<FpVec> rows;
  std::vector<int> pivots;

  int rank() const { return static_cast<int>(rows.size()); }
  FpVec reduce(FpVec v) const;
  bool contains(const FpVec& v) const;
};

FpEchelon fp_rref(std::vector<FpVec> rows, int cols, std::uint32_t p);

// Basis of {x : M x = 0}, one vector per free column in increasing order.
std::vector<FpVec> fp_nullspace(const FpMatrix& m);

// Some solution of M x = b (free variables set to zero), or nothing.
std::optional<FpVec> fp_solve(const FpMatrix& m, const FpVec& b);

// Lexicographically least or greatest element of x0 + span(kernel), with
// coordinate 0 the most significant.
FpVec fp_coset_pick(FpVec x0, const FpEchelon& kernel, bool greatest);

}  // namespace unisheaf

#endif  // UNISHEAF_FP_LINALG_HPP_
