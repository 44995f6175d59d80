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

// Dense linear algebra over a tower field.

#ifndef UNISHEAF_KMATRIX_HPP_
#define UNISHEAF_KMATRIX_HPP_

#include <vector>

#include "unisheaf/ffield.hpp"

namespace unisheaf {

using KVec = std::vector<FieldElem>;

// Reduced row echelon form with strictly increasing pivot columns.
struct KEchelon {
  int cols = 0;
  const Level* zero_level = nullptr;
  std::vector<KVec> rows;
  std::vector<int> pivots;

  int rank() const { return static_cast<int>(rows.size()); }
  KVec reduce(KVec v) const;
  bool contains(const KVec& v) const;
};

KEchelon k_rref(std::vector<KVec> rows, int cols, const Level* zero_level);

// Basis of {x : sum_j eqs[i][j] x_j = 0 for all i}, one vector per free
// column in increasing order.
std::vector<KVec> k_nullspace(const std::vector<KVec>& eqs, int cols, const Level* zero_level);

bool k_is_zero(const KVec& v);

}  // namespace unisheaf

#endif  // UNISHEAF_KMATRIX_HPP_
