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

// Brute-force oracles shared by the unit tests.

#ifndef UNISHEAF_TESTS_TEST_UTIL_HPP_
#define UNISHEAF_TESTS_TEST_UTIL_HPP_

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "unisheaf/ffield.hpp"

namespace unisheaf::testing_util {

inline FieldElem random_element(const Level* level, std::mt19937_64& rng) {
  FieldElem a(level);
  for (int i = 0; i < level->dim; ++i) a.raw()[i] = Coeff(rng() % level->p);
  return a;
}

// All elements of a level, in lexicographic order.
inline std::vector<FieldElem> all_elements(const Level* level) {
  std::vector<FieldElem> out;
  std::vector<Coeff> digits(level->dim, 0);
  while (true) {
    out.emplace_back(level, std::span<const Coeff>(digits.data(), digits.size()));
    int i = level->dim - 1;
    for (; i >= 0; --i) {
      if (++digits[i] < level->p) break;
      digits[i] = 0;
    }
    if (i < 0) break;
  }
  return out;
}

inline std::uint64_t count_roots(const Level* level, const std::function<FieldElem(const FieldElem&)>& f) {
  std::uint64_t count = 0;
  for (const FieldElem& z : all_elements(level)) count += f(z).is_zero();
  return count;
}

// Exhaustive search for an orthonormal basis of the trace form over F_q.
inline bool self_dual_basis_exists(const Level* level) {
  const Tower& tw = *level->tower;
  const Level* fq = tw.base_level();
  const int m = level->dim / tw.e();
  std::vector<FieldElem> unit;
  for (const FieldElem& x : all_elements(level)) {
    if (trace(x * x, fq).is_one()) unit.push_back(x);
  }
  std::vector<int> chosen;
  std::function<bool(int)> search = [&](int from) {
    if (static_cast<int>(chosen.size()) == m) return true;
    for (int i = from; i < static_cast<int>(unit.size()); ++i) {
      bool ok = true;
      for (int j : chosen) ok = ok && trace(unit[i] * unit[j], fq).is_zero();
      if (!ok) continue;
      chosen.push_back(i);
      if (search(i + 1)) return true;
      chosen.pop_back();
    }
    return false;
  };
  return search(0);
}

}  // namespace unisheaf::testing_util

#endif  // UNISHEAF_TESTS_TEST_UTIL_HPP_
