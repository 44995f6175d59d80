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

// Finite field towers F_p = L_0 c L_1 c ... c L_top.
//
// Every level is a simple extension of the previous one by a monic
// irreducible polynomial. An element of level L is stored as its flat vector
// of F_p coordinates: the coordinates of c_0, then of c_1, ... where
// a = sum c_i y^i and c_i lives one level down. With this layout the
// embedding of a lower level is zero padding, so elements of different levels
// of the same tower mix freely.
//
// Lexicographic order on elements and polynomials compares coordinate 0
// first (the constant coefficient is most significant).

#ifndef UNISHEAF_FFIELD_HPP_
#define UNISHEAF_FFIELD_HPP_

#include <array>
#include <atomic>
#include <cstdint>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <vector>

#include "unisheaf/error.hpp"
#include "unisheaf/fp_linalg.hpp"

namespace unisheaf {

inline constexpr int kMaxDegree = 64;
inline constexpr int kMaxLevels = 64;
inline constexpr int kDefaultBudgetBits = 64;
inline constexpr int kMaxBudgetBits = 120;

using Exponent = unsigned __int128;

class Tower;
struct FlatRep;

// Selection rule for canonical choices among equally valid candidates.
enum class PickPolicy { kLexLeast, kLexGreatest };

struct Level {
  Tower* tower = nullptr;
  int index = 0;
  int degree = 1;
  int dim = 1;
  std::uint32_t p = 2;
  const Level* base = nullptr;
  // Coefficients c_0 .. c_{degree-1} of the monic modulus, flattened.
  std::vector<Coeff> modulus;
  // Power-basis model of the level over F_p used for fast multiplication.
  std::shared_ptr<const FlatRep> flat;

  double bits() const;
  Exponent order() const;
};

class FieldElem {
 public:
  FieldElem() = default;
  explicit FieldElem(const Level* level) : level_(level) {}
  FieldElem(const Level* level, std::span<const Coeff> coords);

  const Level* level() const { return level_; }
  Tower& tower() const;
  int dim() const { return level_->dim; }
  Coeff coord(int i) const { return c_[i]; }
  std::span<const Coeff> coords() const { return {c_.data(), static_cast<std::size_t>(level_->dim)}; }
  Coeff* raw() { return c_.data(); }
  const Coeff* raw() const { return c_.data(); }

  bool is_zero() const;
  bool is_one() const;

  FieldElem embed(const Level* target) const;
  FieldElem demote(const Level* target) const;
  const Level* min_level() const;

  FieldElem operator-() const;
  FieldElem& operator+=(const FieldElem& o);
  FieldElem& operator-=(const FieldElem& o);
  FieldElem& operator*=(const FieldElem& o);
  FieldElem& operator/=(const FieldElem& o);
  friend FieldElem operator+(FieldElem a, const FieldElem& b) { return a += b; }
  friend FieldElem operator-(FieldElem a, const FieldElem& b) { return a -= b; }
  friend FieldElem operator*(FieldElem a, const FieldElem& b) { return a *= b; }
  friend FieldElem operator/(FieldElem a, const FieldElem& b) { return a /= b; }
  bool operator==(const FieldElem& o) const;
  bool operator!=(const FieldElem& o) const { return !(*this == o); }
  bool lex_less(const FieldElem& o) const;

  FieldElem scaled(Coeff s) const;
  FieldElem pow(Exponent e) const;
  FieldElem inverse() const;
  FieldElem frobenius(int times = 1) const;

  std::string to_string() const;

 private:
  const Level* level_ = nullptr;
  std::array<Coeff, kMaxDegree> c_{};
};

class Tower {
 public:
  static std::shared_ptr<Tower> create(std::uint32_t p, int e, int budget_bits = kDefaultBudgetBits);

  Tower(const Tower&) = delete;
  Tower& operator=(const Tower&) = delete;

  std::uint32_t p() const { return p_; }
  int e() const { return e_; }
  std::uint64_t q() const { return q_; }
  int size() const { return count_.load(std::memory_order_acquire); }
  const Level* level(int i) const;
  const Level* prime_level() const { return level(0); }
  const Level* base_level() const { return level(base_index_); }
  const Level* top() const { return level(size() - 1); }
  int budget_bits() const { return budget_bits_; }
  void set_budget_bits(int bits);

  FieldElem zero() const { return FieldElem(prime_level()); }
  FieldElem one() const;
  FieldElem from_int(std::int64_t v) const;
  FieldElem from_coords(const std::vector<int>& coords, const Level* level = nullptr) const;
  // The element of F_q whose base-p digits, most significant first, spell index.
  FieldElem fq_element(std::uint64_t index) const;
  std::vector<FieldElem> fq_elements() const;
  // Generator of F_q over F_p, or 1 when q = p.
  FieldElem fq_generator() const;

  const Level* extend(int degree);
  const Level* extend_with(const std::vector<FieldElem>& monic);
  std::unique_ptr<Level> trial_level(int degree) const;
  const Level* adopt(std::unique_ptr<Level> level);

  // Returns the lowest existing level at or above `from` accepted by probe.
  // When there is none, the top is extended by the least degree whose trial
  // level is accepted. Throws TowerBudgetExceeded when the budget runs out.
  template <class Probe>
  const Level* first_level_where(const Level* from, Probe&& probe, int max_degree = kMaxDegree);

 private:
  Tower(std::uint32_t p, int e, int budget_bits);
  std::unique_ptr<Level> make_level(const Level* base, int degree, std::vector<Coeff> modulus) const;

  std::uint32_t p_;
  int e_;
  std::uint64_t q_;
  int base_index_;
  int budget_bits_;
  std::array<std::unique_ptr<Level>, kMaxLevels> levels_;
  std::atomic<int> count_{0};
  std::mutex extend_mutex_;
};

const Level* join_levels(const Level* a, const Level* b);

// Tr_{L/M}(a) with L the level of a.
FieldElem trace(const FieldElem& a, const Level* down_to);

// A basis of the level over F_q and its trace dual.
struct DualBasis {
  std::vector<FieldElem> basis;
  std::vector<FieldElem> dual;
  bool self_dual = false;
};
DualBasis dual_basis(const Level* level);

// Greedy F_q-basis of an F_q-stable subspace of L^k, given by an F_p echelon
// form of its flattened coordinates. Rows are visited in lexicographic order.
std::vector<FpVec> fq_basis_greedy(const FpEchelon& space, const Level* level, int k, PickPolicy policy);

FpVec flatten(const std::vector<FieldElem>& point, const Level* level);
std::vector<FieldElem> unflatten(const FpVec& v, const Level* level, int k);

// Matrix over F_p of an additive map L_in^k -> L_out^k.
template <class Map>
FpMatrix additive_map_matrix(const Level* in, const Level* out, int k, Map&& map) {
  const int din = in->dim, dout = out->dim;
  FpMatrix m(k * dout, k * din, in->p);
  for (int comp = 0; comp < k; ++comp) {
    for (int i = 0; i < din; ++i) {
      std::vector<FieldElem> x(k, FieldElem(in));
      x[comp].raw()[i] = 1;
      std::vector<FieldElem> y = map(x);
      m.set_column(comp * din + i, flatten(y, out));
    }
  }
  return m;
}

// Lexicographically least (or greatest) z in the lowest possible level with
// z^q - z = c. Extends the tower by at most one degree p step.
FieldElem artin_schreier_solve(const FieldElem& c, PickPolicy policy = PickPolicy::kLexLeast);

// Canonical F_q-basis of the roots in `level` of b_0 z + b_1 z^q + ... .
std::vector<FieldElem> additive_kernel(const std::vector<FieldElem>& b, const Level* level);

template <class Probe>
const Level* Tower::first_level_where(const Level* from, Probe&& probe, int max_degree) {
  for (int i = from ? from->index : 0; i < size(); ++i) {
    if (probe(level(i))) return level(i);
  }
  for (int d = 2; d <= max_degree; ++d) {
    if (top()->bits() * d > budget_bits_ + 1e-9) break;
    std::unique_ptr<Level> trial = trial_level(d);
    if (probe(trial.get())) return adopt(std::move(trial));
  }
  fail(ErrorCode::kTowerBudgetExceeded,
       "no extension of the top level within " + std::to_string(budget_bits_) + " bits");
}

}  // namespace unisheaf

#endif  // UNISHEAF_FFIELD_HPP_
