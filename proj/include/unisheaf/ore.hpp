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

// Twisted polynomials K{sigma} with sigma a = a^q sigma, and square matrices
// over them. An Ore polynomial acts on field elements as the additive
// polynomial sum b_i z^(q^i), and on series coefficientwise.

#ifndef UNISHEAF_ORE_HPP_
#define UNISHEAF_ORE_HPP_

#include <utility>
#include <vector>

#include "unisheaf/ffield.hpp"
#include "unisheaf/tseries.hpp"

namespace unisheaf {

class OrePoly {
 public:
  OrePoly() = default;
  explicit OrePoly(const Level* zero_level) : zero_(zero_level) {}
  OrePoly(std::vector<FieldElem> coeffs, const Level* zero_level);

  static OrePoly constant(const FieldElem& c);
  static OrePoly sigma_power(int i, const FieldElem& c);

  const Level* zero_level() const { return zero_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  FieldElem coeff(int i) const;
  const std::vector<FieldElem>& coeffs() const { return c_; }
  const Level* level() const;

  FieldElem operator()(const FieldElem& z) const;
  Series apply(const Series& s) const;

  friend OrePoly operator+(const OrePoly& a, const OrePoly& b);
  friend OrePoly operator-(const OrePoly& a, const OrePoly& b);
  friend OrePoly operator*(const OrePoly& a, const OrePoly& b);
  bool operator==(const OrePoly& o) const;

 private:
  void trim();

  const Level* zero_ = nullptr;
  std::vector<FieldElem> c_;
};

// a = quotient * d + remainder with deg remainder < deg d.
std::pair<OrePoly, OrePoly> right_divmod(const OrePoly& a, const OrePoly& d);

class OreMat {
 public:
  OreMat() = default;
  OreMat(int k, const Level* zero_level);
  explicit OreMat(const OrePoly& p);

  static OreMat identity(int k, const Level* zero_level);
  static OreMat scalar(int k, const FieldElem& c);

  int k() const { return k_; }
  OrePoly& at(int i, int j) { return e_[std::size_t(i) * k_ + j]; }
  const OrePoly& at(int i, int j) const { return e_[std::size_t(i) * k_ + j]; }
  const Level* zero_level() const { return zero_; }
  int degree() const;
  const Level* level() const;

  std::vector<FieldElem> operator()(const std::vector<FieldElem>& z) const;
  // Row i of the result is sum_j at(i, j) applied to s[j].
  std::vector<Series> apply(const std::vector<Series>& s) const;
  // Constant term matrix (coefficient of sigma^0).
  std::vector<std::vector<FieldElem>> constant_part() const;

  friend OreMat operator+(const OreMat& a, const OreMat& b);
  friend OreMat operator-(const OreMat& a, const OreMat& b);
  friend OreMat operator*(const OreMat& a, const OreMat& b);
  bool operator==(const OreMat& o) const;

 private:
  int k_ = 0;
  const Level* zero_ = nullptr;
  std::vector<OrePoly> e_;
};

}  // namespace unisheaf

#endif  // UNISHEAF_ORE_HPP_
