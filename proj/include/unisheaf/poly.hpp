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

// Dense univariate polynomials with coefficients in a tower level.

#ifndef UNISHEAF_POLY_HPP_
#define UNISHEAF_POLY_HPP_

#include <utility>
#include <vector>

#include "unisheaf/ffield.hpp"

namespace unisheaf {

class Poly {
 public:
  Poly() = default;
  explicit Poly(const Level* level) : level_(level) {}
  Poly(std::vector<FieldElem> coeffs, const Level* level);

  static Poly x(const Level* level);
  static Poly constant(const FieldElem& c);

  const Level* level() const { return level_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  FieldElem coeff(int i) const;
  const std::vector<FieldElem>& coeffs() const { return c_; }
  const FieldElem& lead() const { return c_.back(); }

  FieldElem eval(const FieldElem& at) const;
  Poly monic() const;
  Poly derivative() const;

  friend Poly operator+(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a, const Poly& b);
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(const Poly& a, const FieldElem& s);
  bool operator==(const Poly& o) const;

 private:
  void trim();

  const Level* level_ = nullptr;
  std::vector<FieldElem> c_;
};

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);
Poly gcd(Poly a, Poly b);
Poly mulmod(const Poly& a, const Poly& b, const Poly& m);
Poly powmod(Poly base, Exponent e, const Poly& m);
Poly pow(const Poly& base, int e);

// Ben-Or test over the field given by the level of f's coefficients.
bool is_irreducible(const Poly& f);

}  // namespace unisheaf

#endif  // UNISHEAF_POLY_HPP_
