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

#include "unisheaf/ore.hpp"

#include <algorithm>

namespace unisheaf {

OrePoly::OrePoly(std::vector<FieldElem> coeffs, const Level* zero_level) : zero_(zero_level), c_(std::move(coeffs)) {
  trim();
}

OrePoly OrePoly::constant(const FieldElem& c) { return OrePoly({c}, c.tower().prime_level()); }

OrePoly OrePoly::sigma_power(int i, const FieldElem& c) {
  const Level* zl = c.tower().prime_level();
  std::vector<FieldElem> v(i + 1, FieldElem(zl));
  v[i] = c;
  return OrePoly(std::move(v), zl);
}

void OrePoly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

FieldElem OrePoly::coeff(int i) const {
  if (i < 0 || i > degree()) return FieldElem(zero_);
  return c_[i];
}

const Level* OrePoly::level() const {
  const Level* l = zero_;
  for (const FieldElem& x : c_) l = join_levels(l, x.level());
  return l;
}

FieldElem OrePoly::operator()(const FieldElem& z) const {
  FieldElem acc(join_levels(zero_, z.level()));
  FieldElem pw = z;
  for (int i = 0; i <= degree(); ++i) {
    if (i) pw = pw.frobenius();
    if (!c_[i].is_zero()) acc += c_[i] * pw;
  }
  return acc;
}

Series OrePoly::apply(const Series& s) const {
  Series acc(s.zero_level(), s.low(), s.prec());
  Series tw = s;
  for (int i = 0; i <= degree(); ++i) {
    if (i) tw = tw.frobenius();
    if (!c_[i].is_zero()) acc = acc + tw.scaled(c_[i]);
  }
  return acc;
}

OrePoly operator+(const OrePoly& a, const OrePoly& b) {
  std::vector<FieldElem> c(std::max(a.c_.size(), b.c_.size()), FieldElem(a.zero_));
  for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
  for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
  return OrePoly(std::move(c), a.zero_);
}

OrePoly operator-(const OrePoly& a, const OrePoly& b) {
  std::vector<FieldElem> c(std::max(a.c_.size(), b.c_.size()), FieldElem(a.zero_));
  for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
  for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] -= b.c_[i];
  return OrePoly(std::move(c), a.zero_);
}

OrePoly operator*(const OrePoly& a, const OrePoly& b) {
  if (a.is_zero() || b.is_zero()) return OrePoly(a.zero_);
  std::vector<FieldElem> c(a.c_.size() + b.c_.size() - 1, FieldElem(a.zero_));
  for (std::size_t j = 0; j < b.c_.size(); ++j) {
    if (b.c_[j].is_zero()) continue;
    FieldElem bj = b.c_[j];
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (i) bj = bj.frobenius();
      if (!a.c_[i].is_zero()) c[i + j] += a.c_[i] * bj;
    }
  }
  return OrePoly(std::move(c), a.zero_);
}

bool OrePoly::operator==(const OrePoly& o) const {
  if (c_.size() != o.c_.size()) return false;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] != o.c_[i]) return false;
  }
  return true;
}

std::pair<OrePoly, OrePoly> right_divmod(const OrePoly& a, const OrePoly& d) {
  require(!d.is_zero(), ErrorCode::kDivisionByZero, "Ore division by zero");
  OrePoly r = a;
  OrePoly quot(a.zero_level());
  const int dd = d.degree();
  const FieldElem lead = d.coeff(dd);
  while (r.degree() >= dd) {
    const int shift = r.degree() - dd;
    FieldElem c = r.coeff(r.degree()) / lead.frobenius(shift);
    OrePoly term = OrePoly::sigma_power(shift, c);
    quot = quot + term;
    r = r - term * d;
  }
  return {quot, r};
}

OreMat::OreMat(int k, const Level* zero_level) : k_(k), zero_(zero_level), e_(std::size_t(k) * k, OrePoly(zero_level)) {}

OreMat::OreMat(const OrePoly& p) : k_(1), zero_(p.zero_level()), e_{p} {}

OreMat OreMat::identity(int k, const Level* zero_level) {
  OreMat m(k, zero_level);
  FieldElem one(zero_level);
  one.raw()[0] = 1;
  for (int i = 0; i < k; ++i) m.at(i, i) = OrePoly::constant(one);
  return m;
}

OreMat OreMat::scalar(int k, const FieldElem& c) {
  OreMat m(k, c.tower().prime_level());
  for (int i = 0; i < k; ++i) m.at(i, i) = OrePoly::constant(c);
  return m;
}

int OreMat::degree() const {
  int d = -1;
  for (const OrePoly& p : e_) d = std::max(d, p.degree());
  return d;
}

const Level* OreMat::level() const {
  const Level* l = zero_;
  for (const OrePoly& p : e_) l = join_levels(l, p.level());
  return l;
}

std::vector<FieldElem> OreMat::operator()(const std::vector<FieldElem>& z) const {
  require(static_cast<int>(z.size()) == k_, ErrorCode::kDimensionMismatch, "point has the wrong dimension");
  std::vector<FieldElem> out;
  for (int i = 0; i < k_; ++i) {
    FieldElem acc(zero_);
    for (int j = 0; j < k_; ++j) acc += at(i, j)(z[j]);
    out.push_back(acc);
  }
  return out;
}

std::vector<Series> OreMat::apply(const std::vector<Series>& s) const {
  require(static_cast<int>(s.size()) == k_, ErrorCode::kDimensionMismatch, "series tuple has the wrong length");
  std::vector<Series> out;
  for (int i = 0; i < k_; ++i) {
    Series acc = at(i, 0).apply(s[0]);
    for (int j = 1; j < k_; ++j) acc = acc + at(i, j).apply(s[j]);
    out.push_back(acc);
  }
  return out;
}

std::vector<std::vector<FieldElem>> OreMat::constant_part() const {
  std::vector<std::vector<FieldElem>> m(k_);
  for (int i = 0; i < k_; ++i) {
    for (int j = 0; j < k_; ++j) m[i].push_back(at(i, j).coeff(0));
  }
  return m;
}

OreMat operator+(const OreMat& a, const OreMat& b) {
  require(a.k_ == b.k_, ErrorCode::kDimensionMismatch, "matrix sizes differ");
  OreMat r(a.k_, a.zero_);
  for (std::size_t i = 0; i < a.e_.size(); ++i) r.e_[i] = a.e_[i] + b.e_[i];
  return r;
}

OreMat operator-(const OreMat& a, const OreMat& b) {
  require(a.k_ == b.k_, ErrorCode::kDimensionMismatch, "matrix sizes differ");
  OreMat r(a.k_, a.zero_);
  for (std::size_t i = 0; i < a.e_.size(); ++i) r.e_[i] = a.e_[i] - b.e_[i];
  return r;
}

OreMat operator*(const OreMat& a, const OreMat& b) {
  require(a.k_ == b.k_, ErrorCode::kDimensionMismatch, "matrix sizes differ");
  OreMat r(a.k_, a.zero_);
  for (int i = 0; i < a.k_; ++i) {
    for (int j = 0; j < a.k_; ++j) {
      OrePoly acc(a.zero_);
      for (int l = 0; l < a.k_; ++l) acc = acc + a.at(i, l) * b.at(l, j);
      r.at(i, j) = acc;
    }
  }
  return r;
}

bool OreMat::operator==(const OreMat& o) const {
  if (k_ != o.k_) return false;
  for (std::size_t i = 0; i < e_.size(); ++i) {
    if (!(e_[i] == o.e_[i])) return false;
  }
  return true;
}

}  // namespace unisheaf
