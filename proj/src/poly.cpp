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

#include "unisheaf/poly.hpp"

#include <algorithm>

namespace unisheaf {

Poly::Poly(std::vector<FieldElem> coeffs, const Level* level) : level_(level), c_(std::move(coeffs)) {
  for (FieldElem& c : c_) c = c.level()->index > level->index ? c.demote(level) : c.embed(level);
  trim();
}

Poly Poly::x(const Level* level) {
  FieldElem one(level);
  one.raw()[0] = 1;
  return Poly({FieldElem(level), one}, level);
}

Poly Poly::constant(const FieldElem& c) { return Poly({c}, c.level()); }

void Poly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

FieldElem Poly::coeff(int i) const {
  if (i < 0 || i >= static_cast<int>(c_.size())) return FieldElem(level_);
  return c_[i];
}

FieldElem Poly::eval(const FieldElem& at) const {
  FieldElem acc(join_levels(level_, at.level()));
  for (int i = degree(); i >= 0; --i) acc = acc * at + c_[i];
  return acc;
}

Poly Poly::monic() const {
  require(!is_zero(), ErrorCode::kDivisionByZero, "zero polynomial has no monic multiple");
  return *this * lead().inverse();
}

Poly Poly::derivative() const {
  std::vector<FieldElem> d;
  for (int i = 1; i <= degree(); ++i) d.push_back(c_[i].scaled(Coeff(i % level_->p)));
  return Poly(d, level_);
}

Poly operator+(const Poly& a, const Poly& b) {
  const Level* l = join_levels(a.level_, b.level_);
  std::vector<FieldElem> c(std::max(a.c_.size(), b.c_.size()), FieldElem(l));
  for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
  for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
  return Poly(std::move(c), l);
}

Poly operator-(const Poly& a, const Poly& b) {
  const Level* l = join_levels(a.level_, b.level_);
  std::vector<FieldElem> c(std::max(a.c_.size(), b.c_.size()), FieldElem(l));
  for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
  for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] -= b.c_[i];
  return Poly(std::move(c), l);
}

Poly operator*(const Poly& a, const Poly& b) {
  const Level* l = join_levels(a.level_, b.level_);
  if (a.is_zero() || b.is_zero()) return Poly(l);
  std::vector<FieldElem> c(a.c_.size() + b.c_.size() - 1, FieldElem(l));
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
  }
  return Poly(std::move(c), l);
}

Poly operator*(const Poly& a, const FieldElem& s) {
  const Level* l = join_levels(a.level_, s.level());
  std::vector<FieldElem> c;
  for (const FieldElem& x : a.c_) c.push_back(x * s);
  return Poly(std::move(c), l);
}

bool Poly::operator==(const Poly& o) const {
  if (c_.size() != o.c_.size()) return false;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] != o.c_[i]) return false;
  }
  return true;
}

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
  require(!b.is_zero(), ErrorCode::kDivisionByZero, "polynomial division by zero");
  const Level* l = join_levels(a.level(), b.level());
  std::vector<FieldElem> r = a.coeffs();
  for (FieldElem& x : r) x = x.embed(l);
  const int db = b.degree();
  if (a.degree() < db) return {Poly(l), Poly(r, l)};
  std::vector<FieldElem> q(a.degree() - db + 1, FieldElem(l));
  FieldElem inv = b.lead().inverse();
  for (int k = a.degree(); k >= db; --k) {
    if (r[k].is_zero()) continue;
    FieldElem f = r[k] * inv;
    q[k - db] = f;
    for (int j = 0; j <= db; ++j) r[k - db + j] -= f * b.coeffs()[j];
  }
  r.resize(db);
  return {Poly(q, l), Poly(r, l)};
}

Poly gcd(Poly a, Poly b) {
  while (!b.is_zero()) {
    Poly r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.is_zero() ? a : a.monic();
}

Poly mulmod(const Poly& a, const Poly& b, const Poly& m) { return divmod(a * b, m).second; }

Poly powmod(Poly base, Exponent e, const Poly& m) {
  FieldElem one(m.level());
  one.raw()[0] = 1;
  Poly result = divmod(Poly::constant(one), m).second;
  base = divmod(base, m).second;
  while (e != 0) {
    if (e & 1) result = mulmod(result, base, m);
    e >>= 1;
    if (e != 0) base = mulmod(base, base, m);
  }
  return result;
}

Poly pow(const Poly& base, int e) {
  FieldElem one(base.level());
  one.raw()[0] = 1;
  Poly result = Poly::constant(one);
  for (int i = 0; i < e; ++i) result = result * base;
  return result;
}

bool is_irreducible(const Poly& f) {
  const int d = f.degree();
  if (d <= 0) return false;
  if (d == 1) return true;
  if (f.coeff(0).is_zero()) return false;
  const Level* L = f.level();
  Poly fm = f.monic();
  Poly x = Poly::x(L);
  Poly h = x;
  const Exponent Q = L->order();
  for (int i = 1; i <= d / 2; ++i) {
    h = powmod(h, Q, fm);
    if (gcd(fm, h - x).degree() > 0) return false;
  }
  return true;
}

}  // namespace unisheaf
