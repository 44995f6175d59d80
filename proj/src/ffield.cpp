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

#include "unisheaf/ffield.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <utility>

#include "unisheaf/poly.hpp"

namespace unisheaf {

double Level::bits() const { return dim * std::log2(static_cast<double>(p)); }

Exponent Level::order() const {
  Exponent r = 1;
  for (int i = 0; i < dim; ++i) r *= p;
  return r;
}

namespace {

bool block_is_zero(const Coeff* a, int m) {
  for (int i = 0; i < m; ++i) {
    if (a[i] != 0) return false;
  }
  return true;
}

void mul_dispatch(const Level* L, const Coeff* a, const Coeff* b, Coeff* out);

// out = a * b in level L by schoolbook multiplication over the base level
// followed by reduction modulo the level polynomial. Buffers may not alias.
void mul_rec(const Level* L, const Coeff* a, const Coeff* b, Coeff* out) {
  const std::uint32_t p = L->p;
  if (L->base == nullptr) {
    out[0] = fp_mul(a[0], b[0], p);
    return;
  }
  const Level* B = L->base;
  const int m = B->dim, d = L->degree;
  Coeff prod[2 * kMaxDegree] = {};
  const Coeff* mod = L->modulus.data();
  if (B->base == nullptr) {
    for (int i = 0; i < d; ++i) {
      if (a[i] == 0) continue;
      for (int j = 0; j < d; ++j) {
        if (b[j] != 0) prod[i + j] = fp_add(prod[i + j], fp_mul(a[i], b[j], p), p);
      }
    }
    for (int k = 2 * d - 2; k >= d; --k) {
      Coeff c = prod[k];
      if (c == 0) continue;
      for (int j = 0; j < d; ++j) {
        if (mod[j] != 0) prod[k - d + j] = fp_sub(prod[k - d + j], fp_mul(c, mod[j], p), p);
      }
    }
    std::copy(prod, prod + d, out);
    return;
  }
  bool anz[kMaxDegree], bnz[kMaxDegree];
  for (int i = 0; i < d; ++i) {
    anz[i] = !block_is_zero(a + i * m, m);
    bnz[i] = !block_is_zero(b + i * m, m);
  }
  Coeff tmp[kMaxDegree];
  for (int i = 0; i < d; ++i) {
    if (!anz[i]) continue;
    for (int j = 0; j < d; ++j) {
      if (!bnz[j]) continue;
      mul_dispatch(B, a + i * m, b + j * m, tmp);
      Coeff* dst = prod + (i + j) * m;
      for (int t = 0; t < m; ++t) dst[t] = fp_add(dst[t], tmp[t], p);
    }
  }
  for (int k = 2 * d - 2; k >= d; --k) {
    const Coeff* c = prod + k * m;
    if (block_is_zero(c, m)) continue;
    Coeff cc[kMaxDegree];
    std::copy(c, c + m, cc);
    for (int j = 0; j < d; ++j) {
      const Coeff* f = mod + j * m;
      if (block_is_zero(f, m)) continue;
      mul_dispatch(B, cc, f, tmp);
      Coeff* dst = prod + (k - d + j) * m;
      for (int t = 0; t < m; ++t) dst[t] = fp_sub(dst[t], tmp[t], p);
    }
  }
  std::copy(prod, prod + d * m, out);
}

}  // namespace

// The level viewed as F_p[x]/(g) for the minimal polynomial g of a generator.
struct FlatRep {
  int dim = 0;
  std::uint32_t p = 2;
  // x^dim = sum red[i] x^i.
  std::vector<Coeff> red;
  // Row-major dim x dim change of basis matrices.
  std::vector<Coeff> to_pow;
  std::vector<Coeff> from_pow;
  // Characteristic 2: columns and the reduction polynomial as bit masks.
  std::vector<std::uint64_t> to_pow_cols;
  std::vector<std::uint64_t> from_pow_cols;
  std::uint64_t red_bits = 0;
};

namespace {

void flat_mul_binary(const FlatRep& f, const Coeff* a, const Coeff* b, Coeff* out) {
  const int D = f.dim;
  std::uint64_t A = 0, B = 0;
  for (int j = 0; j < D; ++j) {
    if (a[j]) A ^= f.to_pow_cols[j];
    if (b[j]) B ^= f.to_pow_cols[j];
  }
  unsigned __int128 prod = 0;
  const unsigned __int128 wide = A;
  while (B != 0) {
    int i = __builtin_ctzll(B);
    prod ^= wide << i;
    B &= B - 1;
  }
  for (int k = 2 * D - 2; k >= D; --k) {
    if ((prod >> k) & 1) {
      prod ^= static_cast<unsigned __int128>(1) << k;
      prod ^= static_cast<unsigned __int128>(f.red_bits) << (k - D);
    }
  }
  std::uint64_t C = static_cast<std::uint64_t>(prod);
  std::uint64_t R = 0;
  while (C != 0) {
    int i = __builtin_ctzll(C);
    R ^= f.from_pow_cols[i];
    C &= C - 1;
  }
  for (int j = 0; j < D; ++j) out[j] = Coeff((R >> j) & 1);
}

void flat_mul_general(const FlatRep& f, const Coeff* a, const Coeff* b, Coeff* out) {
  const int D = f.dim;
  const std::uint64_t p = f.p;
  std::uint64_t A[kMaxDegree], B[kMaxDegree], C[2 * kMaxDegree] = {};
  for (int i = 0; i < D; ++i) {
    std::uint64_t sa = 0, sb = 0;
    const Coeff* row = f.to_pow.data() + i * D;
    for (int j = 0; j < D; ++j) {
      sa += std::uint64_t(row[j]) * a[j];
      sb += std::uint64_t(row[j]) * b[j];
    }
    A[i] = sa % p;
    B[i] = sb % p;
  }
  for (int i = 0; i < D; ++i) {
    if (A[i] == 0) continue;
    for (int j = 0; j < D; ++j) C[i + j] += A[i] * B[j];
  }
  for (int k = 2 * D - 2; k >= D; --k) {
    std::uint64_t c = C[k] % p;
    if (c == 0) continue;
    for (int i = 0; i < D; ++i) C[k - D + i] += c * f.red[i];
  }
  for (int i = 0; i < D; ++i) C[i] %= p;
  for (int i = 0; i < D; ++i) {
    std::uint64_t s = 0;
    const Coeff* row = f.from_pow.data() + i * D;
    for (int j = 0; j < D; ++j) s += std::uint64_t(row[j]) * C[j];
    out[i] = Coeff(s % p);
  }
}

void mul_dispatch(const Level* L, const Coeff* a, const Coeff* b, Coeff* out) {
  if (L->flat) {
    if (L->p == 2) {
      flat_mul_binary(*L->flat, a, b, out);
    } else {
      flat_mul_general(*L->flat, a, b, out);
    }
    return;
  }
  mul_rec(L, a, b, out);
}

// Finds a generator of the level over F_p and the matching change of basis.
std::shared_ptr<const FlatRep> build_flat(const Level* L) {
  const int D = L->dim;
  const std::uint32_t p = L->p;
  std::uint64_t state = 0x9e3779b97f4a7c15ull;
  for (int attempt = 0; attempt < 4096; ++attempt) {
    std::array<Coeff, kMaxDegree> gamma{};
    if (attempt < D) {
      gamma[L->base->dim] = 1;
      if (attempt != L->base->dim) gamma[attempt] = Coeff((gamma[attempt] + 1) % p);
    } else {
      for (int i = 0; i < D; ++i) {
        state = state * 6364136223846793005ull + 1442695040888963407ull;
        gamma[i] = Coeff((state >> 33) % p);
      }
    }
    std::vector<FpVec> cols;
    std::array<Coeff, kMaxDegree> pw{};
    pw[0] = 1;
    for (int i = 0; i <= D; ++i) {
      cols.emplace_back(pw.begin(), pw.begin() + D);
      std::array<Coeff, kMaxDegree> next{};
      mul_rec(L, pw.data(), gamma.data(), next.data());
      pw = next;
    }
    // Solve [P | gamma^D | I] to get P^-1 and the reduction coefficients.
    std::vector<FpVec> rows(D, FpVec(2 * D + 1, 0));
    for (int r = 0; r < D; ++r) {
      for (int c = 0; c <= D; ++c) rows[r][c] = cols[c][r];
      rows[r][D + 1 + r] = 1;
    }
    FpEchelon e = fp_rref(rows, 2 * D + 1, p);
    if (e.rank() < D || e.pivots[D - 1] != D - 1) continue;
    auto f = std::make_shared<FlatRep>();
    f->dim = D;
    f->p = p;
    f->red.resize(D);
    f->to_pow.resize(std::size_t(D) * D);
    f->from_pow.resize(std::size_t(D) * D);
    for (int r = 0; r < D; ++r) {
      f->red[r] = e.rows[r][D];
      for (int c = 0; c < D; ++c) {
        f->to_pow[r * D + c] = e.rows[r][D + 1 + c];
        f->from_pow[r * D + c] = cols[c][r];
      }
    }
    if (p == 2) {
      f->to_pow_cols.assign(D, 0);
      f->from_pow_cols.assign(D, 0);
      for (int r = 0; r < D; ++r) {
        for (int c = 0; c < D; ++c) {
          if (f->to_pow[r * D + c]) f->to_pow_cols[c] |= std::uint64_t(1) << r;
          if (f->from_pow[r * D + c]) f->from_pow_cols[c] |= std::uint64_t(1) << r;
        }
        if (f->red[r]) f->red_bits |= std::uint64_t(1) << r;
      }
    }
    return f;
  }
  fail(ErrorCode::kLevelError, "no generator found for the level");
}

bool is_prime(std::uint32_t p) {
  if (p < 2) return false;
  for (std::uint32_t d = 2; d * d <= p; ++d) {
    if (p % d == 0) return false;
  }
  return true;
}

}  // namespace

const Level* join_levels(const Level* a, const Level* b) {
  require(a != nullptr && b != nullptr, ErrorCode::kLevelError, "element without a level");
  require(a->tower == b->tower, ErrorCode::kLevelError, "elements of different towers");
  return a->index >= b->index ? a : b;
}

FieldElem::FieldElem(const Level* level, std::span<const Coeff> coords) : level_(level) {
  require(static_cast<int>(coords.size()) <= level->dim, ErrorCode::kLevelError, "too many coordinates");
  for (std::size_t i = 0; i < coords.size(); ++i) c_[i] = Coeff(coords[i] % level->p);
}

Tower& FieldElem::tower() const { return *level_->tower; }

bool FieldElem::is_zero() const {
  for (int i = 0; i < level_->dim; ++i) {
    if (c_[i] != 0) return false;
  }
  return true;
}

bool FieldElem::is_one() const {
  if (c_[0] != 1) return false;
  for (int i = 1; i < level_->dim; ++i) {
    if (c_[i] != 0) return false;
  }
  return true;
}

FieldElem FieldElem::embed(const Level* target) const {
  require(target->tower == level_->tower && target->index >= level_->index, ErrorCode::kLevelError,
          "cannot embed into a lower level");
  FieldElem r = *this;
  r.level_ = target;
  return r;
}

FieldElem FieldElem::demote(const Level* target) const {
  require(target->tower == level_->tower, ErrorCode::kLevelError, "elements of different towers");
  for (int i = target->dim; i < level_->dim; ++i) {
    require(c_[i] == 0, ErrorCode::kLevelError, "element does not lie in the target level");
  }
  FieldElem r = *this;
  r.level_ = target;
  return r;
}

const Level* FieldElem::min_level() const {
  int hi = -1;
  for (int i = level_->dim - 1; i >= 0; --i) {
    if (c_[i] != 0) {
      hi = i;
      break;
    }
  }
  const Tower& t = *level_->tower;
  for (int i = 0; i <= level_->index; ++i) {
    if (t.level(i)->dim > hi) return t.level(i);
  }
  return level_;
}

FieldElem FieldElem::operator-() const {
  FieldElem r = *this;
  for (int i = 0; i < level_->dim; ++i) r.c_[i] = fp_neg(c_[i], level_->p);
  return r;
}

FieldElem& FieldElem::operator+=(const FieldElem& o) {
  level_ = join_levels(level_, o.level_);
  const std::uint32_t p = level_->p;
  for (int i = 0; i < o.level_->dim; ++i) c_[i] = fp_add(c_[i], o.c_[i], p);
  return *this;
}

FieldElem& FieldElem::operator-=(const FieldElem& o) {
  level_ = join_levels(level_, o.level_);
  const std::uint32_t p = level_->p;
  for (int i = 0; i < o.level_->dim; ++i) c_[i] = fp_sub(c_[i], o.c_[i], p);
  return *this;
}

FieldElem& FieldElem::operator*=(const FieldElem& o) {
  level_ = join_levels(level_, o.level_);
  std::array<Coeff, kMaxDegree> out{};
  mul_dispatch(level_, c_.data(), o.c_.data(), out.data());
  c_ = out;
  return *this;
}

FieldElem& FieldElem::operator/=(const FieldElem& o) { return *this *= o.inverse(); }

bool FieldElem::operator==(const FieldElem& o) const {
  const Level* l = join_levels(level_, o.level_);
  for (int i = 0; i < l->dim; ++i) {
    if (c_[i] != o.c_[i]) return false;
  }
  return true;
}

bool FieldElem::lex_less(const FieldElem& o) const {
  const Level* l = join_levels(level_, o.level_);
  for (int i = 0; i < l->dim; ++i) {
    if (c_[i] != o.c_[i]) return c_[i] < o.c_[i];
  }
  return false;
}

FieldElem FieldElem::scaled(Coeff s) const {
  FieldElem r = *this;
  for (int i = 0; i < level_->dim; ++i) r.c_[i] = fp_mul(c_[i], s, level_->p);
  return r;
}

FieldElem FieldElem::pow(Exponent e) const {
  FieldElem result(level_);
  result.c_[0] = 1;
  FieldElem base = *this;
  while (e != 0) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e != 0) base *= base;
  }
  return result;
}

FieldElem FieldElem::inverse() const {
  require(!is_zero(), ErrorCode::kDivisionByZero, "inverse of zero");
  const Level* l = min_level();
  return demote(l).pow(l->order() - 2).embed(level_);
}

FieldElem FieldElem::frobenius(int times) const {
  FieldElem r = *this;
  const std::uint64_t q = level_->tower->q();
  for (int i = 0; i < times; ++i) r = r.pow(q);
  return r;
}

std::string FieldElem::to_string() const {
  std::string s = "[";
  for (int i = 0; i < level_->dim; ++i) {
    if (i) s += ",";
    s += std::to_string(c_[i]);
  }
  return s + "]@" + std::to_string(level_->index);
}

Tower::Tower(std::uint32_t p, int e, int budget_bits)
    : p_(p), e_(e), q_(1), base_index_(e > 1 ? 1 : 0), budget_bits_(budget_bits) {
  for (int i = 0; i < e; ++i) q_ *= p;
}

std::shared_ptr<Tower> Tower::create(std::uint32_t p, int e, int budget_bits) {
  require(is_prime(p) && p < (1u << 15), ErrorCode::kInvalidArgument, "p must be a prime below 2^15");
  require(e >= 1 && e * std::log2(double(p)) <= 32, ErrorCode::kInvalidArgument, "q out of range");
  require(budget_bits > 0 && budget_bits <= kMaxBudgetBits, ErrorCode::kInvalidArgument, "budget out of range");
  std::shared_ptr<Tower> t(new Tower(p, e, budget_bits));
  auto prime = std::make_unique<Level>();
  prime->tower = t.get();
  prime->p = p;
  t->levels_[0] = std::move(prime);
  t->count_.store(1, std::memory_order_release);
  if (e > 1) t->extend(e);
  return t;
}

const Level* Tower::level(int i) const {
  require(i >= 0 && i < size(), ErrorCode::kLevelError, "no such level");
  return levels_[i].get();
}

void Tower::set_budget_bits(int bits) {
  require(bits > 0 && bits <= kMaxBudgetBits, ErrorCode::kInvalidArgument, "budget out of range");
  budget_bits_ = bits;
}

FieldElem Tower::one() const {
  FieldElem r(prime_level());
  r.raw()[0] = 1;
  return r;
}

FieldElem Tower::from_int(std::int64_t v) const {
  FieldElem r(prime_level());
  std::int64_t m = v % static_cast<std::int64_t>(p_);
  if (m < 0) m += p_;
  r.raw()[0] = Coeff(m);
  return r;
}

FieldElem Tower::from_coords(const std::vector<int>& coords, const Level* level) const {
  if (level == nullptr) {
    for (int i = 0; i < size(); ++i) {
      if (this->level(i)->dim >= static_cast<int>(coords.size())) {
        level = this->level(i);
        break;
      }
    }
    require(level != nullptr, ErrorCode::kLevelError, "no level holds that many coordinates");
  }
  require(static_cast<int>(coords.size()) <= level->dim, ErrorCode::kLevelError, "too many coordinates");
  FieldElem r(level);
  for (std::size_t i = 0; i < coords.size(); ++i) {
    long m = coords[i] % static_cast<long>(p_);
    if (m < 0) m += p_;
    r.raw()[i] = Coeff(m);
  }
  return r;
}

FieldElem Tower::fq_element(std::uint64_t index) const {
  FieldElem r(base_level());
  for (int i = e_ - 1; i >= 0; --i) {
    r.raw()[i] = Coeff(index % p_);
    index /= p_;
  }
  return r;
}

std::vector<FieldElem> Tower::fq_elements() const {
  std::vector<FieldElem> out;
  out.reserve(q_);
  for (std::uint64_t i = 0; i < q_; ++i) out.push_back(fq_element(i));
  return out;
}

FieldElem Tower::fq_generator() const {
  FieldElem r(base_level());
  r.raw()[e_ > 1 ? 1 : 0] = 1;
  return r;
}

std::unique_ptr<Level> Tower::make_level(const Level* base, int degree, std::vector<Coeff> modulus) const {
  auto lvl = std::make_unique<Level>();
  lvl->tower = const_cast<Tower*>(this);
  lvl->index = base->index + 1;
  lvl->degree = degree;
  lvl->dim = base->dim * degree;
  lvl->p = p_;
  lvl->base = base;
  lvl->modulus = std::move(modulus);
  if (base->base != nullptr) lvl->flat = build_flat(lvl.get());
  return lvl;
}

std::unique_ptr<Level> Tower::trial_level(int degree) const {
  require(degree >= 2, ErrorCode::kInvalidArgument, "extension degree must be at least 2");
  const Level* t = top();
  require(t->dim * degree <= kMaxDegree, ErrorCode::kTowerBudgetExceeded, "extension exceeds the coordinate limit");
  require(size() < kMaxLevels, ErrorCode::kTowerBudgetExceeded, "too many levels");
  const int m = t->dim;
  std::vector<Coeff> digits(std::size_t(degree) * m, 0);
  digits[m - 1] = 1;
  while (true) {
    std::vector<FieldElem> coeffs;
    for (int i = 0; i < degree; ++i) {
      coeffs.emplace_back(t, std::span<const Coeff>(digits.data() + i * m, m));
    }
    FieldElem one(t);
    one.raw()[0] = 1;
    coeffs.push_back(one);
    if (is_irreducible(Poly(coeffs, t))) return make_level(t, degree, digits);
    int i = static_cast<int>(digits.size()) - 1;
    for (; i >= 0; --i) {
      if (++digits[i] < p_) break;
      digits[i] = 0;
    }
    require(i >= 0, ErrorCode::kTowerBudgetExceeded, "no irreducible polynomial found");
  }
}

const Level* Tower::adopt(std::unique_ptr<Level> level) {
  std::lock_guard<std::mutex> lock(extend_mutex_);
  int n = size();
  require(level->tower == this && level->index == n && level->base == levels_[n - 1].get(), ErrorCode::kLevelError,
          "level does not extend the current top");
  require(n < kMaxLevels, ErrorCode::kTowerBudgetExceeded, "too many levels");
  const Level* raw = level.get();
  levels_[n] = std::move(level);
  count_.store(n + 1, std::memory_order_release);
  return raw;
}

const Level* Tower::extend(int degree) {
  require(top()->bits() * degree <= budget_bits_ + 1e-9 || size() == 1, ErrorCode::kTowerBudgetExceeded,
          "extension exceeds the tower budget");
  return adopt(trial_level(degree));
}

const Level* Tower::extend_with(const std::vector<FieldElem>& monic) {
  const Level* t = top();
  const int degree = static_cast<int>(monic.size()) - 1;
  require(degree >= 2, ErrorCode::kInvalidArgument, "extension degree must be at least 2");
  require(monic.back().is_one(), ErrorCode::kInvalidArgument, "polynomial must be monic");
  require(t->dim * degree <= kMaxDegree && t->bits() * degree <= budget_bits_ + 1e-9,
          ErrorCode::kTowerBudgetExceeded, "extension exceeds the tower budget");
  Poly f(monic, t);
  require(is_irreducible(f), ErrorCode::kInvalidArgument, "polynomial is reducible");
  std::vector<Coeff> digits;
  for (int i = 0; i < degree; ++i) {
    FieldElem c = monic[i].embed(t);
    digits.insert(digits.end(), c.coords().begin(), c.coords().end());
  }
  return adopt(make_level(t, degree, std::move(digits)));
}

FieldElem trace(const FieldElem& a, const Level* down_to) {
  const Level* L = a.level();
  require(down_to->tower == L->tower && down_to->index <= L->index, ErrorCode::kLevelError,
          "trace target is not below the element level");
  const int r = L->dim / down_to->dim;
  const Exponent m = down_to->order();
  FieldElem x = a, acc = a;
  for (int i = 1; i < r; ++i) {
    x = x.pow(m);
    acc += x;
  }
  return acc.demote(down_to);
}

FpVec flatten(const std::vector<FieldElem>& point, const Level* level) {
  const int d = level->dim;
  FpVec v(point.size() * d, 0);
  for (std::size_t i = 0; i < point.size(); ++i) {
    FieldElem e = point[i].demote(level);
    std::copy(e.raw(), e.raw() + d, v.begin() + i * d);
  }
  return v;
}

std::vector<FieldElem> unflatten(const FpVec& v, const Level* level, int k) {
  const int d = level->dim;
  std::vector<FieldElem> out;
  out.reserve(k);
  for (int i = 0; i < k; ++i) out.emplace_back(level, std::span<const Coeff>(v.data() + i * d, d));
  return out;
}

std::vector<FpVec> fq_basis_greedy(const FpEchelon& space, const Level* level, int k, PickPolicy policy) {
  const Tower& tw = *level->tower;
  std::vector<FieldElem> omega_pows;
  FieldElem w = tw.one();
  for (int j = 0; j < tw.e(); ++j) {
    omega_pows.push_back(w);
    w *= tw.fq_generator();
  }
  std::vector<int> order(space.rows.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  if (policy == PickPolicy::kLexLeast) std::reverse(order.begin(), order.end());
  std::vector<FpVec> span_rows;
  FpEchelon span = fp_rref({}, space.cols, space.p);
  std::vector<FpVec> chosen;
  for (int idx : order) {
    const FpVec& row = space.rows[idx];
    if (span.contains(row)) continue;
    chosen.push_back(row);
    std::vector<FieldElem> pt = unflatten(row, level, k);
    for (const FieldElem& om : omega_pows) {
      std::vector<FieldElem> scaled = pt;
      for (FieldElem& c : scaled) c *= om;
      span_rows.push_back(flatten(scaled, level));
    }
    span = fp_rref(span_rows, space.cols, space.p);
  }
  return chosen;
}

namespace {

// Elements of F_q whose square is a, or nothing.
std::optional<FieldElem> fq_sqrt(const Tower& tw, const FieldElem& a) {
  require(tw.q() <= (1u << 16), ErrorCode::kInvalidArgument, "square roots need q <= 2^16");
  for (const FieldElem& x : tw.fq_elements()) {
    if (x * x == a) return x;
  }
  return std::nullopt;
}

// Gauss-Jordan over a field; returns nothing when singular.
std::optional<std::vector<std::vector<FieldElem>>> invert_square(std::vector<std::vector<FieldElem>> a) {
  const int n = static_cast<int>(a.size());
  const Tower& tw = a[0][0].tower();
  std::vector<std::vector<FieldElem>> inv(n, std::vector<FieldElem>(n, tw.zero()));
  for (int i = 0; i < n; ++i) inv[i][i] = tw.one();
  for (int c = 0; c < n; ++c) {
    int sel = -1;
    for (int r = c; r < n; ++r) {
      if (!a[r][c].is_zero()) {
        sel = r;
        break;
      }
    }
    if (sel < 0) return std::nullopt;
    std::swap(a[c], a[sel]);
    std::swap(inv[c], inv[sel]);
    FieldElem f = a[c][c].inverse();
    for (int j = 0; j < n; ++j) {
      a[c][j] *= f;
      inv[c][j] *= f;
    }
    for (int r = 0; r < n; ++r) {
      if (r == c || a[r][c].is_zero()) continue;
      FieldElem g = a[r][c];
      for (int j = 0; j < n; ++j) {
        a[r][j] -= g * a[c][j];
        inv[r][j] -= g * inv[c][j];
      }
    }
  }
  return inv;
}

int fq_rank(const std::vector<FieldElem>& elems, const Level* level) {
  std::vector<FpVec> rows;
  const Tower& tw = *level->tower;
  FieldElem w = tw.one();
  for (int j = 0; j < tw.e(); ++j) {
    for (const FieldElem& x : elems) rows.push_back(flatten({x * w}, level));
    w *= tw.fq_generator();
  }
  return fp_rref(rows, level->dim, level->p).rank() / tw.e();
}

// Independent subset, in order, of the given elements.
std::vector<FieldElem> fq_independent(const std::vector<FieldElem>& elems, const Level* level) {
  std::vector<FieldElem> out;
  for (const FieldElem& x : elems) {
    out.push_back(x);
    if (fq_rank(out, level) < static_cast<int>(out.size())) out.pop_back();
  }
  return out;
}

std::optional<std::vector<FieldElem>> orthonormal_basis(const Level* L, const std::vector<FieldElem>& start) {
  const Tower& tw = *L->tower;
  const Level* fq = tw.base_level();
  auto form = [&](const FieldElem& a, const FieldElem& b) { return trace((a * b).embed(L), fq); };
  std::vector<FieldElem> w = start;
  std::vector<FieldElem> out;
  if (tw.p() == 2) {
    FieldElem c = tw.one().embed(L);
    while (!w.empty()) {
      std::optional<FieldElem> v;
      auto ok = [&](const FieldElem& cand) {
        if (cand.is_zero() || form(cand, cand).is_zero()) return false;
        if (w.size() == 1) return true;
        return fq_rank({cand, c}, L) == 2 || c.is_zero();
      };
      for (const FieldElem& cand : w) {
        if (ok(cand)) {
          v = cand;
          break;
        }
      }
      for (std::size_t i = 0; i < w.size() && !v; ++i) {
        for (std::size_t j = i + 1; j < w.size() && !v; ++j) {
          if (ok(w[i] + w[j])) v = w[i] + w[j];
        }
      }
      if (!v) return std::nullopt;
      FieldElem qv = form(*v, *v);
      FieldElem root = qv.pow(tw.q() / 2);
      FieldElem unit = *v * root.inverse();
      out.push_back(unit);
      std::vector<FieldElem> next;
      for (const FieldElem& x : w) next.push_back(x - form(x, unit) * unit);
      c = c - form(c, unit) * unit;
      w = fq_independent(next, L);
    }
    return out;
  }
  std::vector<FieldElem> orth, norms;
  while (!w.empty()) {
    std::optional<FieldElem> v;
    for (const FieldElem& cand : w) {
      if (!form(cand, cand).is_zero()) {
        v = cand;
        break;
      }
    }
    for (std::size_t i = 0; i < w.size() && !v; ++i) {
      for (std::size_t j = i + 1; j < w.size() && !v; ++j) {
        if (!form(w[i] + w[j], w[i] + w[j]).is_zero()) v = w[i] + w[j];
      }
    }
    if (!v) return std::nullopt;
    FieldElem d = form(*v, *v);
    orth.push_back(*v);
    norms.push_back(d);
    std::vector<FieldElem> next;
    FieldElem dinv = d.inverse();
    for (const FieldElem& x : w) next.push_back(x - form(x, *v) * dinv * *v);
    w = fq_independent(next, L);
  }
  std::vector<int> nonsquare;
  for (std::size_t i = 0; i < orth.size(); ++i) {
    std::optional<FieldElem> r = fq_sqrt(tw, norms[i]);
    if (r) {
      out.push_back(orth[i] * r->inverse());
    } else {
      nonsquare.push_back(static_cast<int>(i));
    }
  }
  if (nonsquare.size() % 2 != 0) return std::nullopt;
  for (std::size_t k = 0; k < nonsquare.size(); k += 2) {
    const FieldElem &a = norms[nonsquare[k]], &b = norms[nonsquare[k + 1]];
    const FieldElem &va = orth[nonsquare[k]], &vb = orth[nonsquare[k + 1]];
    bool found = false;
    for (const FieldElem& x : tw.fq_elements()) {
      std::optional<FieldElem> y = fq_sqrt(tw, (tw.one() - a * x * x) / b);
      if (!y) continue;
      FieldElem w1 = x * va + *y * vb;
      FieldElem w2 = b * *y * va - a * x * vb;
      std::optional<FieldElem> r = fq_sqrt(tw, a * b);
      if (!r) return std::nullopt;
      out.push_back(w1);
      out.push_back(w2 * r->inverse());
      found = true;
      break;
    }
    if (!found) return std::nullopt;
  }
  return out;
}

}  // namespace

DualBasis dual_basis(const Level* level) {
  const Tower& tw = *level->tower;
  const Level* fq = tw.base_level();
  require(level->index >= fq->index, ErrorCode::kLevelError, "level lies below F_q");
  const int e = tw.e();
  const int m = level->dim / e;
  std::vector<FieldElem> block;
  for (int j = 0; j < m; ++j) {
    FieldElem b(level);
    b.raw()[j * e] = 1;
    block.push_back(b);
  }
  DualBasis out;
  const bool exists = tw.p() == 2 || m % 2 == 1;
  if (exists) {
    std::optional<std::vector<FieldElem>> ortho = orthonormal_basis(level, block);
    if (ortho && static_cast<int>(ortho->size()) == m) {
      for (FieldElem& x : *ortho) x = x.embed(level);
      out.basis = *ortho;
      out.dual = *ortho;
      out.self_dual = true;
      return out;
    }
  }
  std::vector<std::vector<FieldElem>> gram(m, std::vector<FieldElem>(m, tw.zero()));
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) gram[i][j] = trace(block[i] * block[j], fq);
  }
  auto inv = invert_square(gram);
  require(inv.has_value(), ErrorCode::kLevelError, "trace form is degenerate");
  out.basis = block;
  for (int j = 0; j < m; ++j) {
    FieldElem acc(level);
    for (int i = 0; i < m; ++i) acc += (*inv)[i][j] * block[i];
    out.dual.push_back(acc);
  }
  return out;
}

FieldElem artin_schreier_solve(const FieldElem& c, PickPolicy policy) {
  Tower& tw = c.tower();
  const Level* start = join_levels(c.level(), tw.base_level());
  std::optional<FieldElem> result;
  const std::uint64_t q = tw.q();
  auto probe = [&](const Level* L) {
    FpMatrix m = additive_map_matrix(L, L, 1, [&](const std::vector<FieldElem>& z) {
      return std::vector<FieldElem>{z[0].pow(q) - z[0]};
    });
    std::optional<FpVec> x = fp_solve(m, flatten({c}, L));
    if (!x) return false;
    FpEchelon ker = fp_rref(fp_nullspace(m), L->dim, L->p);
    result = unflatten(fp_coset_pick(*x, ker, policy == PickPolicy::kLexGreatest), L, 1)[0];
    return true;
  };
  tw.first_level_where(start, probe);
  return *result;
}

std::vector<FieldElem> additive_kernel(const std::vector<FieldElem>& b, const Level* level) {
  const Tower& tw = *level->tower;
  require(level->index >= tw.base_level()->index, ErrorCode::kLevelError, "level lies below F_q");
  const Level* out = level;
  for (const FieldElem& x : b) out = join_levels(out, x.level());
  const std::uint64_t q = tw.q();
  FpMatrix m = additive_map_matrix(level, out, 1, [&](const std::vector<FieldElem>& z) {
    FieldElem acc(out), pw = z[0];
    for (std::size_t i = 0; i < b.size(); ++i) {
      if (i) pw = pw.pow(q);
      acc += b[i] * pw;
    }
    return std::vector<FieldElem>{acc};
  });
  FpEchelon ker = fp_rref(fp_nullspace(m), level->dim, level->p);
  std::vector<FieldElem> basis;
  for (const FpVec& v : fq_basis_greedy(ker, level, 1, PickPolicy::kLexLeast)) {
    basis.push_back(unflatten(v, level, 1)[0]);
  }
  return basis;
}

}  // namespace unisheaf
