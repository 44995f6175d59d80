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

#include "unisheaf/tseries.hpp"

#include <algorithm>
#include <climits>
#include <utility>

namespace unisheaf {

Series::Series(const Level* zero_level, int low, int prec)
    : zero_(zero_level), low_(std::min(low, prec)), prec_(prec) {
  c_.assign(prec_ - low_, FieldElem(zero_level));
}

Series::Series(std::vector<FieldElem> coeffs, int low, int prec) : low_(std::min(low, prec)), prec_(prec) {
  require(!coeffs.empty(), ErrorCode::kInvalidArgument, "series needs a coefficient to locate its field");
  zero_ = coeffs[0].tower().prime_level();
  c_ = std::move(coeffs);
  c_.resize(prec_ - low_, FieldElem(zero_));
}

Series Series::constant(const FieldElem& c, int prec) { return monomial(c, 0, prec); }

Series Series::monomial(const FieldElem& c, int exponent, int prec) {
  Series s(c.tower().prime_level(), std::min(0, exponent), prec);
  if (exponent < prec) s.set_coeff(exponent, c);
  return s;
}

FieldElem Series::coeff(int e) const {
  if (e < low_) return FieldElem(zero_);
  require(e < prec_, ErrorCode::kPrecisionExhausted,
          "coefficient of t^" + std::to_string(e) + " beyond precision " + std::to_string(prec_));
  return c_[e - low_];
}

void Series::set_coeff(int e, const FieldElem& v) {
  require(e >= low_ && e < prec_, ErrorCode::kPrecisionExhausted, "exponent outside the window");
  c_[e - low_] = v;
}

int Series::valuation() const {
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (!c_[i].is_zero()) return low_ + static_cast<int>(i);
  }
  return prec_;
}

const Level* Series::level() const {
  const Level* l = zero_;
  for (const FieldElem& x : c_) l = join_levels(l, x.level());
  return l;
}

Series Series::truncated(int prec) const {
  Series r = *this;
  r.prec_ = std::min(prec_, prec);
  r.low_ = std::min(low_, r.prec_);
  r.c_.resize(r.prec_ - r.low_);
  return r;
}

Series Series::shifted(int k) const {
  Series r = *this;
  r.low_ += k;
  r.prec_ += k;
  return r;
}

Series Series::frobenius(int times) const {
  Series r = *this;
  for (FieldElem& x : r.c_) x = x.frobenius(times);
  return r;
}

Series Series::scaled(const FieldElem& s) const {
  Series r = *this;
  for (FieldElem& x : r.c_) {
    if (!x.is_zero()) x *= s;
  }
  return r;
}

Series Series::invert_unit() const {
  const int v = valuation();
  require(v == 0, ErrorCode::kNotAUnit, "series has valuation " + std::to_string(v) + ", not 0");
  Series r(zero_, 0, prec_);
  const FieldElem a0inv = coeff(0).inverse();
  r.c_[0] = a0inv;
  for (int k = 1; k < prec_; ++k) {
    FieldElem acc(zero_);
    for (int i = 1; i <= k; ++i) {
      const FieldElem& ai = c_[i - low_];
      if (!ai.is_zero()) acc += ai * r.c_[k - i];
    }
    r.c_[k] = -(acc * a0inv);
  }
  return r;
}

Series Series::inverse() const {
  const int v = valuation();
  require(v < prec_, ErrorCode::kNotAUnit, "series vanishes to its precision");
  return shifted(-v).invert_unit().shifted(-v);
}

Series Series::operator-() const {
  Series r = *this;
  for (FieldElem& x : r.c_) x = -x;
  return r;
}

namespace {

Series add_impl(const Series& a, const Series& b, bool subtract) {
  const int low = std::min(a.low(), b.low());
  const int prec = std::min(a.prec(), b.prec());
  if (prec <= low && (!a.empty() || !b.empty())) {
    fail(ErrorCode::kEmptyWindow, "sum of series with disjoint windows");
  }
  Series r(a.zero_level(), low, prec);
  for (int e = r.low(); e < prec; ++e) {
    FieldElem x = a.coeff(e);
    if (subtract) {
      x -= b.coeff(e);
    } else {
      x += b.coeff(e);
    }
    r.set_coeff(e, x);
  }
  return r;
}

}  // namespace

Series operator+(const Series& a, const Series& b) { return add_impl(a, b, false); }
Series operator-(const Series& a, const Series& b) { return add_impl(a, b, true); }

Series operator*(const Series& a, const Series& b) {
  const int va = a.valuation(), vb = b.valuation();
  const int prec = std::min(a.prec() + vb, b.prec() + va);
  const int low = va + vb;
  if (low >= prec) return Series(a.zero_level(), prec, prec);
  Series r(a.zero_level(), low, prec);
  std::vector<FieldElem> acc(prec - low, FieldElem(a.zero_level()));
  for (int i = va; i < prec - vb; ++i) {
    const FieldElem ai = a.coeff(i);
    if (ai.is_zero()) continue;
    for (int j = vb; i + j < prec; ++j) {
      const FieldElem bj = b.coeff(j);
      if (!bj.is_zero()) acc[i + j - low] += ai * bj;
    }
  }
  for (int e = low; e < prec; ++e) r.set_coeff(e, acc[e - low]);
  return r;
}

bool Series::agrees_with(const Series& o) const {
  const int lo = std::min(low_, o.low_);
  const int hi = std::min(prec_, o.prec_);
  for (int e = lo; e < hi; ++e) {
    if (coeff(e) != o.coeff(e)) return false;
  }
  return true;
}

std::string Series::to_string() const {
  std::string s;
  for (int e = low_; e < prec_; ++e) {
    const FieldElem& x = c_[e - low_];
    if (x.is_zero()) continue;
    if (!s.empty()) s += " + ";
    s += x.to_string() + "*t^" + std::to_string(e);
  }
  if (s.empty()) s = "0";
  return s + " + O(t^" + std::to_string(prec_) + ")";
}

int min_prec(const SeriesVec& v) {
  int p = INT_MAX;
  for (const Series& s : v) p = std::min(p, s.prec());
  return p;
}

int min_valuation(const SeriesVec& v) {
  int m = INT_MAX;
  for (const Series& s : v) m = std::min(m, s.valuation());
  return m;
}

SeriesVec frobenius(const SeriesVec& v, int times) {
  SeriesVec r;
  for (const Series& s : v) r.push_back(s.frobenius(times));
  return r;
}

SeriesVec scaled(const SeriesVec& v, const FieldElem& s) {
  SeriesVec r;
  for (const Series& x : v) r.push_back(x.scaled(s));
  return r;
}

SeriesVec shifted(const SeriesVec& v, int k) {
  SeriesVec r;
  for (const Series& x : v) r.push_back(x.shifted(k));
  return r;
}

SeriesVec truncated(const SeriesVec& v, int prec) {
  SeriesVec r;
  for (const Series& x : v) r.push_back(x.truncated(prec));
  return r;
}

SeriesVec add(const SeriesVec& a, const SeriesVec& b) {
  require(a.size() == b.size(), ErrorCode::kDimensionMismatch, "vector lengths differ");
  SeriesVec r;
  for (std::size_t i = 0; i < a.size(); ++i) r.push_back(a[i] + b[i]);
  return r;
}

SeriesVec sub(const SeriesVec& a, const SeriesVec& b) {
  require(a.size() == b.size(), ErrorCode::kDimensionMismatch, "vector lengths differ");
  SeriesVec r;
  for (std::size_t i = 0; i < a.size(); ++i) r.push_back(a[i] - b[i]);
  return r;
}

bool agrees(const SeriesVec& a, const SeriesVec& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i].agrees_with(b[i])) return false;
  }
  return true;
}

SeriesMat::SeriesMat(int rows, int cols, const Level* zero_level, int prec)
    : rows_(rows), cols_(cols), zero_(zero_level), e_(std::size_t(rows) * cols, Series(zero_level, 0, prec)) {}

SeriesMat SeriesMat::identity(int n, const Level* zero_level, int prec) {
  SeriesMat m(n, n, zero_level, prec);
  FieldElem one(zero_level);
  one.raw()[0] = 1;
  for (int i = 0; i < n; ++i) m.at(i, i) = Series::constant(one, prec);
  return m;
}

SeriesMat SeriesMat::diagonal_monomials(const std::vector<int>& exponents, const Level* zero_level, int prec) {
  const int n = static_cast<int>(exponents.size());
  SeriesMat m(n, n, zero_level, prec);
  FieldElem one(zero_level);
  one.raw()[0] = 1;
  for (int i = 0; i < n; ++i) m.at(i, i) = Series::monomial(one, exponents[i], prec);
  return m;
}

SeriesMat SeriesMat::transposed() const {
  SeriesMat r(cols_, rows_, zero_, 0);
  for (int i = 0; i < rows_; ++i) {
    for (int j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
  }
  return r;
}

SeriesMat SeriesMat::frobenius(int times) const {
  SeriesMat r = *this;
  for (Series& s : r.e_) s = s.frobenius(times);
  return r;
}

namespace {

Series det_rec(const std::vector<std::vector<Series>>& m) {
  const int n = static_cast<int>(m.size());
  if (n == 1) return m[0][0];
  if (n == 2) return m[0][0] * m[1][1] - m[0][1] * m[1][0];
  Series acc;
  bool first = true;
  for (int j = 0; j < n; ++j) {
    std::vector<std::vector<Series>> minor;
    for (int i = 1; i < n; ++i) {
      std::vector<Series> row;
      for (int c = 0; c < n; ++c) {
        if (c != j) row.push_back(m[i][c]);
      }
      minor.push_back(std::move(row));
    }
    Series term = m[0][j] * det_rec(minor);
    if (j % 2 == 1) term = -term;
    acc = first ? term : acc + term;
    first = false;
  }
  return acc;
}

std::vector<std::vector<Series>> to_rows(const SeriesMat& a) {
  std::vector<std::vector<Series>> m(a.rows());
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) m[i].push_back(a.at(i, j));
  }
  return m;
}

}  // namespace

Series SeriesMat::det() const {
  require(rows_ == cols_ && rows_ > 0, ErrorCode::kDimensionMismatch, "determinant of a non-square matrix");
  return det_rec(to_rows(*this));
}

SeriesMat SeriesMat::inverse() const {
  require(rows_ == cols_ && rows_ > 0, ErrorCode::kDimensionMismatch, "inverse of a non-square matrix");
  const int n = rows_;
  Series dinv = det().inverse();
  SeriesMat r(n, n, zero_, 0);
  if (n == 1) {
    r.at(0, 0) = dinv;
    return r;
  }
  std::vector<std::vector<Series>> m = to_rows(*this);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      std::vector<std::vector<Series>> minor;
      for (int a = 0; a < n; ++a) {
        if (a == i) continue;
        std::vector<Series> row;
        for (int b = 0; b < n; ++b) {
          if (b != j) row.push_back(m[a][b]);
        }
        minor.push_back(std::move(row));
      }
      Series c = det_rec(minor) * dinv;
      r.at(j, i) = (i + j) % 2 ? -c : c;
    }
  }
  return r;
}

int SeriesMat::min_valuation() const {
  int m = INT_MAX;
  for (const Series& s : e_) m = std::min(m, s.valuation());
  return m;
}

int SeriesMat::min_prec() const {
  int p = INT_MAX;
  for (const Series& s : e_) p = std::min(p, s.prec());
  return p;
}

SeriesVec SeriesMat::apply(const SeriesVec& v) const {
  require(static_cast<int>(v.size()) == cols_, ErrorCode::kDimensionMismatch, "matrix and vector sizes differ");
  SeriesVec r;
  for (int i = 0; i < rows_; ++i) {
    Series acc = at(i, 0) * v[0];
    for (int j = 1; j < cols_; ++j) acc = acc + at(i, j) * v[j];
    r.push_back(acc);
  }
  return r;
}

bool SeriesMat::agrees_with(const SeriesMat& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) return false;
  for (std::size_t i = 0; i < e_.size(); ++i) {
    if (!e_[i].agrees_with(o.e_[i])) return false;
  }
  return true;
}

SeriesMat operator*(const SeriesMat& a, const SeriesMat& b) {
  require(a.cols() == b.rows(), ErrorCode::kDimensionMismatch, "matrix sizes differ");
  SeriesMat r(a.rows(), b.cols(), a.zero_level(), 0);
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < b.cols(); ++j) {
      Series acc = a.at(i, 0) * b.at(0, j);
      for (int k = 1; k < a.cols(); ++k) acc = acc + a.at(i, k) * b.at(k, j);
      r.at(i, j) = acc;
    }
  }
  return r;
}

SeriesMat SmithForm::diagonal(int prec) const {
  return SeriesMat::diagonal_monomials(exponents, u1.zero_level(), prec);
}

SmithForm smith_decompose(const SeriesMat& g) {
  require(g.rows() == g.cols() && g.rows() > 0, ErrorCode::kDimensionMismatch, "Smith form of a non-square matrix");
  const int n = g.rows();
  const Level* zl = g.zero_level();
  SeriesMat a = g;
  SeriesMat left = SeriesMat::identity(n, zl, g.min_prec() - std::min(0, g.min_valuation()));
  SeriesMat right = left;
  std::vector<int> exps;
  for (int k = 0; k < n; ++k) {
    int bi = -1, bj = -1, bv = INT_MAX;
    for (int i = k; i < n; ++i) {
      for (int j = k; j < n; ++j) {
        const Series& s = a.at(i, j);
        int v = s.valuation();
        if (v < s.prec() && v < bv) {
          bv = v;
          bi = i;
          bj = j;
        }
      }
    }
    require(bi >= 0, ErrorCode::kPrecisionExhausted, "determinant valuation is not visible within precision");
    for (int c = 0; c < n; ++c) std::swap(a.at(bi, c), a.at(k, c));
    for (int r = 0; r < n; ++r) std::swap(left.at(r, bi), left.at(r, k));
    for (int r = 0; r < n; ++r) std::swap(a.at(r, bj), a.at(r, k));
    for (int c = 0; c < n; ++c) std::swap(right.at(bj, c), right.at(k, c));
    Series u = a.at(k, k).shifted(-bv);
    Series uinv = u.invert_unit();
    for (int c = 0; c < n; ++c) a.at(k, c) = uinv * a.at(k, c);
    for (int r = 0; r < n; ++r) left.at(r, k) = left.at(r, k) * u;
    FieldElem one(zl);
    one.raw()[0] = 1;
    a.at(k, k) = Series::monomial(one, bv, a.at(k, k).prec());
    for (int i = k + 1; i < n; ++i) {
      Series f = a.at(i, k).shifted(-bv);
      for (int c = k; c < n; ++c) a.at(i, c) = a.at(i, c) - f * a.at(k, c);
      for (int r = 0; r < n; ++r) left.at(r, k) = left.at(r, k) + f * left.at(r, i);
    }
    for (int j = k + 1; j < n; ++j) {
      Series f = a.at(k, j).shifted(-bv);
      for (int r = k; r < n; ++r) a.at(r, j) = a.at(r, j) - f * a.at(r, k);
      for (int c = 0; c < n; ++c) right.at(k, c) = right.at(k, c) + f * right.at(j, c);
    }
    exps.push_back(bv);
  }
  return SmithForm{left, exps, right};
}

}  // namespace unisheaf
