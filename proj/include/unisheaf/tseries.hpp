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

// Truncated Laurent series in one variable t over a tower field, with
// vectors and matrices of them.
//
// A series is known on the window [low, prec): its coefficients below low are
// zero and nothing is known from prec on. Results carry the largest window
// the inputs determine.

#ifndef UNISHEAF_TSERIES_HPP_
#define UNISHEAF_TSERIES_HPP_

#include <string>
#include <vector>

#include "unisheaf/ffield.hpp"

namespace unisheaf {

class Series {
 public:
  Series() = default;
  // Zero, known on [low, prec).
  Series(const Level* zero_level, int low, int prec);
  // Coefficients of t^low, t^(low+1), ...; missing ones up to prec are zero.
  Series(std::vector<FieldElem> coeffs, int low, int prec);

  static Series constant(const FieldElem& c, int prec);
  static Series monomial(const FieldElem& c, int exponent, int prec);

  const Level* zero_level() const { return zero_; }
  int low() const { return low_; }
  int prec() const { return prec_; }
  bool empty() const { return prec_ <= low_; }
  const std::vector<FieldElem>& coeffs() const { return c_; }

  FieldElem coeff(int e) const;
  void set_coeff(int e, const FieldElem& v);
  // Exponent of the first nonzero known coefficient, or prec when none.
  int valuation() const;
  bool is_zero() const { return valuation() >= prec_; }
  const Level* level() const;

  Series truncated(int prec) const;
  Series shifted(int k) const;
  Series frobenius(int times = 1) const;
  Series scaled(const FieldElem& s) const;
  Series invert_unit() const;
  Series inverse() const;

  Series operator-() const;
  friend Series operator+(const Series& a, const Series& b);
  friend Series operator-(const Series& a, const Series& b);
  friend Series operator*(const Series& a, const Series& b);

  // True when both agree on the common window.
  bool agrees_with(const Series& o) const;
  std::string to_string() const;

 private:
  const Level* zero_ = nullptr;
  int low_ = 0;
  int prec_ = 0;
  std::vector<FieldElem> c_;
};

using SeriesVec = std::vector<Series>;

int min_prec(const SeriesVec& v);
int min_valuation(const SeriesVec& v);
SeriesVec frobenius(const SeriesVec& v, int times = 1);
SeriesVec scaled(const SeriesVec& v, const FieldElem& s);
SeriesVec shifted(const SeriesVec& v, int k);
SeriesVec truncated(const SeriesVec& v, int prec);
SeriesVec add(const SeriesVec& a, const SeriesVec& b);
SeriesVec sub(const SeriesVec& a, const SeriesVec& b);
bool agrees(const SeriesVec& a, const SeriesVec& b);

class SeriesMat {
 public:
  SeriesMat() = default;
  SeriesMat(int rows, int cols, const Level* zero_level, int prec);

  static SeriesMat identity(int n, const Level* zero_level, int prec);
  static SeriesMat diagonal_monomials(const std::vector<int>& exponents, const Level* zero_level, int prec);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Series& at(int i, int j) { return e_[std::size_t(i) * cols_ + j]; }
  const Series& at(int i, int j) const { return e_[std::size_t(i) * cols_ + j]; }
  const Level* zero_level() const { return zero_; }

  SeriesMat transposed() const;
  SeriesMat frobenius(int times = 1) const;
  Series det() const;
  SeriesMat inverse() const;
  int min_valuation() const;
  int min_prec() const;
  SeriesVec apply(const SeriesVec& v) const;
  bool agrees_with(const SeriesMat& o) const;

  friend SeriesMat operator*(const SeriesMat& a, const SeriesMat& b);

 private:
  int rows_ = 0;
  int cols_ = 0;
  const Level* zero_ = nullptr;
  std::vector<Series> e_;
};

// g = u1 * diag(t^a_1, ..., t^a_n) * u2 with u1, u2 invertible over the
// power series ring and a_1 <= ... <= a_n.
struct SmithForm {
  SeriesMat u1;
  std::vector<int> exponents;
  SeriesMat u2;

  SeriesMat diagonal(int prec) const;
};

SmithForm smith_decompose(const SeriesMat& g);

}  // namespace unisheaf

#endif  // UNISHEAF_TSERIES_HPP_
