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

#include "unisheaf/lattice.hpp"

#include <algorithm>
#include <functional>
#include <utility>

#include "unisheaf/fp_linalg.hpp"

namespace unisheaf {

namespace {

const Level* top_level(const std::vector<KVec>& vs, const Level* start) {
  const Level* l = start;
  for (const KVec& v : vs) {
    for (const FieldElem& x : v) l = join_levels(l, x.level());
  }
  return l;
}

Series laurent_product(const std::vector<FieldElem>& a, const std::vector<FieldElem>& b, int low, const Level* zl) {
  const int len = static_cast<int>(a.size() + b.size()) - 1;
  Series r(zl, 2 * low, 2 * low + len);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      const int e = 2 * low + static_cast<int>(i + j);
      r.set_coeff(e, r.coeff(e) + a[i] * b[j]);
    }
  }
  return r;
}

}  // namespace

Lattice lattice_from_uniformizer(const Uniformizer& u, int N, int M) {
  require(N >= 0 && M >= 1, ErrorCode::kInvalidArgument, "window needs N >= 0 and M >= 1");
  require(u.prec >= M + N, ErrorCode::kPrecisionExhausted,
          "precision " + std::to_string(u.prec) + " below M + N = " + std::to_string(M + N));
  std::vector<SeriesVec> family = basis_family(u, N);
  for (SeriesVec& v : family) v = truncated(v, M);
  return Lattice::from_series(u.n, -N, M, family, u.zero_level(), "uniformizer");
}

SeriesVec nonnegative_generator(const Lattice& l) {
  const Lattice r = l.restricted(0);
  require(r.dim() == 1, ErrorCode::kRankNotOne,
          "nonnegative part has dimension " + std::to_string(r.dim()));
  return r.row_series(0);
}

Lattice trivial_lattice(int n, int lo, int hi, const Level* zero_level) {
  Lattice shape(n, lo, hi, zero_level);
  std::vector<KVec> rows;
  FieldElem one = zero_level->tower->one();
  for (int e = lo; e <= std::min(0, hi - 1); ++e) {
    for (int xi = 0; xi < n; ++xi) {
      KVec v(shape.cols(), FieldElem(zero_level));
      v[shape.column(e, xi)] = one;
      rows.push_back(std::move(v));
    }
  }
  return Lattice::from_rows(n, lo, hi, std::move(rows), zero_level, "trivial");
}

Lattice dense_from_module(const DModule& m, const TateSystem& t, int prec) {
  require(m.n() == t.n() && m.k() == t.module.k(), ErrorCode::kDimensionMismatch, "module differs from the chains");
  const Uniformizer u = uniformizer_from_tate(t, prec);
  const int width = static_cast<int>(u.s().size());
  std::vector<SeriesVec> gens;
  SeriesVec cur = u.s();
  for (int i = 0; i < width * prec + width; ++i) {
    gens.push_back(cur);
    cur = frobenius(cur);
  }
  return Lattice::from_series(width, 0, prec, gens, u.zero_level(), "dense");
}

std::vector<int> slice_dimensions(const Lattice& d, int h) {
  require(h >= 0, ErrorCode::kInvalidArgument, "slice height must be nonnegative");
  std::vector<int> out;
  for (int m = d.lo(); m + h <= d.hi(); ++m) out.push_back(d.restricted(m).dim() - d.restricted(m + h).dim());
  return out;
}

EllipticReport elliptic_check(const Lattice& l, int k, int guard) {
  require(k >= 1, ErrorCode::kInvalidArgument, "k must be positive");
  const int n = l.n();
  if (guard < 0) guard = n + 1;
  EllipticReport rep;
  rep.k = k;
  rep.guard = guard;
  rep.flag_lo = l.lo() + std::max(guard, k);
  rep.flag_hi = l.hi();
  const int lambda = (k + n - 1) / n;
  const int jlo = l.lo() + (lambda * n - k > 0 ? guard : 0) - lambda * k;
  require(rep.flag_lo < rep.flag_hi - 1 && jlo < 0 && l.hi() - lambda * k >= 1, ErrorCode::kGuardBandTooNarrow,
          "window [" + std::to_string(l.lo()) + ", " + std::to_string(l.hi()) + ") is too narrow for guard " +
              std::to_string(guard) + " and k = " + std::to_string(k));

  rep.u_stable = l.truncated(l.hi() - 1).contains(l.restricted(l.lo() + 1).shifted(-1));

  const Lattice target = l.shifted(k).windowed(rep.flag_lo, rep.flag_hi);
  rep.flag_contained = true;
  rep.flag_coranks = true;
  for (int i = 1; i <= n; ++i) {
    const Lattice twist = l.frobenius(i).windowed(rep.flag_lo, rep.flag_hi);
    rep.flag_contained = rep.flag_contained && target.contains(twist);
    const Lattice sum = filtration_member(l, i, k, guard).windowed(rep.flag_lo, rep.flag_hi);
    rep.coranks.push_back(target.dim() - sum.dim());
    rep.expected_coranks.push_back(k * (n - i));
    rep.flag_coranks = rep.flag_coranks && target.contains(sum) && rep.coranks.back() == rep.expected_coranks.back();
    if (i == n) rep.flag_spans = sum == target;
  }

  const Lattice lm = filtration_member(l, -k, k, guard);
  rep.h0 = lm.restricted(0).dim();
  rep.h1 = n * (0 - lm.lo()) - lm.truncated(0).dim();
  rep.vanishing = rep.h0 == 0 && rep.h1 == 0;
  return rep;
}

StabilizerReport stabilizer_ring(const Lattice& l, int a, int b) {
  require(a >= 0 && b >= 0, ErrorCode::kInvalidArgument, "exponent range must contain 0");
  require(l.lo() + a + 1 <= 0 && l.hi() - a >= 2, ErrorCode::kGuardBandTooNarrow,
          "window [" + std::to_string(l.lo()) + ", " + std::to_string(l.hi()) + ") is too narrow for u-degree " +
              std::to_string(a));
  const Level* zl = l.zero_level();
  const Tower& tw = *zl->tower;
  const Level* fq = tw.base_level();
  const int eq = fq->dim;
  const int span = a + b + 1;
  const int unknowns = span * eq;

  const Lattice src = l.restricted(l.lo() + a);
  require(src.dim() > 0, ErrorCode::kGuardBandTooNarrow, "no lattice vectors deep enough for the u-degree");
  const Lattice dst = l.truncated(l.hi() - a);
  std::vector<std::vector<KVec>> images(unknowns);
  for (int e = -a; e <= b; ++e) {
    for (int j = 0; j < eq; ++j) {
      FieldElem beta(fq);
      beta.raw()[j] = 1;
      std::vector<KVec>& out = images[(e + a) * eq + j];
      for (int r = 0; r < src.dim(); ++r) {
        SeriesVec v = scaled(shifted(src.row_series(r), e), beta);
        out.push_back(dst.echelon().reduce(dst.to_window(v)));
      }
    }
  }
  const Level* top = fq;
  for (const auto& im : images) top = top_level(im, top);
  FpVec probe = flatten(images[0].empty() ? KVec{} : images[0][0], top);
  const int rows = src.dim() * static_cast<int>(probe.size());
  FpMatrix mat(rows, unknowns, tw.p());
  for (int c = 0; c < unknowns; ++c) {
    FpVec col;
    for (const KVec& v : images[c]) {
      FpVec f = flatten(v, top);
      col.insert(col.end(), f.begin(), f.end());
    }
    mat.set_column(c, col);
  }
  const FpEchelon solutions = fp_rref(fp_nullspace(mat), unknowns, tw.p());

  StabilizerReport rep;
  rep.a = a;
  rep.b = b;
  for (const FpVec& v : fq_basis_greedy(solutions, fq, span, PickPolicy::kLexLeast)) {
    rep.basis.push_back(unflatten(v, fq, span));
  }
  auto monomial = [&](int e) {
    std::vector<FieldElem> c(span, FieldElem(fq));
    c[e + a] = tw.one().demote(fq);
    return flatten(c, fq);
  };
  rep.contains_one = solutions.contains(monomial(0));
  rep.contains_u = a >= 1 && solutions.contains(monomial(-1));
  rep.polynomial_in_u = solutions.rank() == (a + 1) * eq;
  for (int i = 0; i <= a; ++i) rep.polynomial_in_u = rep.polynomial_in_u && solutions.contains(monomial(-i));

  rep.closed = true;
  for (const auto& p1 : rep.basis) {
    for (const auto& p2 : rep.basis) {
      const Series prod = laurent_product(p1, p2, -a, fq);
      bool inside = true;
      std::vector<FieldElem> c(span, FieldElem(fq));
      for (int e = prod.low(); e < prod.prec(); ++e) {
        const FieldElem x = prod.coeff(e);
        if (x.is_zero()) continue;
        if (e < -a || e > b) {
          inside = false;
          break;
        }
        c[e + a] = x.demote(fq);
      }
      if (inside) rep.closed = rep.closed && solutions.contains(flatten(c, fq));
    }
  }
  return rep;
}

ScatteringReport scattering_det(const Uniformizer& u) {
  require(u.k == 1 && u.f == 1, ErrorCode::kInvalidArgument, "scattering determinant needs k = 1 and rational x");
  const int n = u.n;
  const Level* zl = u.zero_level();
  ScatteringReport rep;
  rep.n = n;

  std::vector<SeriesVec> twists = {u.s()};
  const int P = u.prec;
  const int I = n - 1 + P;
  for (int i = 1; i <= I; ++i) twists.push_back(frobenius(twists.back()));
  auto wedge = [&](const std::vector<int>& idx) {
    SeriesMat m(n, n, zl, P);
    for (int j = 0; j < n; ++j) {
      for (int i = 0; i < n; ++i) m.at(i, j) = twists[idx[j]][i];
    }
    return m.det();
  };
  std::vector<int> first(n);
  for (int j = 0; j < n; ++j) first[j] = j;
  rep.d = wedge(first);
  require(!rep.d.is_zero(), ErrorCode::kDegenerateDeterminant, "det(s, .., (sigma^*)^(n-1) s) vanishes in the window");

  const FieldElem theta = u.module.theta();
  const FieldElem xi = u.x.xi();
  Series lin(zl, 0, rep.d.prec());
  lin.set_coeff(0, -(theta - xi));
  if (rep.d.prec() > 1) lin.set_coeff(1, zl->tower->one());
  rep.derived = lin * rep.d * rep.d.frobenius().inverse();
  rep.derived_constant = rep.derived.valuation() >= 0;
  for (int e = std::max(1, rep.derived.low()); e < rep.derived.prec(); ++e) {
    rep.derived_constant = rep.derived_constant && rep.derived.coeff(e).is_zero();
  }
  rep.derived_g = rep.derived.coeff(0);
  const FieldElem gn = u.module.phi_t().at(0, 0).coeff(n);
  rep.expected_g = n % 2 ? gn : -gn;

  if (rep.derived_constant && !rep.derived_g.is_zero()) {
    const Uniformizer r = rank_one_uniformizer(u.module.tower_ptr(), theta, rep.derived_g, xi, rep.d.prec());
    rep.rebuilt = r.s()[0];
    rep.ratio = unit_ratio({rep.d}, {rep.rebuilt}, 0);
  }

  std::vector<SeriesVec> wedges;
  std::vector<int> idx(n);
  std::function<void(int, int)> choose = [&](int pos, int from) {
    if (pos == n) {
      wedges.push_back({wedge(idx).truncated(P)});
      return;
    }
    for (int i = from; i <= I; ++i) {
      idx[pos] = i;
      choose(pos + 1, i + 1);
    }
  };
  choose(0, 0);
  std::vector<SeriesVec> translates;
  Series db = rep.d;
  for (int bpow = 0; bpow <= P; ++bpow) {
    for (int apow = 0; apow < P; ++apow) translates.push_back({db.shifted(apow).truncated(P)});
    db = db.frobenius();
  }
  const Lattice w1 = Lattice::from_series(1, 0, P, wedges, zl, "wedge");
  const Lattice w2 = Lattice::from_series(1, 0, P, translates, zl, "translates");
  rep.wedge_dim = w1.dim();
  rep.translate_dim = w2.dim();
  rep.spans_agree = w1 == w2;
  return rep;
}

}  // namespace unisheaf
