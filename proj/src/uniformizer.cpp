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

#include "unisheaf/uniformizer.hpp"

#include <algorithm>
#include <climits>
#include <utility>

#include "unisheaf/kmatrix.hpp"

namespace unisheaf {

namespace {

int choose_pivot(const SeriesVec& s) {
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i].prec() > 0 && !s[i].coeff(0).is_zero()) return static_cast<int>(i);
  }
  return -1;
}

void require_line_case(const Uniformizer& u) {
  require(u.k == 1, ErrorCode::kInvalidArgument, "the GL_n action needs k = 1");
  require(u.f == 1, ErrorCode::kInvalidArgument, "the GL_n action needs a rational place");
}

// Entries below t^0 must vanish; returns the series on [0, prec).
Series nonnegative_part(const Series& s) {
  const Level* zl = s.zero_level();
  for (int e = s.low(); e < std::min(0, s.prec()); ++e) {
    require(s.coeff(e).is_zero(), ErrorCode::kRankNotOne, "result has a pole at t^" + std::to_string(e));
  }
  Series r(zl, 0, std::max(0, s.prec()));
  for (int e = 0; e < s.prec(); ++e) r.set_coeff(e, s.coeff(e));
  return r;
}

SeriesVec nonnegative_part(const SeriesVec& v) {
  SeriesVec r;
  for (const Series& s : v) r.push_back(nonnegative_part(s));
  return r;
}

SeriesVec combine(const std::vector<SeriesVec>& rows, const std::vector<FieldElem>& c) {
  SeriesVec acc = scaled(rows[0], c[0]);
  for (std::size_t r = 1; r < rows.size(); ++r) {
    if (!c[r].is_zero()) acc = add(acc, scaled(rows[r], c[r]));
  }
  return acc;
}

int last_nonzero(const std::vector<FieldElem>& c) {
  for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i) {
    if (!c[i].is_zero()) return i;
  }
  return -1;
}

// Coefficients c, unique up to scalar, with beta (sum c_r rows[r]) free of
// negative powers of t.
std::vector<FieldElem> integral_line(const std::vector<SeriesVec>& rows, const SeriesMat& beta, const Level* zl) {
  require(!rows.empty(), ErrorCode::kRankNotOne, "the window of L_{-l} is zero");
  std::vector<SeriesVec> img;
  int lowest = 0;
  for (const SeriesVec& r : rows) {
    img.push_back(beta.apply(r));
    for (const Series& s : img.back()) {
      lowest = std::min(lowest, s.low());
      require(s.prec() >= 0, ErrorCode::kPrecisionExhausted, "polar part of beta w is not determined by the window");
    }
  }
  const int R = static_cast<int>(rows.size());
  std::vector<KVec> eqs;
  for (std::size_t j = 0; j < img[0].size(); ++j) {
    for (int e = lowest; e < 0; ++e) {
      KVec eq(R, FieldElem(zl));
      bool any = false;
      for (int r = 0; r < R; ++r) {
        eq[r] = img[r][j].coeff(e);
        any = any || !eq[r].is_zero();
      }
      if (any) eqs.push_back(std::move(eq));
    }
  }
  std::vector<KVec> null = k_nullspace(eqs, R, zl);
  require(null.size() == 1, ErrorCode::kRankNotOne,
          "integral part of beta L_{-l} has dimension " + std::to_string(null.size()) + " in the window");
  return null[0];
}

std::vector<SeriesVec> sigma_rows(const Uniformizer& u, int m, int top) {
  std::vector<SeriesVec> rows;
  SeriesVec cur = u.s();
  for (int i = 0; i <= top; ++i) {
    rows.push_back(shifted(cur, -m));
    cur = frobenius(cur);
  }
  return rows;
}

FieldElem k_det(std::vector<KVec> a, const Level* zl) {
  const int n = static_cast<int>(a.size());
  FieldElem det = zl->tower->one();
  for (int c = 0; c < n; ++c) {
    int sel = -1;
    for (int r = c; r < n; ++r) {
      if (!a[r][c].is_zero()) {
        sel = r;
        break;
      }
    }
    if (sel < 0) return FieldElem(zl);
    if (sel != c) {
      std::swap(a[sel], a[c]);
      det = -det;
    }
    det *= a[c][c];
    const FieldElem inv = a[c][c].inverse();
    for (int r = c + 1; r < n; ++r) {
      if (a[r][c].is_zero()) continue;
      const FieldElem f = a[r][c] * inv;
      for (int k = c; k < n; ++k) a[r][k] -= f * a[c][k];
    }
  }
  return det;
}

Uniformizer with_series(const Uniformizer& u, SeriesVec s, std::string provenance) {
  Uniformizer r = u;
  r.prec = min_prec(s);
  r.series = {std::move(s)};
  r.pivot = choose_pivot(r.series[0]);
  r.provenance = std::move(provenance);
  return r;
}

bool agree_on_common_window(const SeriesVec& a, const SeriesVec& b, int from) {
  if (a.size() != b.size()) return false;
  for (std::size_t j = 0; j < a.size(); ++j) {
    const int hi = std::min(a[j].prec(), b[j].prec());
    if (hi <= from) return false;
    const int lo = std::min(a[j].low(), b[j].low());
    for (int e = lo; e < hi; ++e) {
      if (a[j].coeff(e) != b[j].coeff(e)) return false;
    }
  }
  return true;
}

}  // namespace

Uniformizer uniformizer_from_tate(const TateSystem& t, int prec) {
  if (prec < 0) prec = t.requested_depth + 1;
  require(prec >= 1, ErrorCode::kInvalidArgument, "precision must be positive");
  require(t.depth >= prec - 1, ErrorCode::kDepthTooShallow,
          "chains reach depth " + std::to_string(t.depth) + ", precision " + std::to_string(prec) + " needs " +
              std::to_string(prec - 1));
  Uniformizer u;
  u.module = t.module;
  u.x = t.x;
  u.n = t.n();
  u.k = t.module.k();
  u.f = t.f();
  u.prec = prec;
  u.residue = t.residue;
  u.provenance = "tate";
  const Level* zl = t.module.tower().prime_level();
  for (int i = 0; i < u.k; ++i) {
    SeriesVec s;
    for (int xi = 0; xi < u.n; ++xi) {
      for (int c = 0; c < u.f; ++c) {
        Series comp(zl, 0, prec);
        for (int h = 0; h < prec; ++h) comp.set_coeff(h, t.points[xi][c][h][i]);
        s.push_back(std::move(comp));
      }
    }
    u.series.push_back(std::move(s));
  }
  u.pivot = choose_pivot(u.series[0]);
  return u;
}

Uniformizer carlitz_uniformizer(std::shared_ptr<Tower> tower, const FieldElem& theta, int prec) {
  return carlitz_uniformizer(tower, theta, tower->zero(), prec);
}

Uniformizer carlitz_uniformizer(std::shared_ptr<Tower> tower, const FieldElem& theta, const FieldElem& xi,
                                int prec) {
  require(prec >= 1, ErrorCode::kInvalidArgument, "precision must be positive");
  const FieldElem d = theta - xi;
  require(!d.is_zero(), ErrorCode::kZeroTheta, "theta meets the place x");
  const FieldElem dinv = d.inverse();
  Uniformizer u;
  u.module = DModule::drinfeld(tower, theta, {-d});
  u.x = XPoint::rational(xi);
  u.prec = prec;
  u.provenance = "carlitz";
  Series s(tower->prime_level(), 0, prec);
  FieldElem a = tower->one();
  s.set_coeff(0, a);
  for (int h = 1; h < prec; ++h) {
    a = artin_schreier_solve(-(dinv * a));
    s.set_coeff(h, a);
  }
  u.series = {{std::move(s)}};
  u.pivot = 0;
  return u;
}

Uniformizer rank_one_uniformizer(std::shared_ptr<Tower> tower, const FieldElem& theta, const FieldElem& c,
                                 const FieldElem& xi, int prec, PickPolicy policy) {
  require(prec >= 1, ErrorCode::kInvalidArgument, "precision must be positive");
  require(!c.is_zero(), ErrorCode::kInvalidArgument, "leading coefficient must be nonzero");
  const FieldElem d = theta - xi;
  require(!d.is_zero(), ErrorCode::kCharacteristicCollision, "theta meets the place x");
  Uniformizer u;
  u.module = DModule::drinfeld(tower, theta, {c});
  u.x = XPoint::rational(xi);
  u.prec = prec;
  u.provenance = "rank_one";
  const OreMat P(OrePoly({d, c}, tower->prime_level()));

  std::vector<FieldElem> kernel;
  auto probe = [&](const Level* L) {
    kernel = additive_kernel({d, c}, L);
    return !kernel.empty();
  };
  tower->first_level_where(tower->base_level(), probe);
  std::optional<FieldElem> a0;
  for (const FieldElem& lam : tower->fq_elements()) {
    if (lam.is_zero()) continue;
    FieldElem cand = lam * kernel[0];
    if (!a0 || (policy == PickPolicy::kLexLeast ? cand.lex_less(*a0) : a0->lex_less(cand))) a0 = cand;
  }

  Series s(tower->prime_level(), 0, prec);
  FieldElem a = *a0;
  s.set_coeff(0, a);
  for (int h = 1; h < prec; ++h) {
    a = ore_solve(P, {a}, tower->base_level(), policy)[0];
    s.set_coeff(h, a);
  }
  u.series = {{std::move(s)}};
  u.pivot = 0;
  return u;
}

std::vector<int> master_invariant_failures(const Uniformizer& u, int limit) {
  if (limit < 0) limit = u.prec - 1;
  require(limit < u.prec, ErrorCode::kPrecisionExhausted, "invariant limit beyond precision");
  const OreMat P = phi_of(u.module, u.x.pi);
  const Level* zl = u.zero_level();
  std::vector<int> bad;
  for (int j = 0; j < u.n * u.f; ++j) {
    Point prev(u.k, FieldElem(zl));
    for (int h = 0; h <= limit; ++h) {
      Point cur;
      for (int i = 0; i < u.k; ++i) cur.push_back(u.series[i][j].coeff(h));
      Point img = P(cur);
      bool ok = true;
      for (int i = 0; i < u.k; ++i) ok = ok && img[i] == prev[i];
      if (!ok && std::find(bad.begin(), bad.end(), h) == bad.end()) bad.push_back(h);
      prev = std::move(cur);
    }
  }
  std::sort(bad.begin(), bad.end());
  return bad;
}

bool master_invariant_holds(const Uniformizer& u, int limit) { return master_invariant_failures(u, limit).empty(); }

Series frobenius_ratio(const Series& s) { return s.frobenius() * s.inverse(); }

LineComparison compare_lines(const SeriesVec& a, const SeriesVec& b) {
  require(a.size() == b.size(), ErrorCode::kDimensionMismatch, "vector lengths differ");
  LineComparison out;
  out.checked_to = INT_MAX;
  int best_e = INT_MAX, best_j = -1;
  for (std::size_t j = 0; j < a.size(); ++j) {
    out.checked_to = std::min({out.checked_to, a[j].prec(), b[j].prec()});
    const int v = b[j].valuation();
    if (v < b[j].prec() && v < best_e) {
      best_e = v;
      best_j = static_cast<int>(j);
    }
  }
  out.scalar = FieldElem(a.empty() ? nullptr : a[0].zero_level());
  if (best_j < 0 || best_e >= out.checked_to) return out;
  out.scalar = a[best_j].coeff(best_e) / b[best_j].coeff(best_e);
  for (std::size_t j = 0; j < a.size(); ++j) {
    const int lo = std::min(a[j].low(), b[j].low());
    for (int e = lo; e < out.checked_to; ++e) {
      if (a[j].coeff(e) != out.scalar * b[j].coeff(e)) return out;
    }
  }
  out.proportional = !out.scalar.is_zero();
  return out;
}

UnitRatio unit_ratio(const SeriesVec& a, const SeriesVec& b, int entry) {
  require(a.size() == b.size(), ErrorCode::kDimensionMismatch, "vector lengths differ");
  UnitRatio out;
  out.ratio = a[entry] * b[entry].inverse();
  out.consistent = true;
  for (std::size_t j = 0; j < a.size(); ++j) {
    out.consistent = out.consistent && agree_on_common_window({a[j]}, {out.ratio * b[j]}, 0);
  }
  const Series& r = out.ratio;
  out.constant = r.valuation() >= 0;
  out.over_fq = true;
  for (int e = r.low(); e < r.prec(); ++e) {
    const FieldElem x = r.coeff(e);
    if (e != 0 && !x.is_zero()) out.constant = false;
    if (x.frobenius() != x) out.over_fq = false;
  }
  return out;
}

std::vector<FieldElem> sigma_coordinates(const Uniformizer& u, const SeriesVec& w, int m, int top) {
  require(top >= 0, ErrorCode::kRankNotOne, "no sigma^* powers available");
  require(static_cast<int>(w.size()) == u.n, ErrorCode::kDimensionMismatch, "vector length differs from n");
  const Level* zl = u.zero_level();
  const std::vector<SeriesVec> rows = sigma_rows(u, m, top);
  const int hi = std::min(min_prec(w), min_prec(rows.back()));
  for (const Series& s : w) {
    require(s.is_zero() || s.valuation() >= -m, ErrorCode::kRankNotOne, "vector has a pole beyond t^-m");
  }
  const int U = top + 1;
  std::vector<KVec> eqs;
  for (int j = 0; j < u.n; ++j) {
    for (int e = -m; e < hi; ++e) {
      KVec eq(U + 1, FieldElem(zl));
      for (int i = 0; i < U; ++i) eq[i] = rows[i][j].coeff(e);
      eq[U] = w[j].coeff(e);
      eqs.push_back(std::move(eq));
    }
  }
  KEchelon ech = k_rref(std::move(eqs), U + 1, zl);
  require(ech.rank() == U && ech.pivots.back() == U - 1, ErrorCode::kRankNotOne,
          "vector is not a unique combination of the sigma^* powers in the window");
  std::vector<FieldElem> c(U, FieldElem(zl));
  for (int r = 0; r < ech.rank(); ++r) c[ech.pivots[r]] = ech.rows[r][U];
  return c;
}

ActionShape action_shape(const SeriesMat& beta, int n) {
  require(beta.rows() == n && beta.cols() == n, ErrorCode::kDimensionMismatch, "matrix size differs from n");
  ActionShape sh;
  const Series d = beta.det();
  require(!d.is_zero(), ErrorCode::kNotAUnit, "determinant vanishes to its precision");
  sh.l = d.valuation();
  sh.m = std::max(0, -beta.inverse().min_valuation());
  sh.top = -sh.l + sh.m * n;
  return sh;
}

SeriesMat beta_ir(int n, int i, int r, const Level* zero_level, int prec) {
  std::vector<int> e(n, 0);
  e[i] = r;
  return SeriesMat::diagonal_monomials(e, zero_level, prec);
}

Uniformizer gl_action_direct(const Uniformizer& u, const SeriesMat& beta) {
  require_line_case(u);
  const ActionShape sh = action_shape(beta, u.n);
  require(sh.top >= 0, ErrorCode::kRankNotOne, "L_{-l} has no vectors with poles of order <= m");
  const std::vector<SeriesVec> rows = sigma_rows(u, sh.m, sh.top);
  std::vector<FieldElem> c = integral_line(rows, beta, u.zero_level());
  const FieldElem inv = c[last_nonzero(c)].inverse();
  for (FieldElem& x : c) x *= inv;
  const SeriesVec w = combine(rows, c);
  return with_series(u, nonnegative_part(beta.apply(w)), "gl_action_direct");
}

Uniformizer gl_action(const Uniformizer& u, const SeriesMat& beta, const Lattice& l0, int guard) {
  require_line_case(u);
  require(l0.n() == u.n, ErrorCode::kDimensionMismatch, "lattice rank differs from n");
  if (guard < 0) guard = u.n + 1;
  const ActionShape sh = action_shape(beta, u.n);
  Lattice lj = filtration_member(l0, -sh.l, 1, guard);
  require(lj.lo() <= -sh.m, ErrorCode::kWindowTooSmall,
          "window of L_{-l} starts at t^" + std::to_string(lj.lo()) + ", needs t^" + std::to_string(-sh.m));
  lj = lj.restricted(-sh.m);
  std::vector<SeriesVec> rows;
  for (int r = 0; r < lj.dim(); ++r) rows.push_back(lj.row_series(r));
  const std::vector<FieldElem> c = integral_line(rows, beta, u.zero_level());
  SeriesVec w = combine(rows, c);
  const std::vector<FieldElem> coords = sigma_coordinates(u, w, sh.m, sh.top);
  w = scaled(w, coords[last_nonzero(coords)].inverse());
  return with_series(u, nonnegative_part(beta.apply(w)), "gl_action");
}

MooreResult moore_formula(const Uniformizer& u, int xi, int r, const TateSystem& t) {
  require_line_case(u);
  require(r < 0, ErrorCode::kInvalidArgument, "the determinant formula needs r < 0");
  require(xi >= 0 && xi < u.n, ErrorCode::kInvalidArgument, "coordinate index out of range");
  const int R = -r;
  require(t.depth >= R - 1, ErrorCode::kDepthTooShallow,
          "chains reach depth " + std::to_string(t.depth) + ", need " + std::to_string(R - 1));
  require(R < u.prec, ErrorCode::kPrecisionExhausted, "uniformizer precision below -r");
  const Level* zl = u.zero_level();
  std::vector<FieldElem> alpha;
  for (int h = 0; h < R; ++h) {
    alpha.push_back(t.alpha(xi, h)[0]);
    require(alpha.back() == u.s()[xi].coeff(h), ErrorCode::kInvalidArgument,
            "uniformizer is not assembled from these chains");
  }
  // Rows i = 0..R hold alpha_j^(q^i); cofactors along the series column.
  std::vector<KVec> a(R + 1);
  for (int i = 0; i <= R; ++i) {
    for (int j = 0; j < R; ++j) a[i].push_back(alpha[j].frobenius(i));
  }
  MooreResult out;
  for (int i = 0; i <= R; ++i) {
    std::vector<KVec> minor;
    for (int k = 0; k <= R; ++k) {
      if (k != i) minor.push_back(a[k]);
    }
    FieldElem m = R == 0 ? zl->tower->one() : k_det(std::move(minor), zl);
    out.cofactors.push_back((i + R) % 2 ? -m : m);
  }
  const int top = last_nonzero(out.cofactors);
  require(top >= 0, ErrorCode::kDegenerateDeterminant, "all cofactors vanish");
  SeriesVec det = combine(sigma_rows(u, 0, R), out.cofactors);
  det[xi] = det[xi].shifted(r);
  out.raw = nonnegative_part(det);
  out.normalized = scaled(out.raw, out.cofactors[top].inverse());
  return out;
}

std::vector<SeriesVec> basis_family(const Uniformizer& u, int h) {
  require_line_case(u);
  require(h >= 0, ErrorCode::kInvalidArgument, "depth must be nonnegative");
  std::vector<SeriesVec> out = {u.s()};
  for (int r = 1; r <= h; ++r) {
    for (int i = 0; i < u.n; ++i) {
      const SeriesMat beta = beta_ir(u.n, i, r, u.zero_level(), u.prec + 2 * r);
      SeriesVec sb = gl_action_direct(u, beta).s();
      sb[i] = sb[i].shifted(-r);
      out.push_back(std::move(sb));
    }
  }
  return out;
}

BakerResult baker(const Uniformizer& u, const SeriesMat& g, const Lattice& l0, int guard) {
  require_line_case(u);
  require(l0.n() == u.n, ErrorCode::kDimensionMismatch, "lattice rank differs from n");
  if (guard < 0) guard = u.n + 1;
  const Level* zl = u.zero_level();
  BakerResult out;
  const SmithForm sf = smith_decompose(g);
  out.smith_exponents = sf.exponents;
  const ActionShape sh = action_shape(g, u.n);
  out.l = sh.l;
  out.m = sh.m;

  // g = u1 D u2: Psi = u2^-1 w with w in (u2 L)_{-l} and D w integral.
  int mD = 0;
  for (int a : sf.exponents) mD = std::max(mD, a);
  const Lattice lp = l0.applied(sf.u2);
  Lattice lj = filtration_member(lp, -sh.l, 1, guard);
  require(lj.lo() <= -mD, ErrorCode::kWindowTooSmall,
          "window of L_{-l} starts at t^" + std::to_string(lj.lo()) + ", needs t^" + std::to_string(-mD));
  lj = lj.restricted(-mD);
  std::vector<SeriesVec> rows;
  for (int r = 0; r < lj.dim(); ++r) rows.push_back(lj.row_series(r));
  const SeriesMat D = sf.diagonal(std::max(l0.hi() - l0.lo(), g.min_prec()));
  const std::vector<FieldElem> c = integral_line(rows, D, zl);
  SeriesVec psi = sf.u2.inverse().apply(combine(rows, c));
  const std::vector<FieldElem> coords = sigma_coordinates(u, psi, sh.m, sh.top);
  psi = scaled(psi, coords[last_nonzero(coords)].inverse());
  out.psi = psi;
  out.s_g = nonnegative_part(g.apply(psi));

  out.a0_units = true;
  for (const Series& s : out.s_g) out.a0_units = out.a0_units && s.prec() > 0 && !s.coeff(0).is_zero();

  const int hi = std::min(l0.hi(), min_prec(psi));
  const Lattice lt = l0.truncated(hi);
  out.in_lattice = lt.contains(truncated(psi, hi));

  const SeriesVec psi_direct = g.inverse().apply(gl_action_direct(u, g).s());
  out.routes_agree = agree_on_common_window(psi, psi_direct, 0);
  return out;
}

}  // namespace unisheaf
