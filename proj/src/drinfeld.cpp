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

#include "unisheaf/drinfeld.hpp"

#include <optional>

#include "unisheaf/fp_linalg.hpp"

namespace unisheaf {

namespace {

const Level* point_level(const Point& z, const Level* start) {
  const Level* l = start;
  for (const FieldElem& c : z) l = join_levels(l, c.level());
  return l;
}

// Lowest level that can hold a solution of P(z) = target.
const Level* solve_start(const OreMat& P, const Point& target, const Tower& tw) {
  const Level* from = tw.base_level();
  const int coeff_index = P.level()->index;
  for (const FieldElem& c : target) {
    const Level* m = c.min_level();
    if (m->index > coeff_index) from = join_levels(from, m);
  }
  return from;
}

FpMatrix ore_matrix(const OreMat& P, const Level* in, const Level* out) {
  return additive_map_matrix(in, out, P.k(), [&](const Point& z) { return P(z); });
}

void check_away(const DModule& m, const XPoint& x) {
  FieldElem v = x.pi.eval(m.theta());
  require(!v.is_zero(), ErrorCode::kCharacteristicCollision, "the place x meets the characteristic");
}

FieldElem import_fq(const FieldElem& c, const Tower& to) {
  const Tower& from = c.tower();
  FieldElem d = c.demote(from.base_level());
  return FieldElem(to.base_level(), d.coords());
}

// Hessenberg reduction followed by the standard recurrence.
Poly characteristic_polynomial(std::vector<std::vector<FieldElem>> h, const Level* level) {
  const int n = static_cast<int>(h.size());
  for (int m = 1; m + 1 < n; ++m) {
    int i = m;
    while (i < n && h[i][m - 1].is_zero()) ++i;
    if (i == n) continue;
    if (i != m) {
      std::swap(h[i], h[m]);
      for (int r = 0; r < n; ++r) std::swap(h[r][i], h[r][m]);
    }
    FieldElem inv = h[m][m - 1].inverse();
    for (int j = m + 1; j < n; ++j) {
      if (h[j][m - 1].is_zero()) continue;
      FieldElem u = h[j][m - 1] * inv;
      for (int c = 0; c < n; ++c) h[j][c] -= u * h[m][c];
      for (int r = 0; r < n; ++r) h[r][m] += u * h[r][j];
    }
  }
  std::vector<Poly> p;
  FieldElem one(level);
  one.raw()[0] = 1;
  p.push_back(Poly::constant(one));
  for (int m = 0; m < n; ++m) {
    Poly next = (Poly::x(level) - Poly::constant(h[m][m].embed(level))) * p[m];
    FieldElem prod = one;
    for (int i = m - 1; i >= 0; --i) {
      prod *= h[i + 1][i];
      next = next - p[i] * (h[i][m] * prod);
    }
    p.push_back(next);
  }
  return p[n];
}

std::vector<std::vector<FieldElem>> mat_mul(const std::vector<std::vector<FieldElem>>& a,
                                            const std::vector<std::vector<FieldElem>>& b, const Level* zl) {
  const int n = static_cast<int>(a.size());
  std::vector<std::vector<FieldElem>> c(n, std::vector<FieldElem>(n, FieldElem(zl)));
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      if (a[i][k].is_zero()) continue;
      for (int j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
    }
  }
  return c;
}

bool mat_is_zero(const std::vector<std::vector<FieldElem>>& a) {
  for (const auto& row : a) {
    for (const FieldElem& x : row) {
      if (!x.is_zero()) return false;
    }
  }
  return true;
}

// p-th root in a finite field: x^(p^(D-1)).
FieldElem pth_root(const FieldElem& x) {
  const Level* L = x.level();
  Exponent e = 1;
  for (int i = 0; i + 1 < L->dim; ++i) e *= L->p;
  return x.pow(e);
}

std::shared_ptr<const ResidueData> make_residue(const XPoint& x, int depth, const Tower& ktw) {
  auto rd = std::make_shared<ResidueData>();
  rd->tower = Tower::create(ktw.p(), ktw.e());
  Tower& kx = *rd->tower;
  std::vector<FieldElem> monic;
  for (const FieldElem& c : x.pi.coeffs()) monic.push_back(import_fq(c, kx));
  const Level* L = kx.extend_with(monic);
  rd->level = L;
  rd->zeta = FieldElem(L);
  rd->zeta.raw()[L->base->dim] = 1;
  rd->basis = dual_basis(L);

  const int prec = depth + 1;
  const Level* zl = kx.prime_level();
  Poly pi_k(monic, kx.base_level());
  Poly dpi = pi_k.derivative();
  FieldElem inv_d = dpi.eval(rd->zeta).inverse();
  Series t_x = Series::monomial(kx.one(), 1, prec);
  Series delta(zl, 0, prec);
  for (int it = 0; it < prec; ++it) {
    Series arg = delta + Series::constant(rd->zeta, prec);
    Series acc(zl, 0, prec);
    for (int i = pi_k.degree(); i >= 0; --i) acc = acc * arg + Series::constant(pi_k.coeff(i), prec);
    delta = delta - (acc - t_x).scaled(inv_d);
  }
  rd->delta = delta;

  // Powers (zeta + delta)^j and the F_p-linear map a -> a(zeta + delta).
  const int f = x.degree();
  const int e = ktw.e();
  const int dimk = L->dim;
  Series arg = delta + Series::constant(rd->zeta, prec);
  std::vector<Series> powers{Series::constant(kx.one(), prec)};
  for (int j = 1; j < f * prec; ++j) powers.push_back(powers.back() * arg);
  const std::vector<FieldElem>& omegas = rd->basis.dual;
  rd->a.assign(f, {});
  for (int h = 0; h < prec; ++h) {
    const int unknowns = f * (h + 1);
    FpMatrix m(dimk * (h + 1), unknowns * e, ktw.p());
    for (int j = 0; j < unknowns; ++j) {
      for (int k = 0; k < e; ++k) {
        FieldElem g(kx.base_level());
        g.raw()[k] = 1;
        FpVec col;
        for (int i = 0; i <= h; ++i) {
          FieldElem c = (powers[j].coeff(i) * g).embed(L);
          col.insert(col.end(), c.coords().begin(), c.coords().end());
        }
        m.set_column(j * e + k, col);
      }
    }
    for (int c = 0; c < f; ++c) {
      FpVec rhs(dimk * (h + 1), 0);
      FieldElem w = omegas[c].embed(L);
      std::copy(w.coords().begin(), w.coords().end(), rhs.begin());
      std::optional<FpVec> sol = fp_solve(m, rhs);
      require(sol.has_value(), ErrorCode::kLevelError, "residue congruence has no solution");
      std::vector<FieldElem> coeffs;
      for (int j = 0; j < unknowns; ++j) {
        coeffs.emplace_back(ktw.base_level(), std::span<const Coeff>(sol->data() + j * e, e));
      }
      rd->a[c].push_back(Poly(coeffs, ktw.base_level()));
    }
  }
  return rd;
}

// k(x)-basis of E[x] for a place of degree f: greedy over an F_q-basis.
std::vector<Point> residue_basis(const DModule& m, const XPoint& x, PickPolicy policy) {
  std::vector<Point> cand = torsion_basis(m, x, 1, policy);
  const Level* L = m.tower().base_level();
  for (const Point& z : cand) L = point_level(z, L);
  const int k = m.k();
  const int f = x.degree();
  std::vector<OreMat> tpow;
  const Level* fq = m.tower().base_level();
  for (int j = 0; j < f; ++j) {
    tpow.push_back(phi_of(m, pow(Poly::x(fq), j)));
  }
  std::vector<FieldElem> fq_gens;
  FieldElem w = m.tower().one();
  for (int j = 0; j < m.tower().e(); ++j) {
    fq_gens.push_back(w);
    w *= m.tower().fq_generator();
  }
  std::vector<FpVec> rows;
  FpEchelon span = fp_rref({}, k * L->dim, L->p);
  std::vector<Point> chosen;
  for (const Point& z : cand) {
    if (span.contains(flatten(z, L))) continue;
    chosen.push_back(z);
    for (const OreMat& t : tpow) {
      Point y = t(z);
      for (const FieldElem& g : fq_gens) {
        Point s = y;
        for (FieldElem& c : s) c *= g;
        rows.push_back(flatten(s, L));
      }
    }
    span = fp_rref(rows, k * L->dim, L->p);
  }
  require(static_cast<int>(chosen.size()) == m.n(), ErrorCode::kLevelError, "division points are not free");
  return chosen;
}

}  // namespace

DModule DModule::drinfeld(std::shared_ptr<Tower> tower, const FieldElem& theta, const std::vector<FieldElem>& g) {
  require(!g.empty() && !g.back().is_zero(), ErrorCode::kInvalidArgument, "leading coefficient must be nonzero");
  require(&theta.tower() == tower.get(), ErrorCode::kLevelError, "theta lives in another tower");
  DModule m;
  m.tower_ = std::move(tower);
  m.k_ = 1;
  m.n_ = static_cast<int>(g.size());
  m.theta_ = theta;
  std::vector<FieldElem> c{theta};
  c.insert(c.end(), g.begin(), g.end());
  m.phi_t_ = OreMat(OrePoly(c, m.tower_->prime_level()));
  return m;
}

DModule DModule::carlitz(std::shared_ptr<Tower> tower, const FieldElem& theta) {
  FieldElem one = tower->one();
  return drinfeld(std::move(tower), theta, {one});
}

DModule DModule::t_module(std::shared_ptr<Tower> tower, const OreMat& phi_t, int n) {
  require(phi_t.k() >= 1 && n >= 1, ErrorCode::kInvalidArgument, "dimension and rank must be positive");
  DModule m;
  m.tower_ = std::move(tower);
  m.k_ = phi_t.k();
  m.n_ = n;
  m.phi_t_ = phi_t;
  m.theta_ = phi_t.at(0, 0).coeff(0);
  if (m.k_ == 1) {
    require(phi_t.degree() == n, ErrorCode::kInvalidArgument, "rank must equal the sigma-degree");
  } else {
    m.theta_ = characteristic_of(m).b;
  }
  return m;
}

OreMat phi_of(const DModule& m, const Poly& a) {
  const int k = m.k();
  const Level* zl = m.tower().prime_level();
  OreMat acc(k, zl);
  for (int i = a.degree(); i >= 0; --i) {
    acc = acc * m.phi_t();
    acc = acc + OreMat::scalar(k, a.coeff(i));
  }
  return acc;
}

CharacteristicCertificate characteristic_of(const DModule& m) {
  const int k = m.k();
  std::vector<std::vector<FieldElem>> c = m.phi_t().constant_part();
  const Level* L = m.tower().base_level();
  for (const auto& row : c) {
    for (const FieldElem& x : row) L = join_levels(L, x.level());
  }
  for (auto& row : c) {
    for (FieldElem& x : row) x = x.embed(L);
  }
  CharacteristicCertificate cert;
  Poly chi = characteristic_polynomial(c, L);
  cert.charpoly = chi.coeffs();
  const std::uint32_t p = m.tower().p();
  int a = 0, pa = 1;
  while ((k / pa) % p == 0) {
    pa *= p;
    ++a;
  }
  const int mm = k / pa;
  // chi = (x^(p^a) - B)^mm with B = b^(p^a).
  FieldElem mm_elem(L);
  mm_elem.raw()[0] = Coeff(mm % p);
  FieldElem b = -(chi.coeff(pa * (mm - 1)) / mm_elem);
  for (int i = 0; i < a; ++i) b = pth_root(b);
  Poly lin = Poly::x(L) - Poly::constant(b);
  require(pow(lin, k) == chi, ErrorCode::kNotEllipticCharacteristic,
          "characteristic polynomial of t on Lie(E) is not a power of one linear factor");
  cert.b = b.demote(b.min_level());
  cert.j = 0;
  cert.m = k;
  std::vector<std::vector<FieldElem>> nm = c;
  for (int i = 0; i < k; ++i) nm[i][i] -= b;
  std::vector<std::vector<FieldElem>> pw = nm;
  int nil = 1;
  while (!mat_is_zero(pw)) {
    pw = mat_mul(pw, nm, L);
    ++nil;
  }
  cert.nilpotency = nil;
  return cert;
}

XPoint XPoint::rational(const FieldElem& xi) {
  const Level* fq = xi.tower().base_level();
  require(xi.level()->index <= fq->index || xi.min_level()->index <= fq->index, ErrorCode::kLevelError,
          "xi must lie in F_q");
  FieldElem one = xi.tower().one();
  return XPoint{Poly({-xi, one}, fq)};
}

XPoint XPoint::from_poly(const Poly& pi) {
  const Level* fq = pi.level()->tower->base_level();
  require(pi.level()->index <= fq->index, ErrorCode::kLevelError, "x must be defined over F_q");
  require(pi.degree() >= 1 && pi.lead().is_one(), ErrorCode::kInvalidArgument, "generator must be monic");
  Poly p(pi.coeffs(), fq);
  require(is_irreducible(p), ErrorCode::kInvalidArgument, "generator must be irreducible");
  return XPoint{p};
}

FieldElem XPoint::xi() const {
  require(degree() == 1, ErrorCode::kInvalidArgument, "x is not rational");
  return -pi.coeff(0);
}

Poly x_power(const XPoint& x, int r) { return pow(x.pi, r); }

Point ore_solve(const OreMat& P, const Point& target, const Level* from, PickPolicy policy) {
  require(static_cast<int>(target.size()) == P.k(), ErrorCode::kDimensionMismatch, "target has the wrong size");
  Tower& tw = *from->tower;
  std::optional<Point> result;
  auto probe = [&](const Level* L) {
    const Level* out = point_level(target, join_levels(L, P.level()));
    FpMatrix mat = ore_matrix(P, L, out);
    std::optional<FpVec> x = fp_solve(mat, flatten(target, out));
    if (!x) return false;
    FpEchelon ker = fp_rref(fp_nullspace(mat), mat.cols(), L->p);
    result = unflatten(fp_coset_pick(*x, ker, policy == PickPolicy::kLexGreatest), L, P.k());
    return true;
  };
  tw.first_level_where(from, probe);
  return *result;
}

int torsion_dimension_at(const DModule& m, const XPoint& x, int r, const Level* level) {
  OreMat P = phi_of(m, x_power(x, r));
  FpMatrix mat = ore_matrix(P, level, join_levels(level, P.level()));
  return static_cast<int>(fp_nullspace(mat).size()) / m.tower().e();
}

std::vector<Point> torsion_basis(const DModule& m, const XPoint& x, int r, PickPolicy policy) {
  check_away(m, x);
  require(r >= 0, ErrorCode::kInvalidArgument, "r must be nonnegative");
  if (r == 0) return {};
  Tower& tw = m.tower();
  OreMat P = phi_of(m, x_power(x, r));
  const int want = m.n() * r * x.degree() * tw.e();
  std::optional<FpEchelon> ker;
  auto probe = [&](const Level* L) {
    FpMatrix mat = ore_matrix(P, L, join_levels(L, P.level()));
    std::vector<FpVec> null = fp_nullspace(mat);
    if (static_cast<int>(null.size()) < want) return false;
    require(static_cast<int>(null.size()) == want, ErrorCode::kLevelError, "kernel exceeds the expected dimension");
    ker = fp_rref(std::move(null), mat.cols(), L->p);
    return true;
  };
  const Level* L = tw.first_level_where(tw.base_level(), probe);
  std::vector<Point> out;
  for (const FpVec& v : fq_basis_greedy(*ker, L, m.k(), policy)) out.push_back(unflatten(v, L, m.k()));
  return out;
}

TateSystem tate_basis(const DModule& m, const XPoint& x, int depth, PickPolicy policy) {
  check_away(m, x);
  require(depth >= 0, ErrorCode::kInvalidArgument, "depth must be nonnegative");
  TateSystem T{m, x, depth, 0, policy, {}, nullptr};
  const int n = m.n();
  const int f = x.degree();
  OreMat Pt = phi_of(m, x.pi);
  std::vector<Point> base = f == 1 ? torsion_basis(m, x, 1, policy) : residue_basis(m, x, policy);
  std::vector<std::vector<Point>> gamma(n);
  for (int xi = 0; xi < n; ++xi) gamma[xi].push_back(base[xi]);
  int achieved = 0;
  for (int h = 1; h <= depth; ++h) {
    std::vector<Point> next;
    try {
      for (int xi = 0; xi < n; ++xi) {
        const Point& prev = gamma[xi].back();
        next.push_back(ore_solve(Pt, prev, solve_start(Pt, prev, m.tower()), policy));
      }
    } catch (const Error& err) {
      if (err.code() != ErrorCode::kTowerBudgetExceeded) throw;
      break;
    }
    for (int xi = 0; xi < n; ++xi) gamma[xi].push_back(next[xi]);
    achieved = h;
  }
  T.depth = achieved;
  T.points.assign(n, std::vector<std::vector<Point>>(f));
  if (f == 1) {
    for (int xi = 0; xi < n; ++xi) T.points[xi][0] = gamma[xi];
    return T;
  }
  auto rd = make_residue(x, achieved, m.tower());
  for (int xi = 0; xi < n; ++xi) {
    for (int c = 0; c < f; ++c) {
      for (int h = 0; h <= achieved; ++h) {
        T.points[xi][c].push_back(phi_of(m, rd->a[c][h])(gamma[xi][h]));
      }
    }
  }
  T.residue = rd;
  return T;
}

SeriesMat change_of_level(const TateSystem& from, const TateSystem& to) {
  require(from.f() == 1 && to.f() == 1, ErrorCode::kInvalidArgument, "change of level needs a rational place");
  require(from.module.tower_ptr() == to.module.tower_ptr() && from.n() == to.n() &&
              from.module.k() == to.module.k() && from.x.pi == to.x.pi,
          ErrorCode::kInvalidArgument, "systems belong to different modules or places");
  const int n = from.n();
  const int k = from.module.k();
  const int depth = std::min(from.depth, to.depth);
  Tower& tw = from.module.tower();
  const Level* fq = tw.base_level();
  const Level* zl = tw.prime_level();
  const int e = tw.e();
  const Level* L = fq;
  for (const TateSystem* T : {&from, &to}) {
    for (int xi = 0; xi < n; ++xi) {
      for (int h = 0; h <= depth; ++h) L = point_level(T->alpha(xi, h), L);
    }
  }
  std::vector<FieldElem> fq_units;
  for (int j = 0; j < e; ++j) {
    FieldElem g(fq);
    g.raw()[j] = 1;
    fq_units.push_back(g);
  }
  FpMatrix m(k * L->dim, n * e, tw.p());
  for (int eta = 0; eta < n; ++eta) {
    for (int j = 0; j < e; ++j) {
      Point z = from.alpha(eta, 0);
      for (FieldElem& c : z) c *= fq_units[j];
      m.set_column(eta * e + j, flatten(z, L));
    }
  }
  std::vector<std::vector<std::vector<FieldElem>>> g(n, std::vector<std::vector<FieldElem>>(n));
  for (int h = 0; h <= depth; ++h) {
    for (int xi = 0; xi < n; ++xi) {
      Point r = to.alpha(xi, h);
      for (int eta = 0; eta < n; ++eta) {
        for (int j = 0; j < h; ++j) {
          const Point& a = from.alpha(eta, h - j);
          for (int i = 0; i < k; ++i) r[i] -= g[xi][eta][j] * a[i];
        }
      }
      std::optional<FpVec> sol = fp_solve(m, flatten(r, L));
      require(sol.has_value(), ErrorCode::kInvalidArgument, "systems are not related by a change of level");
      for (int eta = 0; eta < n; ++eta) {
        g[xi][eta].emplace_back(fq, std::span<const Coeff>(sol->data() + eta * e, e));
      }
    }
  }
  SeriesMat G(n, n, zl, depth + 1);
  for (int xi = 0; xi < n; ++xi) {
    for (int eta = 0; eta < n; ++eta) G.at(xi, eta) = Series(g[xi][eta], 0, depth + 1);
  }
  return G;
}

}  // namespace unisheaf
