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

#include "unisheaf/verify.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <random>

#include "unisheaf/jobs.hpp"
#include "unisheaf/store.hpp"

namespace unisheaf {

namespace {

constexpr std::uint64_t kBruteForceLimit = 4096;

struct Mod {
  std::shared_ptr<Tower> tw;
  DModule m;
  XPoint x;
  std::string label;
};

std::string coords_label(const FqCoords& c) {
  std::string s;
  for (std::size_t i = 0; i < c.size(); ++i) s += (i ? "," : "") + std::to_string(c[i]);
  return c.size() > 1 ? "(" + s + ")" : s;
}

// Carlitz when g is empty.
Mod make_mod(std::uint64_t q, const FqCoords& theta, const std::vector<FqCoords>& g = {},
             int budget = kDefaultBudgetBits) {
  const auto [p, e] = split_prime_power(q);
  Mod r;
  r.tw = Tower::create(p, e, budget);
  const FieldElem th = r.tw->from_coords(theta, r.tw->base_level());
  r.label = "q=" + std::to_string(q) + " theta=" + coords_label(theta);
  if (g.empty()) {
    r.m = DModule::carlitz(r.tw, th);
    r.label += " carlitz";
  } else {
    std::vector<FieldElem> gs;
    r.label += " g=[";
    for (std::size_t i = 0; i < g.size(); ++i) {
      gs.push_back(r.tw->from_coords(g[i], r.tw->base_level()));
      r.label += (i ? " " : "") + coords_label(g[i]);
    }
    r.label += "]";
    r.m = DModule::drinfeld(r.tw, th, gs);
  }
  r.x = XPoint::rational(r.tw->zero());
  return r;
}

struct Built {
  Mod mod;
  TateSystem t;
  Uniformizer u;
};

Built with_uniformizer(Mod mod, int depth) {
  Built b{std::move(mod), {}, {}};
  b.t = tate_basis(b.mod.m, b.mod.x, depth);
  b.u = uniformizer_from_tate(b.t, depth + 1);
  return b;
}

FieldElem power(const FieldElem& a, std::uint64_t k) {
  FieldElem r = a.tower().one();
  for (std::uint64_t i = 0; i < k; ++i) r *= a;
  return r;
}

void add(SuiteResult& s, std::string name, bool passed, Json detail = Json::object()) {
  s.checks.push_back({std::move(name), passed, std::move(detail)});
}

// Runs body, turning a library error into a failed check.
template <class F>
void guarded(SuiteResult& s, const std::string& name, F&& body) {
  try {
    body();
  } catch (const Error& e) {
    add(s, name, false, {{"error", error_name(e.code())}, {"message", e.what()}});
  }
}

std::mt19937_64 suite_rng(std::uint64_t seed, const std::string& suite) {
  const std::uint64_t salt = std::stoull(sha256_hex(suite).substr(0, 8), nullptr, 16);
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(salt)};
  return std::mt19937_64(seq);
}

// Carlitz uniformizer against the Tate construction, and the difference
// equation of the former.
void suite_carlitz(SuiteResult& s, std::uint64_t) {
  const int prec = 6;
  struct Case {
    std::uint64_t q;
    FqCoords theta;
  };
  for (const Case& c : {Case{2, {1}}, Case{3, {1}}, Case{3, {2}}, Case{4, {1}}, Case{4, {0, 1}}}) {
    Mod mod = make_mod(c.q, c.theta);
    guarded(s, mod.label, [&] {
      const FieldElem theta = mod.m.theta();
      Built b = with_uniformizer(mod, prec - 1);
      const Uniformizer cz = carlitz_uniformizer(mod.tw, theta, prec);
      const UnitRatio r = unit_ratio(b.u.s(), cz.s(), 0);
      Json d = to_json(r);
      if (r.consistent) {
        const FieldElem u0 = r.ratio.coeff(0);
        d["scalar"] = to_json(u0);
        d["scalar_pow_q_minus_1"] = to_json(power(u0, mod.tw->q() - 1));
        d["minus_theta"] = to_json(-theta);
      }
      add(s, mod.label + ": tate and carlitz agree up to F_q^*", r.consistent && r.constant && r.over_fq, d);

      const FieldElem inv = mod.tw->one() / theta;
      const Series expected = Series::constant(mod.tw->one(), prec) - Series::monomial(inv, 1, prec);
      const Series ratio = frobenius_ratio(cz.s()[0]);
      add(s, mod.label + ": sigma^* s = (1 - theta^-1 t) s", ratio.agrees_with(expected),
          {{"ratio", to_json(ratio)}, {"expected", to_json(expected)}});

      const Series tate_expected = Series::monomial(mod.tw->one(), 1, prec) - Series::constant(theta, prec);
      const Series tate_ratio = frobenius_ratio(b.u.s()[0]);
      add(s, mod.label + ": tate s satisfies sigma^* s = (t - theta) s", tate_ratio.agrees_with(tate_expected),
          {{"ratio", to_json(tate_ratio)}});
    });
  }
}

// Counts z in the level with phi_{t^r}(z) = 0 by enumeration.
std::uint64_t brute_force_torsion(const OreMat& P, const Level* level) {
  std::uint64_t count = 0;
  std::vector<Coeff> digits(level->dim, 0);
  while (true) {
    const FieldElem z(level, std::span<const Coeff>(digits.data(), digits.size()));
    if (P({z})[0].is_zero()) ++count;
    int i = level->dim - 1;
    for (; i >= 0; --i) {
      if (++digits[i] < level->p) break;
      digits[i] = 0;
    }
    if (i < 0) break;
  }
  return count;
}

void suite_torsion(SuiteResult& s, std::uint64_t) {
  struct Case {
    std::uint64_t q;
    std::vector<FqCoords> g;
  };
  for (const Case& c : {Case{2, {}}, Case{2, {{1}, {1}}}, Case{3, {}}, Case{3, {{1}, {1}}}}) {
    Mod mod = make_mod(c.q, {1}, c.g);
    const int n = mod.m.n();
    for (int r = 1; r <= 3; ++r) {
      const std::string name = mod.label + " r=" + std::to_string(r);
      guarded(s, name, [&] {
        const std::vector<Point> basis = torsion_basis(mod.m, mod.x, r);
        const Level* full = mod.tw->prime_level();
        for (const Point& z : basis) {
          for (const FieldElem& a : z) full = join_levels(full, a.level());
        }
        const OreMat P = phi_of(mod.m, x_power(mod.x, r));
        Json levels = Json::array();
        bool agree = true;
        bool full_checked = false;
        for (int i = 0; i < mod.tw->size(); ++i) {
          const Level* l = mod.tw->level(i);
          if (l->order() > kBruteForceLimit) continue;
          const int dim = torsion_dimension_at(mod.m, mod.x, r, l);
          const std::uint64_t count = brute_force_torsion(P, l);
          std::uint64_t expect = 1;
          for (int j = 0; j < dim; ++j) expect *= mod.tw->q();
          agree = agree && count == expect;
          if (l == full) {
            full_checked = true;
            agree = agree && dim == n * r;
          }
          levels.push_back({{"level_dim", l->dim}, {"fq_dim", dim}, {"points", count}});
        }
        add(s, name + ": dim ker = n r", static_cast<int>(basis.size()) == n * r,
            {{"dimension", basis.size()}, {"expected", n * r}, {"level_dim", full->dim}});
        add(s, name + ": enumeration agrees on levels of <= 2^12 elements", agree,
            {{"levels", levels}, {"full_level_enumerated", full_checked}});
      });
    }
  }
}

void suite_invariant(SuiteResult& s, std::uint64_t) {
  const int prec = 5;
  auto check = [&](const std::string& name, const Uniformizer& u) {
    const std::vector<int> fails = master_invariant_failures(u, prec - 1);
    add(s, name, fails.empty(), {{"failures", fails}, {"prec", u.prec}});
  };
  struct CCase {
    std::uint64_t q;
    FqCoords theta;
  };
  for (const CCase& c : {CCase{2, {1}}, CCase{3, {1}}, CCase{3, {2}}, CCase{4, {1}}, CCase{4, {0, 1}}}) {
    Mod mod = make_mod(c.q, c.theta);
    guarded(s, mod.label, [&] {
      check(mod.label + ": tate", with_uniformizer(mod, prec - 1).u);
      check(mod.label + ": carlitz_uniformizer", carlitz_uniformizer(mod.tw, mod.m.theta(), prec));
    });
  }
  struct RCase {
    std::uint64_t q;
    std::vector<FqCoords> g;
  };
  for (const RCase& c : {RCase{2, {{0}, {1}}}, RCase{2, {{1}, {1}}}, RCase{3, {{0}, {2}}}, RCase{3, {{1}, {1}}}}) {
    Mod mod = make_mod(c.q, {1}, c.g);
    guarded(s, mod.label, [&] { check(mod.label + ": tate", with_uniformizer(mod, prec - 1).u); });
  }
  guarded(s, "rank one", [&] {
    auto t3 = Tower::create(3, 1);
    check("q=3 theta=1 c=2: rank_one_uniformizer",
          rank_one_uniformizer(t3, t3->one(), t3->from_int(2), t3->zero(), prec));
    auto t4 = Tower::create(2, 2);
    check("q=4 theta=1 c=(0,1): rank_one_uniformizer",
          rank_one_uniformizer(t4, t4->one(), t4->fq_generator(), t4->zero(), prec));
  });
  guarded(s, "place t^2+t+1", [&] {
    Mod mod = make_mod(2, {1});
    mod.x = XPoint::from_poly(Poly({mod.tw->one(), mod.tw->one(), mod.tw->one()}, mod.tw->base_level()));
    TateSystem t = tate_basis(mod.m, mod.x, prec - 1);
    check("q=2 theta=1 carlitz at t^2+t+1: tate", uniformizer_from_tate(t, prec));
  });
  guarded(s, "carlitz tensor square", [&] {
    auto tw = Tower::create(2, 1);
    const Level* zl = tw->prime_level();
    OreMat phi(2, zl);
    phi.at(0, 0) = OrePoly::constant(tw->one());
    phi.at(0, 1) = OrePoly::constant(tw->one());
    phi.at(1, 0) = OrePoly::sigma_power(1, tw->one());
    phi.at(1, 1) = OrePoly::constant(tw->one());
    DModule m = DModule::t_module(tw, phi, 1);
    TateSystem t = tate_basis(m, XPoint::rational(tw->zero()), prec - 1);
    check("q=2 carlitz tensor square (k=2): tate", uniformizer_from_tate(t, prec));
  });
}

struct LatticeCase {
  Mod mod;
  int depth;
  int N;
};

std::vector<LatticeCase> moore_cases() {
  return {{make_mod(2, {1}), 7, 3},
          {make_mod(3, {2}), 7, 3},
          {make_mod(2, {1}, {{0}, {1}}), 10, 4},
          {make_mod(3, {1}, {{1}, {1}}), 8, 4}};
}

void suite_moore(SuiteResult& s, std::uint64_t) {
  for (LatticeCase& c : moore_cases()) {
    guarded(s, c.mod.label, [&] {
      Built b = with_uniformizer(c.mod, c.depth);
      const Lattice l = lattice_from_uniformizer(b.u, c.N, b.u.prec - c.N);
      const Level* zl = b.u.zero_level();
      const int n = b.u.n;
      for (int xi = 0; xi < n; ++xi) {
        for (int r : {-1, -2}) {
          const MooreResult mo = moore_formula(b.u, xi, r, b.t);
          const Uniformizer g = gl_action(b.u, beta_ir(n, xi, r, zl, 40), l);
          const LineComparison cmp = compare_lines(mo.normalized, g.s());
          add(s, c.mod.label + " xi=" + std::to_string(xi) + " r=" + std::to_string(r) + ": moore = gl_action",
              cmp.proportional, to_json(cmp));
        }
      }
      if (n == 1) {
        const Uniformizer g = gl_action(b.u, SeriesMat::diagonal_monomials({-1}, zl, 40), l);
        const LineComparison a = compare_lines(g.s(), b.u.s());
        add(s, c.mod.label + ": s^(t^-1) = s", a.proportional && a.scalar.is_one(), to_json(a));
        const LineComparison m = compare_lines(moore_formula(b.u, 0, -1, b.t).normalized, b.u.s());
        add(s, c.mod.label + ": moore r=-1 gives s", m.proportional && m.scalar.is_one(), to_json(m));
      }
    });
  }
}

void suite_basis(SuiteResult& s, std::uint64_t) {
  std::vector<LatticeCase> cases = {{make_mod(3, {1}), 7, 0},
                                    {make_mod(2, {1}, {{1}, {1}}), 10, 0},
                                    {make_mod(3, {1}, {{0}, {2}}), 8, 0}};
  for (LatticeCase& c : cases) {
    guarded(s, c.mod.label, [&] {
      Built b = with_uniformizer(c.mod, c.depth);
      const int n = b.u.n;
      for (int h = 0; h <= 3; ++h) {
        std::vector<SeriesVec> fam = basis_family(b.u, h);
        for (SeriesVec& v : fam) v = truncated(v, 2);
        const int rank = Lattice::from_series(n, -h, 2, fam, b.u.zero_level(), "family").dim();
        add(s, c.mod.label + " h=" + std::to_string(h) + ": rank = n h + 1", rank == n * h + 1,
            {{"rank", rank}, {"expected", n * h + 1}, {"members", fam.size()}});
      }
    });
  }
}

void suite_baker(SuiteResult& s, std::uint64_t seed) {
  std::mt19937_64 rng = suite_rng(seed, "baker");
  Mod mod = make_mod(2, {1}, {{0}, {1}});
  guarded(s, mod.label, [&] {
    Built b = with_uniformizer(mod, 10);
    const Lattice l = lattice_from_uniformizer(b.u, 4, b.u.prec - 4);
    const Lattice wide = lattice_from_uniformizer(b.u, 5, b.u.prec - 5);
    const Level* zl = b.u.zero_level();
    const int mp = 40;
    for (int i = 0; i < 20; ++i) {
      const SeriesMat g = random_unit_matrix(2, *mod.tw, mp, rng);
      const BakerResult r = baker(b.u, g, l);
      add(s, "unit g #" + std::to_string(i) + ": Psi(g) = s", agrees(r.psi, b.u.s()) && r.routes_agree,
          {{"g", to_json(g)}, {"routes_agree", r.routes_agree}, {"l", r.l}});
    }
    // v(det g) > 0 puts Psi in L_{-l} inside L_0; v(det g) < 0 only in L_{-l}.
    for (int sign : {1, -1}) {
      for (int i = 0; i < 10; ++i) {
        std::vector<int> ex;
        do {
          ex = {static_cast<int>(rng() % 4) - 2 + (sign > 0 ? 1 : 0), static_cast<int>(rng() % 4) - 2 + (sign > 0 ? 1 : 0)};
        } while (sign * (ex[0] + ex[1]) <= 0 || sign * (ex[0] + ex[1]) > 2);
        const SeriesMat g = random_unit_matrix(2, *mod.tw, mp, rng) * SeriesMat::diagonal_monomials(ex, zl, mp);
        const BakerResult r = baker(b.u, g, l);
        const BakerResult r2 = baker(b.u, g, wide);
        const LineComparison same = compare_lines(r.psi, r2.psi);
        Json d = to_json(r);
        d.erase("s_g");
        d["g"] = to_json(g);
        d["exponents"] = ex;
        const std::string tag = "g #" + std::to_string(i) + " v(det g)=" + std::to_string(ex[0] + ex[1]);
        if (sign > 0) {
          add(s, tag + ": Psi in L_0, a_0 units", r.in_lattice && r.a0_units && r.routes_agree, d);
        } else {
          const Lattice lj = filtration_member(l, -r.l, 1, b.u.n + 1);
          const int hi = std::min(lj.hi(), min_prec(r.psi));
          const bool in_lj = lj.truncated(hi).contains(truncated(r.psi, hi));
          d["in_filtration_member"] = in_lj;
          add(s, tag + ": Psi in L_{-v(det g)}, a_0 units", in_lj && r.a0_units && r.routes_agree, d);
        }
        add(s, tag + ": Psi independent of the window", same.proportional, to_json(same));
      }
    }
  });
}

struct EllipticCase {
  Mod mod;
  int depth;
  int N;
  int M;
};

std::vector<EllipticCase> elliptic_cases() {
  return {{make_mod(2, {1}), 11, 3, 4},
          {make_mod(3, {2}), 10, 3, 4},
          {make_mod(2, {1}, {{0}, {1}}), 12, 4, 4},
          {make_mod(3, {1}, {{1}, {1}}), 12, 4, 4}};
}

Json verdict(const EllipticReport& r) {
  return {{"passes", r.passes()}, {"u_stable", r.u_stable},   {"flag_contained", r.flag_contained},
          {"flag_spans", r.flag_spans}, {"flag_coranks", r.flag_coranks}, {"coranks", r.coranks},
          {"vanishing", r.vanishing}, {"h0", r.h0},           {"h1", r.h1}};
}

void suite_elliptic(SuiteResult& s, std::uint64_t) {
  for (EllipticCase& c : elliptic_cases()) {
    guarded(s, c.mod.label, [&] {
      Built b = with_uniformizer(c.mod, c.depth);
      const int n = b.u.n;
      const std::vector<std::pair<int, int>> windows = {{c.N, c.M}, {c.N + 2, c.M}, {c.N, c.M + 2}, {c.N + 2, c.M + 2}};
      Json valid = Json::array(), trivial = Json::array(), shifted = Json::array();
      bool valid_ok = true, trivial_ok = true, shifted_ok = true;
      for (auto [N, M] : windows) {
        const Lattice l = lattice_from_uniformizer(b.u, N, M);
        const EllipticReport rv = elliptic_check(l, 1);
        const EllipticReport rt = elliptic_check(trivial_lattice(n, -N, M, b.u.zero_level()), 1);
        const EllipticReport rs = elliptic_check(l.shifted(1), 1);
        Json w = {N, M};
        valid.push_back({{"window", w}, {"report", verdict(rv)}});
        trivial.push_back({{"window", w}, {"report", verdict(rt)}});
        shifted.push_back({{"window", w}, {"report", verdict(rs)}});
        valid_ok = valid_ok && rv.passes();
        trivial_ok = trivial_ok && !rt.passes() && !rt.flag_coranks;
        shifted_ok = shifted_ok && !rs.passes() && !rs.vanishing;
      }
      auto stable = [](const Json& runs) {
        for (const Json& r : runs) {
          if (r["report"] != runs[0]["report"]) return false;
        }
        return true;
      };
      add(s, c.mod.label + ": module lattice passes", valid_ok, valid[0]);
      add(s, c.mod.label + ": trivial lattice fails the flag coranks", trivial_ok, trivial[0]);
      add(s, c.mod.label + ": shifted lattice fails the vanishing", shifted_ok, shifted[0]);
      add(s, c.mod.label + ": verdicts stable under enlargement by 2", stable(valid) && stable(trivial) && stable(shifted),
          {{"module", valid}, {"trivial", trivial}, {"shifted", shifted}});
    });
  }
}

void suite_stabilizer(SuiteResult& s, std::uint64_t) {
  for (EllipticCase& c : elliptic_cases()) {
    guarded(s, c.mod.label, [&] {
      Built b = with_uniformizer(c.mod, c.depth);
      for (auto [N, M] : {std::pair{c.N, c.M}, std::pair{c.N + 2, c.M + 2}}) {
        const Lattice l = lattice_from_uniformizer(b.u, N, M);
        const StabilizerReport r = stabilizer_ring(l, 2, 2);
        Json d = to_json(r);
        d["window"] = {N, M};
        add(s, c.mod.label + " window [" + std::to_string(-N) + "," + std::to_string(M) + "): stabilizer is F_q[u]",
            r.polynomial_in_u && r.contains_one && r.contains_u && r.closed, d);
      }
    });
  }
}

void suite_scattering(SuiteResult& s, std::uint64_t) {
  std::vector<LatticeCase> cases = {{make_mod(2, {1}, {{0}, {1}}), 10, 0},
                                    {make_mod(2, {1}, {{1}, {1}}), 10, 0},
                                    {make_mod(3, {1}, {{0}, {2}}), 8, 0},
                                    {make_mod(3, {1}, {{1}, {1}}), 8, 0}};
  for (LatticeCase& c : cases) {
    guarded(s, c.mod.label, [&] {
      Built b = with_uniformizer(c.mod, c.depth);
      const ScatteringReport r = scattering_det(b.u);
      add(s, c.mod.label + ": derived g is constant and equals -g_2",
          r.derived_constant && r.derived_g == r.expected_g,
          {{"derived", to_json(r.derived)}, {"expected_g", to_json(r.expected_g)}});
      Json d = to_json(r.ratio);
      d["in_units_of_fq_power_series"] = r.ratio.consistent && r.ratio.over_fq;
      add(s, c.mod.label + ": rebuilt rank one uniformizer matches d up to F_q^*",
          r.ratio.consistent && r.ratio.constant && r.ratio.over_fq, d);
      add(s, c.mod.label + ": translates of d span the wedge window", r.spans_agree,
          {{"wedge_dim", r.wedge_dim}, {"translate_dim", r.translate_dim}});
    });
  }
}

using SuiteFn = void (*)(SuiteResult&, std::uint64_t);

struct Entry {
  SuiteInfo info;
  SuiteFn fn;
};

const std::vector<Entry>& entries() {
  static const std::vector<Entry> e = {
      {{"C1", "carlitz", "Carlitz cross-validation"}, suite_carlitz},
      {{"C2", "torsion", "Torsion dimensions"}, suite_torsion},
      {{"C3", "invariant", "Master series invariant"}, suite_invariant},
      {{"C4", "moore", "Moore determinant against the lattice action"}, suite_moore},
      {{"C5", "basis", "Basis family ranks"}, suite_basis},
      {{"C6", "baker", "Baker function"}, suite_baker},
      {{"C7", "elliptic", "Elliptic sheaf conditions"}, suite_elliptic},
      {{"C8", "stabilizer", "Stabilizer ring"}, suite_stabilizer},
      {{"C9", "scattering", "Scattering determinant"}, suite_scattering},
      {{"C10", "determinism", "Determinism"}, nullptr},
  };
  return e;
}

const Entry& find_entry(const std::string& name) {
  for (const Entry& e : entries()) {
    if (e.info.name == name || e.info.id == name) return e;
  }
  fail(ErrorCode::kInvalidArgument, "unknown suite " + name);
}

SuiteResult run_plain(const Entry& e, std::uint64_t seed) {
  SuiteResult r{e.info.id, e.info.name, e.info.title, {}};
  e.fn(r, seed);
  return r;
}

}  // namespace

bool SuiteResult::passed() const {
  if (checks.empty()) return false;
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

const std::vector<SuiteInfo>& suite_catalog() {
  static const std::vector<SuiteInfo> cat = [] {
    std::vector<SuiteInfo> v;
    for (const Entry& e : entries()) v.push_back(e.info);
    return v;
  }();
  return cat;
}

Json to_json(const SuiteResult& s) {
  Json checks = Json::array();
  for (const Check& c : s.checks) checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  const auto failed = std::count_if(s.checks.begin(), s.checks.end(), [](const Check& c) { return !c.passed; });
  return {{"id", s.id},
          {"name", s.name},
          {"title", s.title},
          {"passed", s.passed()},
          {"total", s.checks.size()},
          {"failed", failed},
          {"checks", checks}};
}

std::vector<SuiteResult> run_suites(const std::vector<std::string>& selection, std::uint64_t seed,
                                    const std::function<void(const SuiteResult&, double)>& on_done) {
  std::vector<bool> chosen(entries().size(), selection.empty());
  for (const std::string& name : selection) {
    const Entry& e = find_entry(name);
    chosen[&e - entries().data()] = true;
  }
  using Clock = std::chrono::steady_clock;
  std::vector<SuiteResult> out;
  std::map<std::string, std::string> first_dump;
  for (std::size_t i = 0; i < entries().size(); ++i) {
    if (!chosen[i]) continue;
    const Entry& e = entries()[i];
    const auto t0 = Clock::now();
    SuiteResult r{e.info.id, e.info.name, e.info.title, {}};
    if (e.fn != nullptr) {
      r = run_plain(e, seed);
      first_dump[e.info.name] = canonical_dump(to_json(r));
    } else {
      for (const Entry& other : entries()) {
        if (other.fn == nullptr) continue;
        std::string a = first_dump.count(other.info.name) ? first_dump[other.info.name]
                                                         : canonical_dump(to_json(run_plain(other, seed)));
        const std::string b = canonical_dump(to_json(run_plain(other, seed)));
        add(r, other.info.id + " " + other.info.name + ": rerun is byte-identical", a == b,
            {{"first_sha256", sha256_hex(a)}, {"second_sha256", sha256_hex(b)}});
      }
    }
    const double ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
    if (on_done) on_done(r, ms);
    out.push_back(std::move(r));
  }
  return out;
}

SuiteResult run_suite(const std::string& name, std::uint64_t seed) { return run_suites({name}, seed).front(); }

Json verify_report(const std::vector<SuiteResult>& suites, std::uint64_t seed) {
  Json arr = Json::array();
  bool all = !suites.empty();
  for (const SuiteResult& s : suites) {
    arr.push_back(to_json(s));
    all = all && s.passed();
  }
  return {{"seed", seed}, {"policy_version", kPolicyVersion}, {"passed", all}, {"suites", arr}};
}

}  // namespace unisheaf
