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

#include "unisheaf/jobs.hpp"

#include <sstream>

namespace unisheaf {

namespace {

struct Built {
  std::shared_ptr<Tower> tower;
  DModule module;
  XPoint x;
  PickPolicy policy = PickPolicy::kLexLeast;
};

FieldElem fq_from_coords(const Tower& tw, const FqCoords& c, const char* what) {
  require(!c.empty() && static_cast<int>(c.size()) <= tw.e(), ErrorCode::kInvalidArgument,
          std::string(what) + " needs between 1 and " + std::to_string(tw.e()) + " coordinates");
  for (int v : c) {
    require(v >= 0 && static_cast<std::uint32_t>(v) < tw.p(), ErrorCode::kInvalidArgument,
            std::string(what) + " coordinate out of range");
  }
  return tw.from_coords(c, tw.base_level());
}

Built build(const JobSpec& job, std::shared_ptr<Tower> tower = nullptr) {
  Built b;
  if (tower == nullptr) {
    const auto [p, e] = split_prime_power(job.q);
    tower = Tower::create(p, e, job.budget);
  }
  b.tower = tower;
  b.policy = parse_policy(job.policy);
  const FieldElem theta = fq_from_coords(*tower, job.theta, "theta");
  if (job.g.empty()) {
    b.module = DModule::carlitz(tower, theta);
  } else {
    std::vector<FieldElem> g;
    for (const FqCoords& c : job.g) g.push_back(fq_from_coords(*tower, c, "module coefficient"));
    b.module = DModule::drinfeld(tower, theta, g);
  }
  if (job.place.empty()) {
    b.x = XPoint::rational(fq_from_coords(*tower, job.xi, "xi"));
  } else {
    std::vector<FieldElem> pc;
    for (const FqCoords& c : job.place) pc.push_back(fq_from_coords(*tower, c, "place coefficient"));
    b.x = XPoint::from_poly(Poly(pc, tower->base_level()));
  }
  return b;
}

Json coords_json(const std::vector<FqCoords>& v) {
  Json out = Json::array();
  for (const FqCoords& c : v) out.push_back(c);
  return out;
}

Uniformizer uniformizer_for(const JobSpec& job, const Built& b) {
  require(job.prec >= 1, ErrorCode::kInvalidArgument, "precision must be positive");
  TateSystem t = tate_basis(b.module, b.x, job.effective_depth(), b.policy);
  return uniformizer_from_tate(t, job.prec);
}

Lattice lattice_for(const JobSpec& job, const Uniformizer& u) {
  if (job.variant == "trivial") return trivial_lattice(u.n, -job.window_n, job.window_m, u.zero_level());
  const Lattice l = lattice_from_uniformizer(u, job.window_n, job.window_m);
  if (job.variant == "module") return l;
  if (job.variant == "shifted") return l.shifted(1);
  fail(ErrorCode::kInvalidArgument, "unknown lattice variant " + job.variant);
}

Json cmd_uniformizer(const JobSpec& job, const Built& b) {
  const Uniformizer u = uniformizer_for(job, b);
  Json out = {{"uniformizer", to_json(u)}, {"master_invariant", master_invariant_holds(u)}};
  if (b.module.n() == 1 && b.x.degree() == 1 && b.module.k() == 1) {
    const FieldElem xi = b.x.xi();
    Uniformizer other;
    std::string route;
    if (job.g.empty()) {
      other = carlitz_uniformizer(b.tower, b.module.theta(), xi, job.prec);
      route = "carlitz";
    } else {
      const FieldElem c = fq_from_coords(*b.tower, job.g[0], "module coefficient");
      other = rank_one_uniformizer(b.tower, b.module.theta(), c, xi, job.prec, b.policy);
      route = "rank_one";
    }
    Json cross = to_json(unit_ratio(u.s(), other.s(), u.pivot));
    cross["route"] = route;
    cross["series"] = to_json(other.s());
    cross["master_invariant"] = master_invariant_holds(other);
    out["cross_validation"] = cross;
  } else {
    out["cross_validation"] = nullptr;
  }
  return out;
}

Json torsion_payload(const JobSpec& job, const Built& b) {
  require(job.r >= 1, ErrorCode::kInvalidArgument, "torsion level must be positive");
  const std::vector<Point> basis = torsion_basis(b.module, b.x, job.r, b.policy);
  const Level* level = b.tower->prime_level();
  Json pts = Json::array();
  for (const Point& z : basis) {
    for (const FieldElem& c : z) level = join_levels(level, c.level());
    pts.push_back(to_json(z));
  }
  const TateSystem t = tate_basis(b.module, b.x, job.effective_depth(), b.policy);
  Json tors = {{"r", job.r},
               {"dimension", static_cast<int>(basis.size())},
               {"expected", b.module.n() * job.r * b.x.degree()},
               {"level_dim", level->dim},
               {"basis", pts}};
  return {{"torsion", tors}, {"chains", to_json(t)}};
}

// Rebuilds the tower and module from a cached artifact and checks the chain
// relations phi_{t_x}(alpha_h) = alpha_(h-1), phi_{t_x}(alpha_0) = 0.
void check_cached_torsion(const JobSpec& job, const Json& payload) {
  auto tower = tower_from_json(payload.at("tower"));
  try {
    const Built b = build(job, tower);
    const OreMat P = phi_of(b.module, b.x.pi);
    const Json& result = payload.at("result");
    for (const Json& per_xi : result.at("chains").at("chains")) {
      for (const Json& chain : per_xi) {
        Point prev;
        for (const Json& pj : chain) {
          Point z;
          for (const Json& c : pj) z.push_back(field_from_json(*tower, c));
          const Point img = P(z);
          if (prev.empty()) {
            for (const FieldElem& c : img) require(c.is_zero(), ErrorCode::kStoreCorrupt, "cached chain start is not torsion");
          } else {
            require(img == prev, ErrorCode::kStoreCorrupt, "cached chain breaks phi_{t_x}(alpha_h) = alpha_(h-1)");
          }
          prev = z;
        }
      }
    }
    // The basis must consist of F_q-independent points of ker phi_{t_x^r}.
    const Json& tors = result.at("torsion");
    const OreMat Pr = phi_of(b.module, x_power(b.x, job.r));
    std::vector<Point> basis;
    const Level* level = tower->prime_level();
    for (const Json& pj : tors.at("basis")) {
      Point z;
      for (const Json& c : pj) z.push_back(field_from_json(*tower, c));
      require(static_cast<int>(z.size()) == b.module.k(), ErrorCode::kStoreCorrupt, "cached point has wrong size");
      for (const FieldElem& c : Pr(z)) require(c.is_zero(), ErrorCode::kStoreCorrupt, "cached basis point is not torsion");
      for (const FieldElem& c : z) level = join_levels(level, c.level());
      basis.push_back(std::move(z));
    }
    std::vector<FpVec> rows;
    const FieldElem gen = tower->fq_generator();
    for (const Point& z : basis) {
      FieldElem w = tower->one();
      for (int j = 0; j < tower->e(); ++j, w *= gen) {
        FpVec row;
        for (const FieldElem& c : z) {
          const FieldElem a = (w * c).embed(level);
          row.insert(row.end(), a.coords().begin(), a.coords().end());
        }
        rows.push_back(std::move(row));
      }
    }
    const int cols = level->dim * b.module.k();
    const int rank = fp_rref(std::move(rows), cols, tower->p()).rank();
    require(rank == tower->e() * static_cast<int>(basis.size()), ErrorCode::kStoreCorrupt,
            "cached basis is not F_q-independent");
    require(tors.at("dimension").get<int>() == static_cast<int>(basis.size()), ErrorCode::kStoreCorrupt,
            "cached dimension disagrees with its basis");
  } catch (const Json::exception& e) {
    fail(ErrorCode::kStoreCorrupt, std::string("malformed torsion artifact: ") + e.what());
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kStoreCorrupt) throw;
    fail(ErrorCode::kStoreCorrupt, std::string("torsion artifact rejected: ") + e.what());
  }
}

Json cmd_baker(const JobSpec& job, const Built& b) {
  const Uniformizer u = uniformizer_for(job, b);
  const Lattice l = lattice_from_uniformizer(u, job.window_n, u.prec - job.window_n);
  std::vector<int> ex = job.exponents;
  if (ex.empty()) ex.assign(u.n, 0);
  require(static_cast<int>(ex.size()) == u.n, ErrorCode::kDimensionMismatch, "need one exponent per component");
  const int mp = u.prec + 4 * u.n + 8;
  std::mt19937_64 rng(job.seed);
  const SeriesMat g =
      random_unit_matrix(u.n, *b.tower, mp, rng) * SeriesMat::diagonal_monomials(ex, u.zero_level(), mp);
  const BakerResult r = baker(u, g, l);
  return {{"g", to_json(g)}, {"baker", to_json(r)}, {"s", to_json(u.s())}};
}

}  // namespace

Json to_json(const JobSpec& job) {
  return {{"command", job.command}, {"q", job.q},
          {"theta", job.theta},     {"g", coords_json(job.g)},
          {"xi", job.xi},           {"place", coords_json(job.place)},
          {"prec", job.prec},       {"r", job.r},
          {"depth", job.effective_depth()}, {"window", {job.window_n, job.window_m}},
          {"budget", job.budget},   {"policy", job.policy},
          {"seed", job.seed},       {"exponents", job.exponents},
          {"variant", job.variant}, {"k", job.k},
          {"stabilizer_range", {job.a, job.b}}};
}

JobSpec job_from_json(const Json& j) {
  JobSpec job;
  try {
    job.command = j.value("command", job.command);
    job.q = j.value("q", job.q);
    job.theta = j.value("theta", job.theta);
    if (j.contains("g")) job.g = j["g"].get<std::vector<FqCoords>>();
    job.xi = j.value("xi", job.xi);
    if (j.contains("place")) job.place = j["place"].get<std::vector<FqCoords>>();
    job.prec = j.value("prec", job.prec);
    job.r = j.value("r", job.r);
    job.depth = j.value("depth", job.depth);
    if (j.contains("window")) {
      job.window_n = j["window"].at(0).get<int>();
      job.window_m = j["window"].at(1).get<int>();
    }
    job.budget = j.value("budget", job.budget);
    job.policy = j.value("policy", job.policy);
    job.seed = j.value("seed", job.seed);
    job.exponents = j.value("exponents", job.exponents);
    job.variant = j.value("variant", job.variant);
    job.k = j.value("k", job.k);
    if (j.contains("stabilizer_range")) {
      job.a = j["stabilizer_range"].at(0).get<int>();
      job.b = j["stabilizer_range"].at(1).get<int>();
    }
  } catch (const Json::exception& e) {
    fail(ErrorCode::kInvalidArgument, std::string("malformed job: ") + e.what());
  }
  return job;
}

std::pair<std::uint32_t, int> split_prime_power(std::uint64_t q) {
  require(q >= 2, ErrorCode::kInvalidArgument, "q must be at least 2");
  std::uint64_t p = 2;
  while (p * p <= q && q % p != 0) ++p;
  if (q % p != 0) p = q;
  int e = 0;
  std::uint64_t rest = q;
  while (rest % p == 0) {
    rest /= p;
    ++e;
  }
  require(rest == 1, ErrorCode::kInvalidArgument, "q = " + std::to_string(q) + " is not a prime power");
  return {static_cast<std::uint32_t>(p), e};
}

FqCoords parse_coords(const std::string& text) {
  FqCoords out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const int v = std::stoi(item, &used);
      require(used == item.size(), ErrorCode::kInvalidArgument, "bad coordinate '" + item + "'");
      out.push_back(v);
    } catch (const std::logic_error&) {
      fail(ErrorCode::kInvalidArgument, "bad coordinate '" + item + "'");
    }
  }
  require(!out.empty(), ErrorCode::kInvalidArgument, "empty coordinate list");
  return out;
}

const std::vector<std::string>& job_commands() {
  static const std::vector<std::string> names = {"uniformizer", "torsion",       "baker",
                                                 "scattering",  "lattice-check", "stabilizer"};
  return names;
}

PickPolicy parse_policy(const std::string& name) {
  if (name == "lex_least") return PickPolicy::kLexLeast;
  if (name == "lex_greatest") return PickPolicy::kLexGreatest;
  fail(ErrorCode::kInvalidArgument, "unknown policy " + name);
}

SeriesMat random_unit_matrix(int n, const Tower& tower, int prec, std::mt19937_64& rng, int degree) {
  const Level* zl = tower.prime_level();
  const std::uint64_t q = tower.q();
  SeriesMat g(n, n, zl, prec);
  do {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        Series s(zl, 0, prec);
        for (int e = 0; e <= degree; ++e) s.set_coeff(e, tower.fq_element(rng() % q));
        g.at(i, j) = s;
      }
    }
  } while (g.det().coeff(0).is_zero());
  return g;
}

Json run_job(const JobSpec& job, const Store* store, std::string* cache_status) {
  if (cache_status != nullptr) *cache_status = "off";
  const Built b = build(job);
  Json body;
  if (job.command == "uniformizer") {
    body = cmd_uniformizer(job, b);
  } else if (job.command == "torsion") {
    const Json key_job = to_json(job);
    const std::string key = Store::key(key_job);
    if (store != nullptr) {
      std::optional<Json> hit;
      bool corrupt = false;
      try {
        hit = store->get(key);
        if (hit) check_cached_torsion(job, *hit);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::kStoreCorrupt) throw;
        corrupt = true;
        hit.reset();
      }
      if (hit) {
        if (cache_status != nullptr) *cache_status = "hit";
        return *hit;
      }
      if (cache_status != nullptr) *cache_status = corrupt ? "recomputed" : "miss";
    }
    body = torsion_payload(job, b);
    Json out = {{"job", key_job}, {"result", body}, {"tower", to_json(*b.tower)}};
    if (store != nullptr) store->put(key, key_job, out);
    return out;
  } else if (job.command == "baker") {
    body = cmd_baker(job, b);
  } else if (job.command == "scattering") {
    body = to_json(scattering_det(uniformizer_for(job, b)));
  } else if (job.command == "lattice-check") {
    const Uniformizer u = uniformizer_for(job, b);
    const Lattice l = lattice_for(job, u);
    body = {{"lattice", to_json(l)}, {"report", to_json(elliptic_check(l, job.k))}};
  } else if (job.command == "stabilizer") {
    const Uniformizer u = uniformizer_for(job, b);
    const Lattice l = lattice_for(job, u);
    body = {{"lattice", to_json(l)}, {"report", to_json(stabilizer_ring(l, job.a, job.b))}};
  } else {
    fail(ErrorCode::kInvalidArgument, "unknown command " + job.command);
  }
  return {{"job", to_json(job)}, {"result", body}, {"tower", to_json(*b.tower)}};
}

}  // namespace unisheaf
