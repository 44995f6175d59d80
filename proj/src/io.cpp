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

#include "unisheaf/io.hpp"

#include <unistd.h>

#include <filesystem>
#include <fstream>

namespace unisheaf {

namespace fs = std::filesystem;

Json to_json(const FieldElem& a) {
  const Level* m = a.min_level();
  FieldElem b = a.demote(m);
  Json out = Json::array();
  for (Coeff c : b.coords()) out.push_back(static_cast<std::uint64_t>(c));
  return out;
}

FieldElem field_from_json(Tower& tower, const Json& j) {
  require(j.is_array() && !j.empty(), ErrorCode::kInvalidArgument, "field element must be a nonempty array");
  const Level* level = nullptr;
  for (int i = 0; i < tower.size(); ++i) {
    if (tower.level(i)->dim == static_cast<int>(j.size())) level = tower.level(i);
  }
  require(level != nullptr, ErrorCode::kLevelError, "no level of dimension " + std::to_string(j.size()));
  std::vector<int> coords;
  for (const Json& c : j) {
    require(c.is_number_integer() && c.get<std::int64_t>() >= 0 && c.get<std::int64_t>() < tower.p(),
            ErrorCode::kInvalidArgument, "coordinate out of range");
    coords.push_back(c.get<int>());
  }
  return tower.from_coords(coords, level);
}

Json to_json(const Series& s) {
  Json c = Json::array();
  for (int e = s.low(); e < s.prec(); ++e) c.push_back(to_json(s.coeff(e)));
  return {{"low", s.low()}, {"prec", s.prec()}, {"coeffs", c}};
}

Json to_json(const SeriesVec& v) {
  Json out = Json::array();
  for (const Series& s : v) out.push_back(to_json(s));
  return out;
}

Json to_json(const Point& p) {
  Json out = Json::array();
  for (const FieldElem& a : p) out.push_back(to_json(a));
  return out;
}

Json to_json(const SeriesMat& m) {
  Json out = Json::array();
  for (int i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(to_json(m.at(i, j)));
    out.push_back(row);
  }
  return out;
}

Json to_json(const Tower& tower) {
  Json levels = Json::array();
  for (int i = 1; i < tower.size(); ++i) {
    const Level* l = tower.level(i);
    Json mod = Json::array();
    for (Coeff c : l->modulus) mod.push_back(static_cast<std::uint64_t>(c));
    levels.push_back({{"index", l->index}, {"degree", l->degree}, {"dim", l->dim}, {"modulus", mod}});
  }
  return {{"p", tower.p()}, {"e", tower.e()}, {"budget_bits", tower.budget_bits()}, {"levels", levels}};
}

std::shared_ptr<Tower> tower_from_json(const Json& j) {
  try {
    auto tower = Tower::create(j.at("p").get<std::uint32_t>(), j.at("e").get<int>(), j.at("budget_bits").get<int>());
    const Json& levels = j.at("levels");
    for (std::size_t i = static_cast<std::size_t>(tower->size()) - 1; i < levels.size(); ++i) {
      const Json& l = levels[i];
      const Level* top = tower->top();
      const int degree = l.at("degree").get<int>();
      const Json& mod = l.at("modulus");
      require(static_cast<int>(mod.size()) == degree * top->dim, ErrorCode::kStoreCorrupt, "modulus has wrong length");
      std::vector<FieldElem> monic;
      for (int d = 0; d < degree; ++d) {
        std::vector<int> coords;
        for (int c = 0; c < top->dim; ++c) coords.push_back(mod[d * top->dim + c].get<int>());
        monic.push_back(tower->from_coords(coords, top));
      }
      monic.push_back(tower->one());
      tower->extend_with(monic);
    }
    require(to_json(*tower) == j, ErrorCode::kStoreCorrupt, "tower does not reproduce its record");
    return tower;
  } catch (const Json::exception& e) {
    fail(ErrorCode::kStoreCorrupt, std::string("malformed tower record: ") + e.what());
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kStoreCorrupt) throw;
    fail(ErrorCode::kStoreCorrupt, std::string("tower record rejected: ") + e.what());
  }
}

Json to_json(const TateSystem& t) {
  Json chains = Json::array();
  for (const auto& per_xi : t.points) {
    Json a = Json::array();
    for (const auto& per_c : per_xi) {
      Json b = Json::array();
      for (const Point& p : per_c) b.push_back(to_json(p));
      a.push_back(b);
    }
    chains.push_back(a);
  }
  return {{"n", t.n()},
          {"f", t.f()},
          {"k", t.module.k()},
          {"requested_depth", t.requested_depth},
          {"depth", t.depth},
          {"policy", t.policy == PickPolicy::kLexLeast ? "lex_least" : "lex_greatest"},
          {"chains", chains}};
}

Json to_json(const Uniformizer& u) {
  Json series = Json::array();
  for (const SeriesVec& v : u.series) series.push_back(to_json(v));
  return {{"n", u.n}, {"k", u.k}, {"f", u.f}, {"prec", u.prec}, {"pivot", u.pivot}, {"series", series}};
}

Json to_json(const Lattice& l) {
  Json rows = Json::array();
  for (const KVec& r : l.echelon().rows) {
    Json row = Json::array();
    for (const FieldElem& a : r) row.push_back(to_json(a));
    rows.push_back(row);
  }
  return {{"n", l.n()}, {"window", {l.lo(), l.hi()}}, {"rows", rows}, {"provenance", l.provenance()}};
}

Json to_json(const LineComparison& c) {
  return {{"proportional", c.proportional}, {"scalar", c.proportional ? to_json(c.scalar) : Json()},
          {"checked_to", c.checked_to}};
}

Json to_json(const UnitRatio& r) {
  return {{"ratio", r.consistent ? to_json(r.ratio) : Json()},
          {"consistent", r.consistent},
          {"constant", r.constant},
          {"over_fq", r.over_fq}};
}

Json to_json(const MooreResult& m) {
  Json cof = Json::array();
  for (const FieldElem& c : m.cofactors) cof.push_back(to_json(c));
  return {{"raw", to_json(m.raw)}, {"cofactors", cof}, {"normalized", to_json(m.normalized)}};
}

Json to_json(const BakerResult& b) {
  return {{"psi", to_json(b.psi)},         {"s_g", to_json(b.s_g)},
          {"smith_exponents", b.smith_exponents}, {"l", b.l},
          {"m", b.m},                       {"routes_agree", b.routes_agree},
          {"in_lattice", b.in_lattice},     {"a0_units", b.a0_units}};
}

Json to_json(const EllipticReport& r) {
  return {{"k", r.k},
          {"guard", r.guard},
          {"flag_window", {r.flag_lo, r.flag_hi}},
          {"u_stable", r.u_stable},
          {"flag_contained", r.flag_contained},
          {"flag_spans", r.flag_spans},
          {"coranks", r.coranks},
          {"expected_coranks", r.expected_coranks},
          {"flag_coranks", r.flag_coranks},
          {"h0", r.h0},
          {"h1", r.h1},
          {"vanishing", r.vanishing},
          {"passes", r.passes()}};
}

Json to_json(const StabilizerReport& r) {
  Json basis = Json::array();
  for (const auto& v : r.basis) {
    Json row = Json::array();
    for (const FieldElem& a : v) row.push_back(to_json(a));
    basis.push_back(row);
  }
  return {{"exponents", {-r.a, r.b}},
          {"basis", basis},
          {"contains_one", r.contains_one},
          {"contains_u", r.contains_u},
          {"closed", r.closed},
          {"polynomial_in_u", r.polynomial_in_u}};
}

Json to_json(const ScatteringReport& r) {
  return {{"n", r.n},
          {"d", to_json(r.d)},
          {"derived", to_json(r.derived)},
          {"derived_constant", r.derived_constant},
          {"derived_g", r.derived_constant ? to_json(r.derived_g) : Json()},
          {"expected_g", to_json(r.expected_g)},
          {"rebuilt", r.derived_constant ? to_json(r.rebuilt) : Json()},
          {"ratio", to_json(r.ratio)},
          {"wedge_dim", r.wedge_dim},
          {"translate_dim", r.translate_dim},
          {"spans_agree", r.spans_agree}};
}

std::string canonical_dump(const Json& j) { return j.dump() + "\n"; }

void write_atomic(const std::string& path, const std::string& contents) {
  const fs::path target(path);
  const fs::path dir = target.has_parent_path() ? target.parent_path() : fs::path(".");
  std::error_code ec;
  fs::create_directories(dir, ec);
  require(!ec, ErrorCode::kIoError, "cannot create " + dir.string() + ": " + ec.message());
  fs::path tmp = dir / ("." + target.filename().string() + "." + std::to_string(::getpid()) + ".tmp");
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    require(static_cast<bool>(out), ErrorCode::kIoError, "cannot write " + tmp.string());
    out << contents;
    out.flush();
    require(static_cast<bool>(out), ErrorCode::kIoError, "short write to " + tmp.string());
  }
  fs::rename(tmp, target, ec);
  require(!ec, ErrorCode::kIoError, "cannot rename onto " + target.string() + ": " + ec.message());
}

}  // namespace unisheaf
