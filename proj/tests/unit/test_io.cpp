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

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "gtest/gtest.h"
#include "unisheaf/jobs.hpp"
#include "unisheaf/store.hpp"
#include "unisheaf/verify.hpp"

namespace unisheaf {
namespace {

namespace fs = std::filesystem;

template <class F>
std::optional<ErrorCode> code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return std::nullopt;
}

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() / ("unisheaf_io_" + std::to_string(std::random_device{}()));
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  std::string str() const { return path_.string(); }
  fs::path path() const { return path_; }

 private:
  fs::path path_;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

TEST(Sha256, KnownDigests) {
  EXPECT_EQ(sha256_hex(""), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(TowerJson, RoundTripReproducesLevels) {
  auto tw = Tower::create(3, 1);
  DModule m = DModule::drinfeld(tw, tw->one(), {tw->one(), tw->one()});
  torsion_basis(m, XPoint::rational(tw->zero()), 2);
  ASSERT_GE(tw->size(), 2);
  const Json j = to_json(*tw);
  auto back = tower_from_json(j);
  EXPECT_EQ(to_json(*back), j);
  std::vector<int> coords(tw->top()->dim, 0);
  coords[1] = 1;
  coords[0] = 2;
  const FieldElem a = tw->from_coords(coords, tw->top());
  EXPECT_EQ(to_json(field_from_json(*back, to_json(a))), to_json(a));
}

TEST(TowerJson, TamperedModulusIsRejected) {
  auto tw = Tower::create(2, 1);
  DModule m = DModule::carlitz(tw, tw->one());
  torsion_basis(m, XPoint::rational(tw->zero()), 3);
  Json j = to_json(*tw);
  Json& mod = j["levels"].back()["modulus"];
  mod[0] = 1 - mod[0].get<int>();
  EXPECT_EQ(code_of([&] { tower_from_json(j); }), ErrorCode::kStoreCorrupt);
  EXPECT_EQ(code_of([&] { tower_from_json(Json{{"p", 2}}); }), ErrorCode::kStoreCorrupt);
}

TEST(FieldJson, RejectsBadCoordinates) {
  auto tw = Tower::create(3, 1);
  EXPECT_EQ(code_of([&] { field_from_json(*tw, Json::array({3})); }), ErrorCode::kInvalidArgument);
  EXPECT_EQ(code_of([&] { field_from_json(*tw, Json::array({1, 1, 1, 1, 1})); }), ErrorCode::kLevelError);
}

TEST(WriteAtomic, ReplacesContentsAndLeavesNoTemporaries) {
  TempDir d;
  const std::string path = (d.path() / "sub" / "a.json").string();
  write_atomic(path, "one\n");
  write_atomic(path, "two\n");
  EXPECT_EQ(slurp(path), "two\n");
  int files = 0;
  for (const auto& e : fs::directory_iterator(d.path() / "sub")) files += e.is_regular_file() ? 1 : 0;
  EXPECT_EQ(files, 1);
}

TEST(Store, PutGetAndCorruption) {
  TempDir d;
  Store s(d.str());
  const Json job = {{"command", "torsion"}, {"q", 2}};
  const std::string key = Store::key(job);
  EXPECT_NE(key, Store::key(job, kPolicyVersion + 1));
  EXPECT_FALSE(s.get(key).has_value());
  const Json payload = {{"result", {1, 2, 3}}};
  s.put(key, job, payload);
  ASSERT_TRUE(s.get(key).has_value());
  EXPECT_EQ(*s.get(key), payload);
  EXPECT_EQ(s.keys(), std::vector<std::string>{key});

  std::string text = slurp(s.path(key));
  const auto pos = text.find("[1,2,3]");
  ASSERT_NE(pos, std::string::npos);
  text.replace(pos, 7, "[1,2,4]");
  std::ofstream(s.path(key), std::ios::trunc) << text;
  EXPECT_EQ(code_of([&] { s.get(key); }), ErrorCode::kStoreCorrupt);

  std::ofstream(s.path(key), std::ios::trunc) << "{not json";
  EXPECT_EQ(code_of([&] { s.get(key); }), ErrorCode::kStoreCorrupt);
  EXPECT_TRUE(s.erase(key));
  EXPECT_TRUE(s.keys().empty());
}

TEST(Store, EntryUnderWrongKeyIsCorrupt) {
  TempDir d;
  Store s(d.str());
  const Json job = {{"command", "torsion"}, {"q", 3}};
  const std::string key = Store::key(job);
  s.put(key, job, Json::object());
  const std::string other = Store::key({{"command", "torsion"}, {"q", 5}});
  fs::copy_file(s.path(key), s.path(other));
  EXPECT_EQ(code_of([&] { s.get(other); }), ErrorCode::kStoreCorrupt);
}

TEST(Jobs, SplitPrimePower) {
  EXPECT_EQ(split_prime_power(2), (std::pair<std::uint32_t, int>{2, 1}));
  EXPECT_EQ(split_prime_power(9), (std::pair<std::uint32_t, int>{3, 2}));
  EXPECT_EQ(split_prime_power(49), (std::pair<std::uint32_t, int>{7, 2}));
  EXPECT_EQ(code_of([] { split_prime_power(12); }), ErrorCode::kInvalidArgument);
  EXPECT_EQ(code_of([] { split_prime_power(1); }), ErrorCode::kInvalidArgument);
}

TEST(Jobs, ParseCoords) {
  EXPECT_EQ(parse_coords("1"), FqCoords{1});
  EXPECT_EQ(parse_coords("0,1,2"), (FqCoords{0, 1, 2}));
  EXPECT_EQ(code_of([] { parse_coords("1,a"); }), ErrorCode::kInvalidArgument);
  EXPECT_EQ(code_of([] { parse_coords(""); }), ErrorCode::kInvalidArgument);
}

TEST(Jobs, JsonRoundTrip) {
  JobSpec job;
  job.command = "baker";
  job.q = 4;
  job.theta = {0, 1};
  job.g = {{1}, {0, 1}};
  job.prec = 9;
  job.window_n = 4;
  job.window_m = 5;
  job.exponents = {1, -1};
  job.seed = 77;
  const Json j = to_json(job);
  EXPECT_EQ(to_json(job_from_json(j)), j);
  EXPECT_EQ(code_of([] { job_from_json(Json{{"prec", "six"}}); }), ErrorCode::kInvalidArgument);
}

TEST(Jobs, RandomUnitMatrixIsInvertible) {
  auto tw = Tower::create(2, 1);
  std::mt19937_64 rng(5);
  for (int i = 0; i < 10; ++i) {
    const SeriesMat g = random_unit_matrix(2, *tw, 12, rng);
    EXPECT_FALSE(g.det().coeff(0).is_zero());
  }
}

TEST(Jobs, RunJobIsDeterministic) {
  JobSpec job;
  job.command = "uniformizer";
  job.q = 3;
  job.theta = {2};
  const std::string a = canonical_dump(run_job(job));
  const std::string b = canonical_dump(run_job(job));
  EXPECT_EQ(a, b);
  job.command = "nonsense";
  EXPECT_EQ(code_of([&] { run_job(job); }), ErrorCode::kInvalidArgument);
}

TEST(Jobs, TorsionCacheStatuses) {
  TempDir d;
  Store s(d.str());
  JobSpec job;
  job.command = "torsion";
  job.r = 2;
  std::string status;
  const std::string first = canonical_dump(run_job(job, &s, &status));
  EXPECT_EQ(status, "miss");
  EXPECT_EQ(canonical_dump(run_job(job, &s, &status)), first);
  EXPECT_EQ(status, "hit");
  EXPECT_EQ(canonical_dump(run_job(job, nullptr, &status)), first);
  EXPECT_EQ(status, "off");
}

// A consistent entry whose chains are not torsion passes the hash checks but
// not the recomputation of the chain relations.
TEST(Jobs, ResealedBogusTorsionIsRecomputed) {
  TempDir d;
  Store s(d.str());
  JobSpec job;
  job.command = "torsion";
  job.r = 2;
  const Json good = run_job(job, &s);
  const std::string key = Store::key(to_json(job));
  Json bad = good;
  Json& basis = bad["result"]["torsion"]["basis"];
  ASSERT_FALSE(basis.empty());
  basis[0][0] = Json::array({1});
  s.put(key, to_json(job), bad);
  std::string status;
  EXPECT_EQ(run_job(job, &s, &status), good);
  EXPECT_EQ(status, "recomputed");
  EXPECT_EQ(*s.get(key), good);
}

TEST(Verify, CatalogAndSelection) {
  ASSERT_EQ(suite_catalog().size(), 10u);
  EXPECT_EQ(suite_catalog().front().id, "C1");
  EXPECT_EQ(suite_catalog().back().name, "determinism");
  EXPECT_EQ(code_of([] { run_suite("nope"); }), ErrorCode::kInvalidArgument);
  const std::vector<SuiteResult> r = run_suites({"C5"});
  ASSERT_EQ(r.size(), 1u);
  EXPECT_EQ(r[0].name, "basis");
  EXPECT_TRUE(r[0].passed());
}

TEST(Verify, ReportDependsOnlyOnSeed) {
  const Json a = verify_report(run_suites({"baker"}, 3), 3);
  const Json b = verify_report(run_suites({"baker"}, 3), 3);
  const Json c = verify_report(run_suites({"baker"}, 4), 4);
  EXPECT_EQ(canonical_dump(a), canonical_dump(b));
  EXPECT_NE(canonical_dump(a), canonical_dump(c));
  EXPECT_TRUE(a["passed"].get<bool>());
}

}  // namespace
}  // namespace unisheaf
