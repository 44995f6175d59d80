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

// unisheaf: command line driver. Artifacts go to stdout or --out as JSON;
// cache status and timings go to stderr.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "unisheaf/jobs.hpp"
#include "unisheaf/store.hpp"
#include "unisheaf/verify.hpp"

namespace {

using unisheaf::ErrorCode;
using unisheaf::Json;

constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;

struct JobFlags {
  std::string theta = "1";
  std::vector<std::string> g;
  std::string xi = "0";
  std::vector<std::string> place;
  std::string window = "3,3";
  std::string exponents;
};

struct Common {
  std::string out;
  std::string format = "json";
  std::string store;
  bool no_cache = false;
};

std::string exit_code_footer() {
  std::string s = "Exit codes:\n  0   success\n  1   verify: at least one check failed\n  2   usage error\n";
  for (int c = static_cast<int>(ErrorCode::kInvalidArgument); c <= static_cast<int>(ErrorCode::kIoError); ++c) {
    s += "  " + std::to_string(c) + "  " + unisheaf::error_name(static_cast<ErrorCode>(c)) + "\n";
  }
  s += "\nEnvironment:\n  " + std::string(unisheaf::kStoreEnv) + "  artifact store directory (overridden by --store)\n";
  return s;
}

void add_job_options(CLI::App* cmd, unisheaf::JobSpec& job, JobFlags& f) {
  cmd->add_option("--q", job.q, "field size q = p^e")->capture_default_str();
  cmd->add_option("--theta", f.theta, "characteristic theta in F_q, as F_p coordinates a0,a1,..")->capture_default_str();
  cmd->add_option("--g", f.g, "coefficient g_i of sigma^i, repeated for i = 1..n (none: Carlitz)");
  cmd->add_option("--xi", f.xi, "rational place t - xi")->capture_default_str();
  cmd->add_option("--place", f.place, "monic irreducible place, one coefficient per flag, constant first");
  cmd->add_option("--prec", job.prec, "series precision")->capture_default_str();
  cmd->add_option("--r", job.r, "torsion level")->capture_default_str();
  cmd->add_option("--depth", job.depth, "chain depth (-1: prec - 1)")->capture_default_str();
  cmd->add_option("--window", f.window, "lattice window N,M for [-N, M)")->capture_default_str();
  cmd->add_option("--budget", job.budget, "tower size budget in bits")->capture_default_str();
  cmd->add_option("--policy", job.policy, "root choice")
      ->check(CLI::IsMember({"lex_least", "lex_greatest"}))
      ->capture_default_str();
  cmd->add_option("--seed", job.seed, "seed for random inputs")->capture_default_str();
  cmd->add_option("--exponents", f.exponents, "diagonal exponents of the Baker input, comma separated");
  cmd->add_option("--variant", job.variant, "lattice variant")
      ->check(CLI::IsMember({"module", "trivial", "shifted"}))
      ->capture_default_str();
  cmd->add_option("--k", job.k, "flag step k")->capture_default_str();
  cmd->add_option("--a", job.a, "stabilizer range: lowest exponent -a")->capture_default_str();
  cmd->add_option("--b", job.b, "stabilizer range: highest exponent b")->capture_default_str();
}

void add_common(CLI::App* cmd, Common& c, bool cache) {
  cmd->add_option("--out", c.out, "write the artifact here instead of stdout");
  cmd->add_option("--format", c.format, "output format")->check(CLI::IsMember({"json"}))->capture_default_str();
  if (cache) {
    cmd->add_option("--store", c.store, "artifact store directory");
    cmd->add_flag("--no-cache", c.no_cache, "bypass the artifact store");
  }
}

void finish_job(unisheaf::JobSpec& job, const JobFlags& f) {
  job.theta = unisheaf::parse_coords(f.theta);
  job.g.clear();
  for (const std::string& s : f.g) job.g.push_back(unisheaf::parse_coords(s));
  job.xi = unisheaf::parse_coords(f.xi);
  job.place.clear();
  for (const std::string& s : f.place) job.place.push_back(unisheaf::parse_coords(s));
  const unisheaf::FqCoords w = unisheaf::parse_coords(f.window);
  unisheaf::require(w.size() == 2, ErrorCode::kInvalidArgument, "--window takes N,M");
  job.window_n = w[0];
  job.window_m = w[1];
  job.exponents.clear();
  if (!f.exponents.empty()) job.exponents = unisheaf::parse_coords(f.exponents);
}

std::optional<unisheaf::Store> open_store(const Common& c) {
  if (c.no_cache) return std::nullopt;
  if (!c.store.empty()) return unisheaf::Store(c.store);
  return unisheaf::Store::from_env();
}

void emit(const Common& c, const Json& j) {
  const std::string text = unisheaf::canonical_dump(j);
  if (c.out.empty()) {
    std::cout << text;
    std::cout.flush();
    unisheaf::require(static_cast<bool>(std::cout), ErrorCode::kIoError, "cannot write to stdout");
  } else {
    unisheaf::write_atomic(c.out, text);
  }
}

void status(const Json& j) { std::cerr << j.dump() << "\n"; }

double ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

int run_cache(const std::string& action, const std::vector<std::string>& args, const Common& c,
              const unisheaf::JobSpec& job, int policy_version) {
  if (action == "key") {
    emit(c, {{"key", unisheaf::Store::key(unisheaf::to_json(job), policy_version)},
             {"policy_version", policy_version}});
    return 0;
  }
  const std::optional<unisheaf::Store> store = open_store(c);
  unisheaf::require(store.has_value(), ErrorCode::kInvalidArgument,
                    "no store: pass --store or set " + std::string(unisheaf::kStoreEnv));
  if (action == "path") {
    emit(c, {{"store", store->dir()}});
  } else if (action == "list") {
    emit(c, {{"store", store->dir()}, {"keys", store->keys()}});
  } else if (action == "verify") {
    Json bad = Json::array();
    const std::vector<std::string> keys = store->keys();
    for (const std::string& k : keys) {
      try {
        store->get(k);
      } catch (const unisheaf::Error& e) {
        if (e.code() != ErrorCode::kStoreCorrupt) throw;
        bad.push_back({{"key", k}, {"message", e.what()}});
      }
    }
    emit(c, {{"store", store->dir()}, {"entries", keys.size()}, {"corrupt", bad}});
    if (!bad.empty()) return static_cast<int>(ErrorCode::kStoreCorrupt);
  } else if (action == "get") {
    unisheaf::require(args.size() == 1, ErrorCode::kInvalidArgument, "cache get takes one key");
    const std::optional<Json> j = store->get(args[0]);
    unisheaf::require(j.has_value(), ErrorCode::kInvalidArgument, "no entry " + args[0]);
    emit(c, *j);
  } else if (action == "clear") {
    int removed = 0;
    for (const std::string& k : store->keys()) removed += store->erase(k) ? 1 : 0;
    emit(c, {{"store", store->dir()}, {"removed", removed}});
  } else {
    unisheaf::fail(ErrorCode::kInvalidArgument, "unknown cache action " + action);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"unisheaf: torsion, uniformizers and lattice windows for Drinfeld modules over F_q[t]", "unisheaf"};
  app.require_subcommand(1);
  app.footer(exit_code_footer());

  unisheaf::JobSpec job;
  JobFlags flags;
  Common common;

  std::vector<std::pair<std::string, CLI::App*>> job_cmds;
  const std::vector<std::pair<std::string, std::string>> descriptions = {
      {"uniformizer", "uniformizer series with its cross-validation against the rank one construction"},
      {"torsion", "F_q-basis of the t_x^r-torsion and the division chains, cached in the store"},
      {"baker", "Baker function of a seeded g = unit * diag(t^exponents)"},
      {"scattering", "determinant of (s, sigma^* s, ..) and its rank one module"},
      {"lattice-check", "elliptic conditions on a lattice window"},
      {"stabilizer", "multipliers of a lattice window"},
  };
  for (const auto& [name, desc] : descriptions) {
    CLI::App* cmd = app.add_subcommand(name, desc);
    add_job_options(cmd, job, flags);
    add_common(cmd, common, name == "torsion");
    job_cmds.emplace_back(name, cmd);
  }

  std::vector<std::string> suites;
  std::uint64_t verify_seed = unisheaf::kDefaultSeed;
  CLI::App* verify = app.add_subcommand("verify", "run the verification suites");
  std::vector<std::string> suite_names;
  for (const unisheaf::SuiteInfo& s : unisheaf::suite_catalog()) {
    suite_names.push_back(s.name);
    suite_names.push_back(s.id);
  }
  verify->add_option("--suite", suites, "suite name or id, repeatable (default: all)")
      ->check(CLI::IsMember(suite_names));
  verify->add_option("--seed", verify_seed, "seed for random inputs")->capture_default_str();
  add_common(verify, common, false);

  std::string cache_action;
  std::vector<std::string> cache_args;
  int policy_version = unisheaf::kPolicyVersion;
  CLI::App* cache = app.add_subcommand("cache", "artifact store: key, path, list, verify, get KEY, clear");
  cache->add_option("action", cache_action, "store operation")
      ->required()
      ->check(CLI::IsMember({"key", "path", "list", "verify", "get", "clear"}));
  cache->add_option("args", cache_args, "operation arguments");
  cache->add_option("--policy-version", policy_version, "policy version for cache key")->capture_default_str();
  add_job_options(cache, job, flags);
  add_common(cache, common, true);
  cache->get_option("--no-cache")->description("unused");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  const auto t0 = std::chrono::steady_clock::now();
  try {
    if (verify->parsed()) {
      const std::vector<unisheaf::SuiteResult> results =
          unisheaf::run_suites(suites, verify_seed, [](const unisheaf::SuiteResult& r, double ms) {
            status({{"suite", r.id}, {"name", r.name}, {"passed", r.passed()}, {"elapsed_ms", ms}});
          });
      const Json report = unisheaf::verify_report(results, verify_seed);
      emit(common, report);
      status({{"passed", report["passed"]}, {"elapsed_ms", ms_since(t0)}});
      return report["passed"].get<bool>() ? 0 : kExitVerifyFailed;
    }
    finish_job(job, flags);
    if (cache->parsed()) {
      job.command = "torsion";
      return run_cache(cache_action, cache_args, common, job, policy_version);
    }
    for (const auto& [name, cmd] : job_cmds) {
      if (!cmd->parsed()) continue;
      job.command = name;
      const std::optional<unisheaf::Store> store = name == "torsion" ? open_store(common) : std::nullopt;
      std::string cache_status;
      const Json out = unisheaf::run_job(job, store ? &*store : nullptr, &cache_status);
      emit(common, out);
      Json st = {{"command", name}, {"elapsed_ms", ms_since(t0)}};
      if (name == "torsion") {
        st["cache"] = cache_status;
        if (store) st["key"] = unisheaf::Store::key(unisheaf::to_json(job));
      }
      status(st);
      return 0;
    }
  } catch (const unisheaf::Error& e) {
    status({{"error", unisheaf::error_name(e.code())}, {"exit_code", e.exit_code()}, {"message", e.what()}});
    return e.exit_code();
  } catch (const std::exception& e) {
    status({{"error", "InvalidArgument"}, {"exit_code", static_cast<int>(ErrorCode::kInvalidArgument)},
            {"message", e.what()}});
    return static_cast<int>(ErrorCode::kInvalidArgument);
  }
  return kExitUsage;
}
