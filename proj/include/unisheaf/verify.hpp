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

// The verification harness. Each suite checks one group of properties on
// fixed modules and seeded random inputs, and reports every check with the
// data it was decided on. Reports contain no timings, so identical seeds give
// byte-identical reports.

#ifndef UNISHEAF_VERIFY_HPP_
#define UNISHEAF_VERIFY_HPP_

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "unisheaf/io.hpp"

namespace unisheaf {

inline constexpr std::uint64_t kDefaultSeed = 20260101;

struct Check {
  std::string name;
  bool passed = false;
  Json detail;
};

struct SuiteResult {
  std::string id;
  std::string name;
  std::string title;
  std::vector<Check> checks;

  bool passed() const;
};

struct SuiteInfo {
  std::string id;
  std::string name;
  std::string title;
};

// In report order. The determinism suite reruns the others.
const std::vector<SuiteInfo>& suite_catalog();

// Accepts names or ids. Throws InvalidArgument on unknown suites.
SuiteResult run_suite(const std::string& name, std::uint64_t seed = kDefaultSeed);

// Runs the selected suites (all when empty) in catalog order. on_done, when
// set, is called after each suite with its wall time in milliseconds.
std::vector<SuiteResult> run_suites(const std::vector<std::string>& selection, std::uint64_t seed = kDefaultSeed,
                                    const std::function<void(const SuiteResult&, double)>& on_done = {});

Json to_json(const SuiteResult& s);
Json verify_report(const std::vector<SuiteResult>& suites, std::uint64_t seed);

}  // namespace unisheaf

#endif  // UNISHEAF_VERIFY_HPP_
