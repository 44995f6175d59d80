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

// Content-addressed store of JSON artifacts.
//
// An entry lives in <dir>/<key>.json with key = SHA-256 of the canonical job
// description and the canonical-root policy version. The entry records the
// SHA-256 of its payload, checked on every read.

#ifndef UNISHEAF_STORE_HPP_
#define UNISHEAF_STORE_HPP_

#include <optional>
#include <string>
#include <vector>

#include "unisheaf/io.hpp"

namespace unisheaf {

// Bumped whenever a canonical choice (root order, basis order) changes.
inline constexpr int kPolicyVersion = 1;

inline constexpr const char* kStoreEnv = "UNISHEAF_STORE";

std::string sha256_hex(const std::string& data);

class Store {
 public:
  explicit Store(std::string dir);
  // The directory named by UNISHEAF_STORE, if set and nonempty.
  static std::optional<Store> from_env();

  const std::string& dir() const { return dir_; }

  static std::string key(const Json& job, int policy_version = kPolicyVersion);
  std::string path(const std::string& key) const;

  // Throws StoreCorrupt when the entry is unreadable or fails its checks.
  std::optional<Json> get(const std::string& key) const;
  void put(const std::string& key, const Json& job, const Json& payload) const;
  bool erase(const std::string& key) const;

  std::vector<std::string> keys() const;

 private:
  std::string dir_;
};

}  // namespace unisheaf

#endif  // UNISHEAF_STORE_HPP_
