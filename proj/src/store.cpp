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

#include "unisheaf/store.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace unisheaf {

namespace fs = std::filesystem;

std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  require(EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) == 1, ErrorCode::kIoError,
          "SHA-256 failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(hex[md[i] >> 4]);
    out.push_back(hex[md[i] & 15]);
  }
  return out;
}

Store::Store(std::string dir) : dir_(std::move(dir)) {
  require(!dir_.empty(), ErrorCode::kInvalidArgument, "store directory is empty");
}

std::optional<Store> Store::from_env() {
  const char* v = std::getenv(kStoreEnv);
  if (v == nullptr || *v == '\0') return std::nullopt;
  return Store(v);
}

std::string Store::key(const Json& job, int policy_version) {
  return sha256_hex(canonical_dump({{"job", job}, {"policy_version", policy_version}}));
}

std::string Store::path(const std::string& key) const { return (fs::path(dir_) / (key + ".json")).string(); }

std::optional<Json> Store::get(const std::string& key) const {
  const std::string p = path(key);
  std::error_code ec;
  if (!fs::exists(p, ec)) return std::nullopt;
  std::ifstream in(p, std::ios::binary);
  require(static_cast<bool>(in), ErrorCode::kIoError, "cannot read " + p);
  std::stringstream buf;
  buf << in.rdbuf();
  Json entry;
  try {
    entry = Json::parse(buf.str());
  } catch (const Json::exception& e) {
    fail(ErrorCode::kStoreCorrupt, "entry " + key + " is not JSON: " + e.what());
  }
  require(entry.is_object() && entry.contains("payload") && entry.contains("sha256") && entry.contains("key"),
          ErrorCode::kStoreCorrupt, "entry " + key + " lacks required fields");
  require(entry["key"] == key, ErrorCode::kStoreCorrupt, "entry " + key + " is filed under the wrong key");
  require(entry["sha256"] == sha256_hex(canonical_dump(entry["payload"])), ErrorCode::kStoreCorrupt,
          "entry " + key + " fails its payload hash");
  if (entry.contains("job")) {
    require(Store::key(entry["job"], entry.value("policy_version", -1)) == key, ErrorCode::kStoreCorrupt,
            "entry " + key + " does not hash to its key");
  }
  return entry["payload"];
}

void Store::put(const std::string& key, const Json& job, const Json& payload) const {
  Json entry = {{"key", key},
                {"job", job},
                {"policy_version", kPolicyVersion},
                {"sha256", sha256_hex(canonical_dump(payload))},
                {"payload", payload}};
  write_atomic(path(key), canonical_dump(entry));
}

bool Store::erase(const std::string& key) const {
  std::error_code ec;
  return fs::remove(path(key), ec);
}

std::vector<std::string> Store::keys() const {
  std::vector<std::string> out;
  std::error_code ec;
  if (!fs::is_directory(dir_, ec)) return out;
  for (const auto& e : fs::directory_iterator(dir_, ec)) {
    const fs::path p = e.path();
    if (p.extension() == ".json" && p.filename().string()[0] != '.') out.push_back(p.stem().string());
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace unisheaf
