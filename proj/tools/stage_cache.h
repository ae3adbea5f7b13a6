// Copyright 2026 The age-lens Authors.
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

#ifndef AGELENS_TOOLS_STAGE_CACHE_H_
#define AGELENS_TOOLS_STAGE_CACHE_H_

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "agelens/io.h"

namespace agelens::tools {

// FNV-1a over a stream of labelled parts. Each stage hashes its effective
// parameters plus the bytes of every input file; the digest is stored next to
// each output as "<output>.stamp". A rerun whose digest matches every stamp
// is skipped.
class StageKey {
 public:
  explicit StageKey(std::string_view stage) { Add("stage", stage); }

  StageKey& Add(std::string_view name, std::string_view value) {
    Mix(name);
    Mix("=");
    Mix(value);
    Mix("\n");
    return *this;
  }
  StageKey& Add(std::string_view name, const std::string& value) {
    return Add(name, std::string_view(value));
  }
  StageKey& Add(std::string_view name, const char* value) {
    return Add(name, std::string_view(value));
  }
  template <typename T>
  StageKey& Add(std::string_view name, const T& value) {
    return Add(name, std::string_view(std::to_string(value)));
  }
  StageKey& AddFile(std::string_view name, const std::string& path) {
    if (path.empty() || path == "builtin") return Add(name, path);
    return Add(name, std::string_view(ReadFile(path)));
  }

  std::string Hex() const {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash_));
    return buf;
  }

 private:
  void Mix(std::string_view s) {
    // Length prefix keeps ("ab","c") and ("a","bc") apart.
    const std::uint64_t n = s.size();
    for (int i = 0; i < 8; ++i) Byte(static_cast<unsigned char>(n >> (8 * i)));
    for (char c : s) Byte(static_cast<unsigned char>(c));
  }
  void Byte(unsigned char b) {
    hash_ ^= b;
    hash_ *= 0x100000001b3ULL;
  }

  std::uint64_t hash_ = 0xcbf29ce484222325ULL;
};

inline std::string StampPath(const std::string& output) { return output + ".stamp"; }

// True when every output exists and carries a stamp equal to `key`.
inline bool UpToDate(const std::vector<std::string>& outputs, const StageKey& key) {
  if (outputs.empty()) return false;
  for (const auto& out : outputs) {
    if (!std::filesystem::exists(out) || !std::filesystem::exists(StampPath(out))) return false;
    if (ReadFile(StampPath(out)) != key.Hex() + "\n") return false;
  }
  return true;
}

inline void WriteStamps(const std::vector<std::string>& outputs, const StageKey& key) {
  for (const auto& out : outputs) WriteFile(StampPath(out), key.Hex() + "\n");
}

}  // namespace agelens::tools

#endif  // AGELENS_TOOLS_STAGE_CACHE_H_
