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

#include "agelens/split.h"

#include <algorithm>
#include <cmath>

#include "agelens/error.h"

namespace agelens {

std::set<std::pair<std::string, std::string>> TemporalSplit::TrainPairs() const {
  std::set<std::pair<std::string, std::string>> out;
  for (const auto& r : train) out.emplace(r.user_id, r.item_id);
  return out;
}

TemporalSplit SplitTemporal(std::span<const Rating> ratings, double train_fraction) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    throw ConfigError("train_fraction must be in (0, 1)");
  }
  TemporalSplit split;
  split.train_fraction = train_fraction;

  std::map<std::string, std::vector<Rating>> by_user;
  for (auto& r : DeduplicateRatings(ratings)) by_user[r.user_id].push_back(std::move(r));

  for (auto& [user, rs] : by_user) {
    std::sort(rs.begin(), rs.end(), [](const Rating& a, const Rating& b) {
      if (a.date != b.date) return a.date < b.date;
      return a.item_id < b.item_id;
    });
    std::size_t n_train = rs.size();
    if (rs.size() >= 2) {
      // The small epsilon keeps products like 0.8 * 15 from rounding up to
      // the next integer.
      const double want = train_fraction * static_cast<double>(rs.size());
      n_train = static_cast<std::size_t>(std::ceil(want - 1e-9));
      n_train = std::min(n_train, rs.size());
    }
    for (std::size_t i = 0; i < rs.size(); ++i) {
      (i < n_train ? split.train : split.test).push_back(rs[i]);
    }
    if (n_train < rs.size()) split.cut[user] = rs[n_train].date;
  }
  return split;
}

}  // namespace agelens
