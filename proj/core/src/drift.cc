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

#include "agelens/drift.h"

#include <optional>
#include <span>

namespace agelens {

namespace {

template <typename Ids>
std::optional<double> MeanAge(const Ids& items, const ItemProfileMap& profiles) {
  double sum = 0.0;
  std::size_t n = 0;
  for (const auto& id : items) {
    auto it = profiles.find(id);
    if (it == profiles.end()) continue;
    sum += 0.5 * (it->second.low_years + it->second.high_years);
    ++n;
  }
  if (n == 0) return std::nullopt;
  return sum / static_cast<double>(n);
}

struct Accumulator {
  double sum = 0.0;
  std::size_t n = 0;
};

}  // namespace

DriftResult ComputeDrift(const TemporalSplit& split, const ItemProfileMap& profiles,
                         const RecsBySource& recs) {
  std::map<std::string, std::vector<std::string>> train_items, test_items;
  for (const auto& r : split.train) train_items[r.user_id].push_back(r.item_id);
  for (const auto& r : split.test) test_items[r.user_id].push_back(r.item_id);

  RecsBySource sources = recs;
  sources["test"] = test_items;

  std::map<std::pair<std::string, std::string>, Accumulator> buckets;
  std::map<std::string, Accumulator> overall;
  // Users in cut order (map keyed by user id) so sums are order-stable.
  for (const auto& [user, cut] : split.cut) {
    auto train = train_items.find(user);
    if (train == train_items.end()) continue;
    const auto base = MeanAge(train->second, profiles);
    if (!base) continue;
    const std::string bucket = FormatMonth(cut);
    for (const auto& [source, per_user] : sources) {
      auto items = per_user.find(user);
      if (items == per_user.end()) continue;
      const auto mean = MeanAge(items->second, profiles);
      if (!mean) continue;
      const double delta = *mean - *base;
      auto& b = buckets[{bucket, source}];
      b.sum += delta;
      ++b.n;
      auto& o = overall[source];
      o.sum += delta;
      ++o.n;
    }
  }

  DriftResult out;
  for (const auto& [key, acc] : buckets) {
    out.series.push_back({key.first, key.second, acc.sum / static_cast<double>(acc.n), acc.n});
  }
  for (const auto& [source, acc] : overall) {
    out.mean_delta[source] = acc.sum / static_cast<double>(acc.n);
    out.n_users[source] = acc.n;
  }
  return out;
}

}  // namespace agelens
