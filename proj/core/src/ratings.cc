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

#include "agelens/ratings.h"

#include <algorithm>
#include <map>
#include <utility>

namespace agelens {

std::vector<Rating> RatingsFromReviews(std::span<const ReviewRecord> reviews) {
  std::vector<Rating> out;
  out.reserve(reviews.size());
  for (const auto& r : reviews) out.push_back({r.user_id, r.item_id, r.rating, r.date});
  return out;
}

namespace {

using LatestMap = std::map<std::pair<std::string, std::string>, const Rating*>;

LatestMap LatestPerPair(std::span<const Rating> ratings) {
  LatestMap latest;
  for (const auto& r : ratings) {
    auto [it, inserted] = latest.try_emplace({r.user_id, r.item_id}, &r);
    if (inserted) continue;
    const Rating& cur = *it->second;
    if (r.date > cur.date || (r.date == cur.date && r.rating > cur.rating)) it->second = &r;
  }
  return latest;
}

}  // namespace

std::vector<Rating> DeduplicateRatings(std::span<const Rating> ratings) {
  std::vector<Rating> out;
  for (const auto& [key, r] : LatestPerPair(ratings)) out.push_back(*r);
  return out;
}

RatingMatrix::RatingMatrix(std::span<const Rating> ratings) {
  const LatestMap latest = LatestPerPair(ratings);

  for (const auto& [key, r] : latest) {
    if (user_index_.emplace(key.first, 0).second) user_ids_.push_back(key.first);
    if (item_index_.emplace(key.second, 0).second) item_ids_.push_back(key.second);
  }
  std::sort(user_ids_.begin(), user_ids_.end());
  std::sort(item_ids_.begin(), item_ids_.end());
  for (std::size_t u = 0; u < user_ids_.size(); ++u) user_index_[user_ids_[u]] = u;
  for (std::size_t i = 0; i < item_ids_.size(); ++i) item_index_[item_ids_[i]] = i;

  rows_.resize(user_ids_.size());
  cols_.resize(item_ids_.size());
  // `latest` iterates in (user, item) order, so rows come out sorted by item
  // and columns sorted by user.
  for (const auto& [key, r] : latest) {
    const std::size_t u = user_index_.at(key.first);
    const std::size_t i = item_index_.at(key.second);
    rows_[u].push_back({i, static_cast<double>(r->rating), r->date});
    cols_[i].push_back({u, static_cast<double>(r->rating), r->date});
  }
  user_means_.resize(user_ids_.size(), 0.0);
  for (std::size_t u = 0; u < rows_.size(); ++u) {
    double sum = 0.0;
    for (const auto& e : rows_[u]) sum += e.rating;
    if (!rows_[u].empty()) user_means_[u] = sum / static_cast<double>(rows_[u].size());
  }
  nnz_ = latest.size();
}

std::optional<std::size_t> RatingMatrix::UserIndex(const std::string& id) const {
  if (auto it = user_index_.find(id); it != user_index_.end()) return it->second;
  return std::nullopt;
}

std::optional<std::size_t> RatingMatrix::ItemIndex(const std::string& id) const {
  if (auto it = item_index_.find(id); it != item_index_.end()) return it->second;
  return std::nullopt;
}

std::optional<double> RatingMatrix::Get(std::size_t u, std::size_t i) const {
  const auto& row = rows_[u];
  auto it = std::lower_bound(row.begin(), row.end(), i,
                             [](const Entry& e, std::size_t idx) { return e.index < idx; });
  if (it == row.end() || it->index != i) return std::nullopt;
  return it->rating;
}

}  // namespace agelens
