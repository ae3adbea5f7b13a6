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

#ifndef AGELENS_RATINGS_H_
#define AGELENS_RATINGS_H_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "agelens/corpus.h"
#include "agelens/date.h"

namespace agelens {

struct Rating {
  std::string user_id;
  std::string item_id;
  int rating = 0;
  Day date;

  friend bool operator==(const Rating&, const Rating&) = default;
};

std::vector<Rating> RatingsFromReviews(std::span<const ReviewRecord> reviews);

// One rating per (user, item): the latest, higher value on equal dates.
// Output sorted by (user, item).
std::vector<Rating> DeduplicateRatings(std::span<const Rating> ratings);

// Sparse user x item ratings. Users and items are indexed in lexicographic id
// order, so the layout does not depend on input row order. Repeated
// (user, item) pairs keep the latest rating (higher value on equal dates).
class RatingMatrix {
 public:
  struct Entry {
    std::size_t index = 0;  // item index in a row, user index in a column
    double rating = 0.0;
    Day date;
  };

  RatingMatrix() = default;
  explicit RatingMatrix(std::span<const Rating> ratings);

  std::size_t num_users() const { return user_ids_.size(); }
  std::size_t num_items() const { return item_ids_.size(); }
  std::size_t num_ratings() const { return nnz_; }

  std::optional<std::size_t> UserIndex(const std::string& id) const;
  std::optional<std::size_t> ItemIndex(const std::string& id) const;
  const std::string& UserId(std::size_t u) const { return user_ids_[u]; }
  const std::string& ItemId(std::size_t i) const { return item_ids_[i]; }

  // Sorted by item index.
  std::span<const Entry> UserRow(std::size_t u) const { return rows_[u]; }
  // Sorted by user index.
  std::span<const Entry> ItemColumn(std::size_t i) const { return cols_[i]; }

  double UserMean(std::size_t u) const { return user_means_[u]; }
  std::optional<double> Get(std::size_t u, std::size_t i) const;

 private:
  std::vector<std::string> user_ids_;
  std::vector<std::string> item_ids_;
  std::unordered_map<std::string, std::size_t> user_index_;
  std::unordered_map<std::string, std::size_t> item_index_;
  std::vector<std::vector<Entry>> rows_;
  std::vector<std::vector<Entry>> cols_;
  std::vector<double> user_means_;
  std::size_t nnz_ = 0;
};

}  // namespace agelens

#endif  // AGELENS_RATINGS_H_
