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

#ifndef AGELENS_KNN_H_
#define AGELENS_KNN_H_

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "agelens/ratings.h"
#include "agelens/recommender.h"

namespace agelens {

// Pearson correlation of two co-rated vectors. nullopt with fewer than two
// points or zero variance on either side.
std::optional<double> PearsonSimilarity(std::span<const double> u,
                                        std::span<const double> v);

// Pearson over the items both users rated.
std::optional<double> UserPearson(const RatingMatrix& m, std::size_t u, std::size_t v);

// 1 / (1 + Euclidean distance) over users who rated both items; nullopt
// without co-raters.
std::optional<double> ItemEuclideanSimilarity(const RatingMatrix& m,
                                              std::size_t i, std::size_t j);

// User-based kNN. The neighborhood is the k most similar users with positive
// Pearson similarity; scores use the mean-centered weighted average
// mean_u + sum(sim * (r_vi - mean_v)) / sum(|sim|).
class UserBasedCf final : public Recommender {
 public:
  UserBasedCf(const RatingMatrix& matrix, std::size_t k = 50);

  std::string_view name() const override { return "ub-cf"; }
  const RatingMatrix& matrix() const override { return matrix_; }
  std::vector<ScoredItem> TopN(std::size_t user, std::size_t n) const override;

  struct Neighbor {
    std::size_t user = 0;
    double similarity = 0.0;
  };
  // Sorted by descending similarity, then user index.
  std::vector<Neighbor> Neighborhood(std::size_t user) const;

 private:
  const RatingMatrix& matrix_;
  std::size_t k_;
};

// Item-based CF with Euclidean item similarity; an item's score is the
// similarity-weighted average of the user's own ratings on items that share
// raters with it.
class ItemBasedCf final : public Recommender {
 public:
  explicit ItemBasedCf(const RatingMatrix& matrix) : matrix_(matrix) {}

  std::string_view name() const override { return "ib-cf"; }
  const RatingMatrix& matrix() const override { return matrix_; }
  std::vector<ScoredItem> TopN(std::size_t user, std::size_t n) const override;

 private:
  const RatingMatrix& matrix_;
};

}  // namespace agelens

#endif  // AGELENS_KNN_H_
