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

#ifndef AGELENS_RECOMMENDER_H_
#define AGELENS_RECOMMENDER_H_

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "agelens/date.h"
#include "agelens/ratings.h"

namespace agelens {

struct ScoredItem {
  std::string item_id;
  double score = 0.0;

  friend bool operator==(const ScoredItem&, const ScoredItem&) = default;
};

struct RecommendationList {
  std::string user_id;
  Day generated_at;
  // Descending score, ties by ascending item id.
  std::vector<ScoredItem> entries;
};

// Sorts by descending score with item id tie-break and keeps the first n.
void RankAndTruncate(std::vector<ScoredItem>& items, std::size_t n);

// A top-n engine trained on a fixed rating matrix. Items the user already
// rated are never returned. Implementations are read-only after
// construction and safe to query from several threads.
class Recommender {
 public:
  virtual ~Recommender() = default;

  virtual std::string_view name() const = 0;
  virtual const RatingMatrix& matrix() const = 0;
  virtual std::vector<ScoredItem> TopN(std::size_t user_index, std::size_t n) const = 0;

  // Throws DataError for users missing from the matrix.
  RecommendationList Recommend(const std::string& user_id, Day t, std::size_t n) const;
};

enum class EngineKind { kUserCf, kItemCf, kMfAls };

std::string_view EngineName(EngineKind e);  // ub-cf | ib-cf | mf-als
std::optional<EngineKind> EngineFromName(std::string_view name);

struct EngineOptions {
  std::size_t neighborhood = 50;
  std::size_t als_rank = 20;
  double als_lambda = 0.05;
  std::size_t als_sweeps = 15;
  std::uint64_t seed = 42;
  int threads = 1;
};

std::unique_ptr<Recommender> MakeRecommender(EngineKind kind,
                                             const RatingMatrix& matrix,
                                             const EngineOptions& options = {});

}  // namespace agelens

#endif  // AGELENS_RECOMMENDER_H_
