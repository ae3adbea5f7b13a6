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

#include "agelens/recommender.h"

#include <algorithm>

#include "agelens/als.h"
#include "agelens/error.h"
#include "agelens/knn.h"

namespace agelens {

void RankAndTruncate(std::vector<ScoredItem>& items, std::size_t n) {
  auto better = [](const ScoredItem& a, const ScoredItem& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.item_id < b.item_id;
  };
  if (items.size() > n) {
    std::partial_sort(items.begin(), items.begin() + static_cast<std::ptrdiff_t>(n),
                      items.end(), better);
    items.resize(n);
  } else {
    std::sort(items.begin(), items.end(), better);
  }
}

RecommendationList Recommender::Recommend(const std::string& user_id, Day t,
                                          std::size_t n) const {
  const auto u = matrix().UserIndex(user_id);
  if (!u) throw DataError("user '" + user_id + "' has no training ratings");
  RecommendationList list;
  list.user_id = user_id;
  list.generated_at = t;
  list.entries = TopN(*u, n);
  return list;
}

std::string_view EngineName(EngineKind e) {
  switch (e) {
    case EngineKind::kUserCf:
      return "ub-cf";
    case EngineKind::kItemCf:
      return "ib-cf";
    case EngineKind::kMfAls:
      return "mf-als";
  }
  return "ub-cf";
}

std::optional<EngineKind> EngineFromName(std::string_view name) {
  for (auto e : {EngineKind::kUserCf, EngineKind::kItemCf, EngineKind::kMfAls}) {
    if (EngineName(e) == name) return e;
  }
  return std::nullopt;
}

std::unique_ptr<Recommender> MakeRecommender(EngineKind kind,
                                             const RatingMatrix& matrix,
                                             const EngineOptions& options) {
  switch (kind) {
    case EngineKind::kUserCf:
      return std::make_unique<UserBasedCf>(matrix, options.neighborhood);
    case EngineKind::kItemCf:
      return std::make_unique<ItemBasedCf>(matrix);
    case EngineKind::kMfAls: {
      AlsOptions als;
      als.rank = options.als_rank;
      als.lambda = options.als_lambda;
      als.sweeps = options.als_sweeps;
      als.seed = options.seed;
      als.threads = options.threads;
      return std::make_unique<MatrixFactorizationCf>(matrix, als);
    }
  }
  throw ConfigError("unknown engine");
}

}  // namespace agelens
