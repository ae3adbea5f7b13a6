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

#ifndef AGELENS_POST_FILTER_H_
#define AGELENS_POST_FILTER_H_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "agelens/date.h"
#include "agelens/item_profile.h"
#include "agelens/recommender.h"
#include "agelens/user_profile.h"

namespace agelens {

enum class Verdict {
  kKept,       // predicted age inside the item's range
  kRemoved,    // outside the range
  kNoProfile,  // item has no age profile; passes through
  kUnfiltered, // no user model; everything passes through
};

std::string_view VerdictName(Verdict v);

struct FilterVerdict {
  std::string item_id;
  Verdict verdict = Verdict::kKept;
  std::optional<double> low_years;
  std::optional<double> high_years;
};

struct PostFilterResult {
  RecommendationList list;
  std::vector<FilterVerdict> verdicts;  // one per input entry, input order
  // Set when no user model was available and the list passed unchanged.
  bool unfiltered = false;
  std::optional<double> target_age_years;
};

// Keeps entries whose item range holds target_age(model, t), in input order.
PostFilterResult PostFilter(const RecommendationList& list,
                            const UserAgeModel* user_model,
                            const ItemProfileMap& item_profiles, Day t);

// Draws n * oversample candidates from the engine, post-filters them when
// `filter` is set, and keeps the first n. oversample = 1 gives the literal
// filter-after-top-n behavior, which may return fewer than n items.
PostFilterResult RecommendFor(const Recommender& engine, const std::string& user_id,
                              Day t, std::size_t n, std::size_t oversample,
                              bool filter, const UserAgeModel* user_model,
                              const ItemProfileMap& item_profiles);

}  // namespace agelens

#endif  // AGELENS_POST_FILTER_H_
