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

#ifndef AGELENS_ITEM_PROFILE_H_
#define AGELENS_ITEM_PROFILE_H_

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "agelens/mention.h"
#include "agelens/stats.h"

namespace agelens {

// Which of an item's mentions feed its age range.
enum class SubsetStrategy {
  kAll,
  kRatingBased,       // source review rated above 3
  kPossessive,        // "my" / "our" mentions
  kRatingPossessive,  // both
};

std::string_view StrategyName(SubsetStrategy s);  // all|rating|poss|rating-poss
std::optional<SubsetStrategy> StrategyFromName(std::string_view name);

struct ItemAgeProfile {
  std::string item_id;
  SubsetStrategy strategy = SubsetStrategy::kAll;
  double low_years = 0.0;
  double high_years = 0.0;
  std::size_t n_used = 0;
  std::size_t n_removed = 0;

  bool Contains(double age_years) const {
    return low_years <= age_years && age_years <= high_years;
  }
  friend bool operator==(const ItemAgeProfile&, const ItemAgeProfile&) = default;
};

using ItemProfileMap = std::map<std::string, ItemAgeProfile>;

inline constexpr int kPositiveRatingAbove = 3;

// Values (years) of the mentions the strategy selects, in input order.
std::vector<double> SelectMentions(std::span<const AgeMention> item_mentions,
                                   SubsetStrategy strategy);

// (min, max) of the retained values; nullopt for an empty list.
std::optional<std::pair<double, double>> TargetAgeRange(
    std::span<const double> retained);

struct ItemProfileOptions {
  SubsetStrategy strategy = SubsetStrategy::kRatingPossessive;
  // Items need this many distinct mention-bearing reviews.
  std::size_t min_reviews = 4;
  TukeyOptions tukey;
};

// One profile per eligible item whose selected subset is non-empty.
ItemProfileMap ProfileItems(std::span<const AgeMention> mentions,
                            const ItemProfileOptions& options = {});

// Profiles under `options.strategy`, falling back to kAll for items whose
// preferred subset is empty. This is what the recommendation pipeline uses.
ItemProfileMap ProfileItemsWithFallback(std::span<const AgeMention> mentions,
                                        const ItemProfileOptions& options = {});

}  // namespace agelens

#endif  // AGELENS_ITEM_PROFILE_H_
