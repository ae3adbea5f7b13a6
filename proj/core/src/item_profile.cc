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

#include "agelens/item_profile.h"

#include <algorithm>

#include "agelens/corpus.h"

namespace agelens {

namespace {

std::map<std::string, std::vector<AgeMention>> GroupByItem(
    std::span<const AgeMention> mentions) {
  std::map<std::string, std::vector<AgeMention>> groups;
  for (const auto& m : mentions) groups[m.item_id].push_back(m);
  return groups;
}

std::optional<ItemAgeProfile> ProfileOne(const std::string& item_id,
                                         std::span<const AgeMention> item_mentions,
                                         SubsetStrategy strategy,
                                         const TukeyOptions& tukey) {
  const auto selected = SelectMentions(item_mentions, strategy);
  if (selected.empty()) return std::nullopt;
  const auto retained = TukeyFilter(selected, tukey);
  const auto range = TargetAgeRange(retained);
  if (!range) return std::nullopt;
  ItemAgeProfile p;
  p.item_id = item_id;
  p.strategy = strategy;
  p.low_years = range->first;
  p.high_years = range->second;
  p.n_used = retained.size();
  p.n_removed = selected.size() - retained.size();
  return p;
}

}  // namespace

std::string_view StrategyName(SubsetStrategy s) {
  switch (s) {
    case SubsetStrategy::kAll:
      return "all";
    case SubsetStrategy::kRatingBased:
      return "rating";
    case SubsetStrategy::kPossessive:
      return "poss";
    case SubsetStrategy::kRatingPossessive:
      return "rating-poss";
  }
  return "all";
}

std::optional<SubsetStrategy> StrategyFromName(std::string_view name) {
  for (auto s : {SubsetStrategy::kAll, SubsetStrategy::kRatingBased,
                 SubsetStrategy::kPossessive, SubsetStrategy::kRatingPossessive}) {
    if (StrategyName(s) == name) return s;
  }
  return std::nullopt;
}

std::vector<double> SelectMentions(std::span<const AgeMention> item_mentions,
                                   SubsetStrategy strategy) {
  std::vector<double> out;
  for (const auto& m : item_mentions) {
    const bool positive = m.rating > kPositiveRatingAbove;
    bool keep = true;
    switch (strategy) {
      case SubsetStrategy::kAll:
        break;
      case SubsetStrategy::kRatingBased:
        keep = positive;
        break;
      case SubsetStrategy::kPossessive:
        keep = m.possessive;
        break;
      case SubsetStrategy::kRatingPossessive:
        keep = positive && m.possessive;
        break;
    }
    if (keep) out.push_back(m.value_years);
  }
  return out;
}

std::optional<std::pair<double, double>> TargetAgeRange(
    std::span<const double> retained) {
  if (retained.empty()) return std::nullopt;
  const auto [lo, hi] = std::minmax_element(retained.begin(), retained.end());
  return std::make_pair(*lo, *hi);
}

ItemProfileMap ProfileItems(std::span<const AgeMention> mentions,
                            const ItemProfileOptions& options) {
  const auto eligible =
      FilterMinMentions(EntityKind::kItem, mentions, options.min_reviews);
  ItemProfileMap out;
  for (const auto& [item, group] : GroupByItem(mentions)) {
    if (!eligible.contains(item)) continue;
    if (auto p = ProfileOne(item, group, options.strategy, options.tukey)) {
      out.emplace(item, std::move(*p));
    }
  }
  return out;
}

ItemProfileMap ProfileItemsWithFallback(std::span<const AgeMention> mentions,
                                        const ItemProfileOptions& options) {
  const auto eligible =
      FilterMinMentions(EntityKind::kItem, mentions, options.min_reviews);
  ItemProfileMap out;
  for (const auto& [item, group] : GroupByItem(mentions)) {
    if (!eligible.contains(item)) continue;
    auto p = ProfileOne(item, group, options.strategy, options.tukey);
    if (!p) p = ProfileOne(item, group, SubsetStrategy::kAll, options.tukey);
    if (p) out.emplace(item, std::move(*p));
  }
  return out;
}

}  // namespace agelens
