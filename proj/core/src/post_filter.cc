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

#include "agelens/post_filter.h"

#include "agelens/error.h"

namespace agelens {

std::string_view VerdictName(Verdict v) {
  switch (v) {
    case Verdict::kKept:
      return "kept";
    case Verdict::kRemoved:
      return "removed";
    case Verdict::kNoProfile:
      return "no-profile";
    case Verdict::kUnfiltered:
      return "unfiltered";
  }
  return "kept";
}

PostFilterResult PostFilter(const RecommendationList& list,
                            const UserAgeModel* user_model,
                            const ItemProfileMap& item_profiles, Day t) {
  PostFilterResult out;
  out.list.user_id = list.user_id;
  out.list.generated_at = list.generated_at;
  if (user_model == nullptr) {
    out.unfiltered = true;
    out.list.entries = list.entries;
    for (const auto& e : list.entries) out.verdicts.push_back({e.item_id, Verdict::kUnfiltered, std::nullopt, std::nullopt});
    return out;
  }
  const double age = TargetAge(*user_model, t);
  out.target_age_years = age;
  for (const auto& e : list.entries) {
    FilterVerdict v{e.item_id, Verdict::kNoProfile, std::nullopt, std::nullopt};
    if (auto it = item_profiles.find(e.item_id); it != item_profiles.end()) {
      v.low_years = it->second.low_years;
      v.high_years = it->second.high_years;
      v.verdict = it->second.Contains(age) ? Verdict::kKept : Verdict::kRemoved;
    }
    if (v.verdict != Verdict::kRemoved) out.list.entries.push_back(e);
    out.verdicts.push_back(std::move(v));
  }
  return out;
}

PostFilterResult RecommendFor(const Recommender& engine, const std::string& user_id,
                              Day t, std::size_t n, std::size_t oversample,
                              bool filter, const UserAgeModel* user_model,
                              const ItemProfileMap& item_profiles) {
  if (oversample == 0) throw ConfigError("oversample must be >= 1");
  if (!filter) {
    PostFilterResult out;
    out.list = engine.Recommend(user_id, t, n);
    return out;
  }
  const auto candidates = engine.Recommend(user_id, t, n * oversample);
  PostFilterResult out = PostFilter(candidates, user_model, item_profiles, t);
  if (out.list.entries.size() > n) out.list.entries.resize(n);
  return out;
}

}  // namespace agelens
