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

#ifndef AGELENS_EXPERIMENT_H_
#define AGELENS_EXPERIMENT_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "agelens/corpus.h"
#include "agelens/drift.h"
#include "agelens/extract.h"
#include "agelens/item_profile.h"
#include "agelens/lexicon.h"
#include "agelens/metrics.h"
#include "agelens/ratings.h"
#include "agelens/recommender.h"
#include "agelens/split.h"
#include "agelens/user_profile.h"

namespace agelens {

struct ExperimentConfig {
  // Inputs. Either `reviews` alone (ratings and mentions derived from it) or
  // `ratings` plus `mentions`.
  std::string reviews;
  std::string ratings;
  std::string mentions;
  std::string lexicon = "builtin";
  std::string item_titles;

  std::vector<EngineKind> engines = {EngineKind::kUserCf, EngineKind::kItemCf,
                                     EngineKind::kMfAls};
  std::size_t n = 10;
  std::size_t oversample = 5;
  int relevance_threshold = 3;
  double train_fraction = 0.8;

  ExtractOptions extract;
  bool discover_variants = true;
  VariantDiscoveryOptions discovery;
  ItemProfileOptions items;
  UserModelOptions users;
  EngineOptions engine;

  std::uint64_t seed = 42;
  int threads = 1;
};

// Throws ConfigError naming the offending field.
void ValidateConfig(const ExperimentConfig& config, bool require_inputs = true);

struct StrategyResult {
  std::string name;  // e.g. "ub-cf", "ub-cf-pf", "ub-cf-pf-m1"
  std::string engine;
  bool post_filtered = false;
  std::size_t oversample = 1;
  RankingMetrics metrics;  // means over evaluated users
  double mean_list_length = 0.0;
};

struct FilteredExample {
  std::string user_id;
  std::string item_id;
  std::string title;
  double low_years = 0.0;
  double high_years = 0.0;
  double predicted_age_years = 0.0;
  std::string engine;
};

struct EvalReport {
  std::size_t n = 10;
  int relevance_threshold = 3;
  std::size_t n_train = 0;
  std::size_t n_test = 0;
  std::size_t n_eval_users = 0;
  std::size_t n_train_mentions = 0;
  std::size_t n_item_profiles = 0;
  std::size_t n_user_models = 0;
  std::size_t n_users_without_model = 0;
  std::vector<StrategyResult> strategies;
  DriftResult drift;
  std::vector<FilteredExample> filtered_examples;
  std::vector<std::string> notes;

  const StrategyResult* Find(const std::string& name) const;
};

// In-memory inputs for RunExperiment.
struct ExperimentData {
  std::vector<ReviewRecord> reviews;
  std::vector<Rating> ratings;  // derived from reviews when empty
  std::optional<MentionList> mentions;  // extracted from reviews when absent
  std::map<std::string, std::string> item_titles;
};

// Throws LeakageError if any mention comes from a review that is not on the
// train side of the split (pair not in train, or dated on/after the user's
// cut while the pair is held out).
void AssertNoLeakage(std::span<const AgeMention> mentions, const TemporalSplit& split);

// Mentions whose (user, item) pair is on the train side.
MentionList RestrictToTrain(std::span<const AgeMention> mentions,
                            const TemporalSplit& split);

// Split, build age profiles from train data only, train every engine on the
// train ratings, recommend at each test user's cut date, and score base and
// post-filtered lists against held-out ratings above the relevance threshold.
EvalReport RunExperiment(const ExperimentData& data, const ExperimentConfig& config,
                         const UnitLexicon& lexicon = UnitLexicon::Builtin());

}  // namespace agelens

#endif  // AGELENS_EXPERIMENT_H_
