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

#ifndef AGELENS_USER_PROFILE_H_
#define AGELENS_USER_PROFILE_H_

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "agelens/date.h"
#include "agelens/mention.h"
#include "agelens/stats.h"

namespace agelens {

struct TimedAge {
  Day date;
  double value_years = 0.0;
  std::string review_id;
};

struct UserStreams {
  std::vector<TimedAge> possessive;
  std::vector<TimedAge> general;  // every non-possessive mention
};

// Splits one user's mentions into possessive and general streams, each sorted
// by date with ties broken by review id and then by value.
UserStreams CollectUserMentions(std::string_view user_id,
                                std::span<const AgeMention> mentions);

struct AgeDelta {
  double dt_years = 0.0;
  double dage_years = 0.0;
};

// Differences from the first element of a date-sorted stream, the first pair
// being (0, 0).
std::vector<AgeDelta> AgeTimeNormalization(std::span<const TimedAge> stream);

// Least-squares line through the deltas; nullopt without Δt spread.
std::optional<LinearFit> FitAgeDeltas(std::span<const AgeDelta> deltas);

enum class ModelVariant { kPossessive, kAllTerms };

std::string_view VariantName(ModelVariant v);  // "possessive" | "all-terms"
std::optional<ModelVariant> VariantFromName(std::string_view name);

struct UserAgeModel {
  std::string user_id;
  ModelVariant variant = ModelVariant::kPossessive;
  Day t0;           // date of the earliest contributing mention
  double a0 = 0.0;  // its age value
  double slope = 1.0;
  double intercept = 0.0;
  std::size_t n_points = 0;
  double residual_rms = 0.0;

  friend bool operator==(const UserAgeModel&, const UserAgeModel&) = default;
};

// a0 + intercept + slope * (t - t0), clamped below at zero.
double TargetAge(const UserAgeModel& model, Day t);

struct UserModelOptions {
  // Minimum number of mention terms in a stream.
  std::size_t k = 4;
  // Tukey-filter each stream before fitting.
  bool user_tukey = false;
  TukeyOptions tukey;
  // Used when the stream has no date spread: ages advance with the calendar.
  double fallback_slope = 1.0;
};

using UserModelKey = std::pair<std::string, ModelVariant>;
using UserModelMap = std::map<UserModelKey, UserAgeModel>;

// Fits one model from a date-sorted stream; nullopt for an empty stream.
std::optional<UserAgeModel> FitUserModel(std::string_view user_id,
                                         ModelVariant variant,
                                         std::span<const TimedAge> stream,
                                         const UserModelOptions& options = {});

UserModelMap BuildUserModels(std::span<const AgeMention> mentions,
                             const UserModelOptions& options = {},
                             int threads = 1);

// Possessive model if present, else the all-terms model, else nullptr.
const UserAgeModel* SelectUserModel(const UserModelMap& models,
                                    const std::string& user_id);

}  // namespace agelens

#endif  // AGELENS_USER_PROFILE_H_
