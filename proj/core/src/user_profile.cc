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

#include "agelens/user_profile.h"

#include <algorithm>
#include <cmath>

#include "agelens/parallel.h"

namespace agelens {

namespace {

void SortStream(std::vector<TimedAge>& stream) {
  std::stable_sort(stream.begin(), stream.end(),
                   [](const TimedAge& a, const TimedAge& b) {
                     if (a.date != b.date) return a.date < b.date;
                     if (a.review_id != b.review_id) return a.review_id < b.review_id;
                     return a.value_years < b.value_years;
                   });
}

std::vector<TimedAge> TukeyStream(std::span<const TimedAge> stream,
                                  const TukeyOptions& tukey) {
  if (stream.empty()) return {};
  std::vector<double> values;
  for (const auto& t : stream) values.push_back(t.value_years);
  const Fences f = TukeyFences(values, tukey);
  std::vector<TimedAge> out;
  for (const auto& t : stream) {
    if (t.value_years >= f.lower && t.value_years <= f.upper) out.push_back(t);
  }
  return out;
}

}  // namespace

UserStreams CollectUserMentions(std::string_view user_id,
                                std::span<const AgeMention> mentions) {
  UserStreams s;
  for (const auto& m : mentions) {
    if (m.user_id != user_id) continue;
    (m.possessive ? s.possessive : s.general)
        .push_back({m.date, m.value_years, m.review_id});
  }
  SortStream(s.possessive);
  SortStream(s.general);
  return s;
}

std::vector<AgeDelta> AgeTimeNormalization(std::span<const TimedAge> stream) {
  std::vector<AgeDelta> out;
  if (stream.empty()) return out;
  const TimedAge& first = stream.front();
  out.reserve(stream.size());
  for (const auto& t : stream) {
    out.push_back({YearsBetween(first.date, t.date), t.value_years - first.value_years});
  }
  return out;
}

std::optional<LinearFit> FitAgeDeltas(std::span<const AgeDelta> deltas) {
  std::vector<double> x, y;
  x.reserve(deltas.size());
  y.reserve(deltas.size());
  for (const auto& d : deltas) {
    x.push_back(d.dt_years);
    y.push_back(d.dage_years);
  }
  return FitLinear(x, y);
}

std::string_view VariantName(ModelVariant v) {
  return v == ModelVariant::kPossessive ? "possessive" : "all-terms";
}

std::optional<ModelVariant> VariantFromName(std::string_view name) {
  if (name == "possessive") return ModelVariant::kPossessive;
  if (name == "all-terms") return ModelVariant::kAllTerms;
  return std::nullopt;
}

double TargetAge(const UserAgeModel& model, Day t) {
  const double age =
      model.a0 + model.intercept + model.slope * YearsBetween(model.t0, t);
  return std::max(0.0, age);
}

std::optional<UserAgeModel> FitUserModel(std::string_view user_id,
                                         ModelVariant variant,
                                         std::span<const TimedAge> stream,
                                         const UserModelOptions& options) {
  std::vector<TimedAge> points(stream.begin(), stream.end());
  if (options.user_tukey) points = TukeyStream(points, options.tukey);
  if (points.empty()) return std::nullopt;

  UserAgeModel m;
  m.user_id = std::string(user_id);
  m.variant = variant;
  m.t0 = points.front().date;
  m.a0 = points.front().value_years;
  m.n_points = points.size();
  const auto deltas = AgeTimeNormalization(points);
  if (auto fit = FitAgeDeltas(deltas)) {
    m.slope = fit->slope;
    m.intercept = fit->intercept;
    m.residual_rms = fit->residual_rms;
  } else {
    m.slope = options.fallback_slope;
    m.intercept = 0.0;
    double sse = 0.0;
    for (const auto& d : deltas) sse += d.dage_years * d.dage_years;
    m.residual_rms = std::sqrt(sse / static_cast<double>(deltas.size()));
  }
  return m;
}

UserModelMap BuildUserModels(std::span<const AgeMention> mentions,
                             const UserModelOptions& options, int threads) {
  std::map<std::string, UserStreams> streams;
  for (const auto& m : mentions) {
    UserStreams& s = streams[m.user_id];
    (m.possessive ? s.possessive : s.general)
        .push_back({m.date, m.value_years, m.review_id});
  }
  std::vector<const std::pair<const std::string, UserStreams>*> users;
  for (auto& entry : streams) {
    SortStream(entry.second.possessive);
    SortStream(entry.second.general);
    users.push_back(&entry);
  }

  std::vector<std::optional<UserAgeModel>> poss(users.size()), general(users.size());
  ParallelFor(users.size(), threads, [&](std::size_t i) {
    const auto& [user, s] = *users[i];
    if (s.possessive.size() >= options.k) {
      poss[i] = FitUserModel(user, ModelVariant::kPossessive, s.possessive, options);
    }
    if (s.general.size() >= options.k) {
      general[i] = FitUserModel(user, ModelVariant::kAllTerms, s.general, options);
    }
  });

  UserModelMap out;
  for (std::size_t i = 0; i < users.size(); ++i) {
    if (poss[i]) out.emplace(UserModelKey{poss[i]->user_id, ModelVariant::kPossessive}, *poss[i]);
    if (general[i]) {
      out.emplace(UserModelKey{general[i]->user_id, ModelVariant::kAllTerms}, *general[i]);
    }
  }
  return out;
}

const UserAgeModel* SelectUserModel(const UserModelMap& models,
                                    const std::string& user_id) {
  for (auto v : {ModelVariant::kPossessive, ModelVariant::kAllTerms}) {
    if (auto it = models.find({user_id, v}); it != models.end()) return &it->second;
  }
  return nullptr;
}

}  // namespace agelens
