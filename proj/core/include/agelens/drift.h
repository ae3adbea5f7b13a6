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

#ifndef AGELENS_DRIFT_H_
#define AGELENS_DRIFT_H_

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "agelens/item_profile.h"
#include "agelens/split.h"

namespace agelens {

struct DriftPoint {
  std::string bucket;  // "YYYY-MM" of the user's split cut
  std::string source;  // "test" or a recommender strategy name
  double delta_years = 0.0;
  std::size_t n_users = 0;
};

struct DriftResult {
  // Ordered by bucket, then source.
  std::vector<DriftPoint> series;
  // Mean per-user delta for each source over all buckets.
  std::map<std::string, double> mean_delta;
  std::map<std::string, std::size_t> n_users;
};

// source -> user -> recommended item ids
using RecsBySource = std::map<std::string, std::map<std::string, std::vector<std::string>>>;

// Item age is the midpoint of its profile range; unprofiled items are
// skipped. Per user, delta = mean age of the source's items minus mean age of
// the user's train items. The held-out items form the "test" source.
DriftResult ComputeDrift(const TemporalSplit& split, const ItemProfileMap& profiles,
                         const RecsBySource& recs);

}  // namespace agelens

#endif  // AGELENS_DRIFT_H_
