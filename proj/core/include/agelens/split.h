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

#ifndef AGELENS_SPLIT_H_
#define AGELENS_SPLIT_H_

#include <map>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "agelens/date.h"
#include "agelens/ratings.h"

namespace agelens {

struct TemporalSplit {
  double train_fraction = 0.8;
  // Both sorted by (user, date, item).
  std::vector<Rating> train;
  std::vector<Rating> test;
  // Date of each user's first held-out rating; users without a test side
  // are absent.
  std::map<std::string, Day> cut;

  // (user, item) pairs on the train side.
  std::set<std::pair<std::string, std::string>> TrainPairs() const;
};

// Per user, ratings ordered by (date, item id); the first
// ceil(train_fraction * count) go to train, the rest to test. Users with
// fewer than two ratings stay entirely in train. Duplicate (user, item)
// pairs are collapsed first. Throws ConfigError unless 0 < fraction < 1.
TemporalSplit SplitTemporal(std::span<const Rating> ratings,
                            double train_fraction = 0.8);

}  // namespace agelens

#endif  // AGELENS_SPLIT_H_
