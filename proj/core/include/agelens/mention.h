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

#ifndef AGELENS_MENTION_H_
#define AGELENS_MENTION_H_

#include <string>
#include <vector>

#include "agelens/date.h"

namespace agelens {

// One normalized age mention, unit-converted to years, with the ids, date
// and rating of the review it came from.
struct AgeMention {
  std::string review_id;
  std::string user_id;
  std::string item_id;
  Day date;
  int rating = 0;
  double value_years = 0.0;
  std::string unit_raw;
  // Only "my" and "our" count as possessive.
  bool possessive = false;

  friend bool operator==(const AgeMention&, const AgeMention&) = default;
};

using MentionList = std::vector<AgeMention>;

}  // namespace agelens

#endif  // AGELENS_MENTION_H_
