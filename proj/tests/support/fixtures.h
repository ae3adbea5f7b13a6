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

#ifndef AGELENS_TESTS_FIXTURES_H_
#define AGELENS_TESTS_FIXTURES_H_

#include <string>
#include <vector>

#include "agelens/corpus.h"
#include "agelens/date.h"
#include "agelens/mention.h"
#include "agelens/ratings.h"

namespace fixture {

inline std::string DataPath(const std::string& name) {
  return std::string(AGELENS_TEST_DATA_DIR) + "/" + name;
}

inline agelens::Day D(const char* iso) { return agelens::ParseDate(iso); }

inline agelens::AgeMention Mention(std::string review, std::string user, std::string item,
                                   const char* date, int rating, double years,
                                   bool possessive, std::string unit = "years") {
  agelens::AgeMention m;
  m.review_id = std::move(review);
  m.user_id = std::move(user);
  m.item_id = std::move(item);
  m.date = D(date);
  m.rating = rating;
  m.value_years = years;
  m.unit_raw = std::move(unit);
  m.possessive = possessive;
  return m;
}

inline agelens::Rating R(std::string user, std::string item, int rating, const char* date) {
  return {std::move(user), std::move(item), rating, D(date)};
}

inline agelens::ReviewRecord Review(std::string id, std::string user, std::string item,
                                    int rating, const char* date, std::string text) {
  agelens::ReviewRecord r;
  r.review_id = std::move(id);
  r.user_id = std::move(user);
  r.item_id = std::move(item);
  r.rating = rating;
  r.date = D(date);
  r.text = std::move(text);
  return r;
}

}  // namespace fixture

#endif  // AGELENS_TESTS_FIXTURES_H_
