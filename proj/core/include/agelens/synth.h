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

#ifndef AGELENS_SYNTH_H_
#define AGELENS_SYNTH_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "agelens/corpus.h"
#include "agelens/date.h"
#include "agelens/mention.h"
#include "agelens/ratings.h"

// Synthetic review corpora with planted ground truth. Every user buys for
// one child whose age advances with calendar time at exactly one year per
// year; items have true age ranges and are rated high when the child's age
// falls inside them.
namespace agelens {

struct SynthOptions {
  std::size_t n_users = 200;
  std::size_t n_items = 100;
  std::uint64_t seed = 42;
  // 0 emits only canonical phrases. Higher values add misspelt units and
  // unrelated duration phrases with that per-review probability.
  double noise = 0.0;
  // Share of reviews carrying a possessive age phrase, and a plain one.
  double possessive_rate = 0.6;
  double plain_rate = 0.25;
  // Probability that a purchase is an item whose range holds the child's age.
  double in_range_rate = 0.85;
  std::size_t min_purchases = 5;
  std::size_t max_purchases = 15;
  double zipf_exponent = 0.8;
};

struct SynthItem {
  std::string item_id;
  std::string title;
  double low_years = 0.0;
  double high_years = 0.0;
  double popularity = 0.0;
};

struct SynthUser {
  std::string user_id;
  Day birth;
};

struct SynthCorpus {
  std::vector<SynthItem> items;
  std::vector<SynthUser> users;
  std::vector<ReviewRecord> reviews;  // ordered by review_id
  std::vector<Rating> ratings;        // one per review
  // Child-age phrases written into reviews, in review_id order.
  MentionList planted;
  // Unit phrases unrelated to the child's age (noise only).
  MentionList distractors;
};

// Throws ConfigError for empty sizes or rates outside [0,1].
SynthCorpus GenerateSynthetic(const SynthOptions& options);

// Writes reviews.jsonl, ratings.csv, items.csv, users.csv, item_titles.csv,
// planted_mentions.jsonl, distractor_mentions.jsonl and an experiment.json
// that points at them. Returns the written file names.
std::vector<std::string> WriteSynthetic(const SynthCorpus& corpus,
                                        const std::string& dir);

}  // namespace agelens

#endif  // AGELENS_SYNTH_H_
