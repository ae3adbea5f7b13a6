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

#ifndef AGELENS_EXTRACT_H_
#define AGELENS_EXTRACT_H_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "agelens/corpus.h"
#include "agelens/lexicon.h"
#include "agelens/mention.h"
#include "agelens/tokenize.h"

namespace agelens {

struct ExtractOptions {
  // How far left of the number a "my"/"our" may sit, in tokens.
  std::size_t poss_window = 4;
  // Mentions above this many years are treated as noise and dropped.
  double max_years = 18.0;
};

// A raw (possessive, numeric expression, unit) match inside one sentence.
struct AgePhrase {
  std::optional<std::string> possessive;  // lowercased "my" / "our"
  std::vector<std::string> value_tokens;  // lowercased, e.g. {"2","and","a","half"}
  std::string unit;                       // lowercased surface token
  std::size_t number_pos = 0;             // index of the first value token
  std::size_t unit_pos = 0;

  friend bool operator==(const AgePhrase&, const AgePhrase&) = default;
};

// Phrases in order of number position. A number followed by a unit token
// within two tokens forms a phrase; in "12 and 10 years" or "6-9 months" the
// first number borrows the unit of the second. Clause punctuation ends both
// the unit search and the possessive scope.
std::vector<AgePhrase> ExtractAgePhrases(const Sentence& sentence,
                                         const UnitLexicon& lexicon,
                                         const ExtractOptions& options = {});

// Digits, decimals, "one".."twelve", "half", with an optional
// "and a half" tail. nullopt when the tokens do not form such an expression.
std::optional<double> ParseNumericExpression(
    std::span<const std::string> value_tokens);

struct ExtractDiagnostics {
  std::size_t phrases = 0;
  std::size_t unparseable = 0;
  std::size_t non_positive = 0;
  std::size_t above_cap = 0;

  ExtractDiagnostics& operator+=(const ExtractDiagnostics& o) {
    phrases += o.phrases;
    unparseable += o.unparseable;
    non_positive += o.non_positive;
    above_cap += o.above_cap;
    return *this;
  }
};

// Converts a phrase into a mention tied to `review`. Dropped phrases return
// nullopt and bump the matching diagnostic counter.
std::optional<AgeMention> NormalizePhrase(const AgePhrase& phrase,
                                          const UnitLexicon& lexicon,
                                          const ReviewRecord& review,
                                          const ExtractOptions& options = {},
                                          ExtractDiagnostics* diag = nullptr);

MentionList ExtractReview(const ReviewRecord& review, const UnitLexicon& lexicon,
                          const ExtractOptions& options = {},
                          ExtractDiagnostics* diag = nullptr);

// All mentions of all reviews, ordered by review_id then phrase position.
// The result does not depend on `threads`.
MentionList ExtractCorpus(std::span<const ReviewRecord> reviews,
                          const UnitLexicon& lexicon,
                          const ExtractOptions& options = {}, int threads = 1,
                          ExtractDiagnostics* diag = nullptr);

// Sentences of every review text, for variant discovery.
std::vector<Sentence> TokenizeCorpus(std::span<const ReviewRecord> reviews);

}  // namespace agelens

#endif  // AGELENS_EXTRACT_H_
