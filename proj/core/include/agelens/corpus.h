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

#ifndef AGELENS_CORPUS_H_
#define AGELENS_CORPUS_H_

#include <cstddef>
#include <fstream>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "agelens/date.h"
#include "agelens/mention.h"

namespace agelens {

struct ReviewRecord {
  std::string review_id;
  std::string user_id;
  std::string item_id;
  int rating = 0;  // 1..5
  Day date;
  std::string text;
  std::string summary;

  friend bool operator==(const ReviewRecord&, const ReviewRecord&) = default;
};

// Parses one JSON-lines review in the public Amazon dump layout (reviewerID,
// asin, overall, unixReviewTime, reviewText, summary; optional reviewID).
// Returns nullopt for anything that does not form a valid record. When the
// line has no reviewID, the id is derived from reviewer, item and timestamp.
std::optional<ReviewRecord> ParseReviewLine(std::string_view line);

// Inverse of ParseReviewLine for valid records.
std::string ToJsonLine(const ReviewRecord& review);

// Streaming reader over a JSON-lines review file. Malformed lines are
// skipped and counted. Single consumer.
class ReviewReader {
 public:
  // Throws IoError if the file cannot be opened.
  explicit ReviewReader(const std::string& path);

  std::optional<ReviewRecord> Next();

  std::size_t skipped() const { return skipped_; }
  std::size_t line_number() const { return line_number_; }

 private:
  std::string path_;
  std::ifstream in_;
  std::size_t skipped_ = 0;
  std::size_t line_number_ = 0;
};

struct LoadedCorpus {
  std::vector<ReviewRecord> reviews;  // file order
  std::size_t skipped = 0;
};

// Reads the whole file. Duplicate review ids get a "#n" suffix so ids stay
// unique. Throws IoError for unreadable files and EmptyCorpusError when no
// line parses.
LoadedCorpus LoadReviews(const std::string& path);

// Same contract over an in-memory stream (one record per line).
LoadedCorpus LoadReviews(std::istream& in, const std::string& source_name);

struct CorpusStats {
  std::size_t n_reviews = 0;
  std::size_t n_items = 0;
  std::size_t n_users = 0;
  std::size_t n_users_with_possessives = 0;
  std::size_t n_mentions = 0;
  std::size_t n_possessive_mentions = 0;
  double avg_reviews_per_item = 0.0;
  // Mentions over all users.
  double avg_terms_per_user = 0.0;
  // Possessive mentions over users that have at least one.
  double avg_poss_terms_per_user = 0.0;
};

CorpusStats ComputeCorpusStats(const std::vector<ReviewRecord>& reviews,
                               const MentionList& mentions);

enum class EntityKind {
  kItem,  // counts distinct mention-bearing reviews
  kUser,  // counts mention terms
};

// Ids with at least k associated mentions, counted per EntityKind.
std::set<std::string> FilterMinMentions(EntityKind kind,
                                        std::span<const AgeMention> mentions,
                                        std::size_t k);

}  // namespace agelens

#endif  // AGELENS_CORPUS_H_
