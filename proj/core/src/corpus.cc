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

#include "agelens/corpus.h"

#include <cmath>
#include <map>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "agelens/error.h"
#include "json.hpp"

namespace agelens {

using nlohmann::json;

std::optional<ReviewRecord> ParseReviewLine(std::string_view line) {
  const json obj = json::parse(line, nullptr, /*allow_exceptions=*/false);
  if (obj.is_discarded() || !obj.is_object()) return std::nullopt;

  auto string_field = [&](const char* key) -> const json* {
    auto it = obj.find(key);
    if (it == obj.end() || !it->is_string()) return nullptr;
    return &*it;
  };
  const json* user = string_field("reviewerID");
  const json* item = string_field("asin");
  if (user == nullptr || item == nullptr) return std::nullopt;

  auto overall = obj.find("overall");
  if (overall == obj.end() || !overall->is_number()) return std::nullopt;
  const double rating = overall->get<double>();
  if (rating != std::floor(rating) || rating < 1.0 || rating > 5.0) {
    return std::nullopt;
  }

  auto ts = obj.find("unixReviewTime");
  if (ts == obj.end() || !ts->is_number_integer()) return std::nullopt;
  const std::int64_t seconds = ts->get<std::int64_t>();

  ReviewRecord r;
  r.user_id = user->get<std::string>();
  r.item_id = item->get<std::string>();
  if (r.user_id.empty() || r.item_id.empty()) return std::nullopt;
  r.rating = static_cast<int>(rating);
  r.date = DayFromUnixSeconds(seconds);

  for (const char* key : {"reviewText", "summary"}) {
    auto it = obj.find(key);
    if (it == obj.end()) continue;
    if (!it->is_string()) return std::nullopt;
    (key[0] == 'r' ? r.text : r.summary) = it->get<std::string>();
  }

  if (const json* id = string_field("reviewID"); id != nullptr) {
    r.review_id = id->get<std::string>();
  } else {
    r.review_id = r.user_id + "_" + r.item_id + "_" + std::to_string(seconds);
  }
  return r;
}

std::string ToJsonLine(const ReviewRecord& review) {
  json obj = {
      {"reviewID", review.review_id},
      {"reviewerID", review.user_id},
      {"asin", review.item_id},
      {"overall", review.rating},
      {"unixReviewTime", UnixSeconds(review.date)},
      {"reviewText", review.text},
      {"summary", review.summary},
  };
  return obj.dump(-1, ' ', false, json::error_handler_t::replace);
}

ReviewReader::ReviewReader(const std::string& path) : path_(path), in_(path) {
  if (!in_) throw IoError("cannot open review file '" + path + "'");
}

std::optional<ReviewRecord> ReviewReader::Next() {
  std::string line;
  while (std::getline(in_, line)) {
    ++line_number_;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    if (auto r = ParseReviewLine(line)) return r;
    ++skipped_;
  }
  if (in_.bad()) throw IoError("read error on '" + path_ + "'");
  return std::nullopt;
}

namespace {

void MakeIdsUnique(std::vector<ReviewRecord>& reviews) {
  std::unordered_map<std::string, int> seen;
  for (auto& r : reviews) {
    int& count = seen[r.review_id];
    if (++count > 1) r.review_id += "#" + std::to_string(count);
  }
}

}  // namespace

LoadedCorpus LoadReviews(const std::string& path) {
  ReviewReader reader(path);
  LoadedCorpus out;
  while (auto r = reader.Next()) out.reviews.push_back(std::move(*r));
  out.skipped = reader.skipped();
  if (out.reviews.empty()) {
    throw EmptyCorpusError("no parseable reviews in '" + path + "'");
  }
  MakeIdsUnique(out.reviews);
  return out;
}

LoadedCorpus LoadReviews(std::istream& in, const std::string& source_name) {
  LoadedCorpus out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    if (auto r = ParseReviewLine(line)) {
      out.reviews.push_back(std::move(*r));
    } else {
      ++out.skipped;
    }
  }
  if (out.reviews.empty()) {
    throw EmptyCorpusError("no parseable reviews in '" + source_name + "'");
  }
  MakeIdsUnique(out.reviews);
  return out;
}

CorpusStats ComputeCorpusStats(const std::vector<ReviewRecord>& reviews,
                               const MentionList& mentions) {
  CorpusStats s;
  std::unordered_set<std::string> users, items, review_ids, poss_users;
  for (const auto& r : reviews) {
    users.insert(r.user_id);
    items.insert(r.item_id);
    review_ids.insert(r.review_id);
  }
  for (const auto& m : mentions) {
    ++s.n_mentions;
    if (m.possessive) {
      ++s.n_possessive_mentions;
      poss_users.insert(m.user_id);
    }
  }
  s.n_reviews = review_ids.size();
  s.n_items = items.size();
  s.n_users = users.size();
  s.n_users_with_possessives = poss_users.size();
  if (s.n_items > 0) {
    s.avg_reviews_per_item =
        static_cast<double>(s.n_reviews) / static_cast<double>(s.n_items);
  }
  if (s.n_users > 0) {
    s.avg_terms_per_user =
        static_cast<double>(s.n_mentions) / static_cast<double>(s.n_users);
  }
  if (s.n_users_with_possessives > 0) {
    s.avg_poss_terms_per_user = static_cast<double>(s.n_possessive_mentions) /
                                static_cast<double>(s.n_users_with_possessives);
  }
  return s;
}

std::set<std::string> FilterMinMentions(EntityKind kind,
                                        std::span<const AgeMention> mentions,
                                        std::size_t k) {
  std::map<std::string, std::size_t> counts;
  if (kind == EntityKind::kItem) {
    std::map<std::string, std::unordered_set<std::string>> reviews_per_item;
    for (const auto& m : mentions) reviews_per_item[m.item_id].insert(m.review_id);
    for (const auto& [item, rs] : reviews_per_item) counts[item] = rs.size();
  } else {
    for (const auto& m : mentions) ++counts[m.user_id];
  }
  std::set<std::string> out;
  for (const auto& [id, n] : counts) {
    if (n >= k) out.insert(id);
  }
  return out;
}

}  // namespace agelens
