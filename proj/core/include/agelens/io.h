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

#ifndef AGELENS_IO_H_
#define AGELENS_IO_H_

#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "agelens/corpus.h"
#include "agelens/drift.h"
#include "agelens/experiment.h"
#include "agelens/item_profile.h"
#include "agelens/lexicon.h"
#include "agelens/mention.h"
#include "agelens/post_filter.h"
#include "agelens/ratings.h"
#include "agelens/user_profile.h"

// File formats. JSON documents are emitted with sorted keys and shortest
// round-trip number formatting, so equal inputs give byte-equal files.
namespace agelens {

std::string ReadFile(const std::string& path);
void WriteFile(const std::string& path, const std::string& contents);

// Mentions: JSON lines {review_id, user_id, item_id, date, rating,
// value_years, unit_raw, possessive}, date as YYYY-MM-DD.
std::string MentionToJson(const AgeMention& m);
AgeMention MentionFromJson(const std::string& line);
void WriteMentions(std::ostream& out, std::span<const AgeMention> mentions);
MentionList ReadMentions(const std::string& path);

// Lexicon: {"year": [...], "month": [...], "week": [...]}. `source` is either
// "builtin" or a file path.
UnitLexicon LoadLexicon(const std::string& source);
UnitLexicon LexiconFromJson(const std::string& text);
std::string LexiconToJson(const UnitLexicon& lexicon);

// Item profiles: array of {item_id, strategy, low_years, high_years, n_used,
// n_removed}.
std::string ItemProfilesToJson(const ItemProfileMap& profiles);
ItemProfileMap ItemProfilesFromJson(const std::string& text);

// User models: array of {user_id, variant, t0, a0, slope, intercept,
// n_points, residual_rms}.
std::string UserModelsToJson(const UserModelMap& models);
UserModelMap UserModelsFromJson(const std::string& text);

// Ratings CSV: user_id,item_id,rating,timestamp (unix seconds); header
// optional.
std::vector<Rating> ReadRatingsCsv(const std::string& path);
void WriteRatingsCsv(std::ostream& out, std::span<const Rating> ratings);

// item_id,title
std::map<std::string, std::string> ReadItemTitles(const std::string& path);

std::string CorpusStatsToJson(const CorpusStats& stats, std::size_t skipped_lines);

// Experiment configuration as a flat JSON object. Unknown keys are rejected;
// relative paths resolve against `base_dir`.
ExperimentConfig ExperimentConfigFromJson(const std::string& text,
                                          const std::string& base_dir = "");
ExperimentConfig LoadExperimentConfig(const std::string& path);
std::string ExperimentConfigToJson(const ExperimentConfig& config);

std::string ReportToJson(const EvalReport& report, const ExperimentConfig& config);
// bucket,source,delta_years
std::string DriftToCsv(const DriftResult& drift);
DriftResult DriftFromReportJson(const std::string& report_text);

std::string RecommendationToJson(const PostFilterResult& result, bool filtered,
                                 std::string_view engine);

}  // namespace agelens

#endif  // AGELENS_IO_H_
