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

#include "agelens/io.h"

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "agelens/error.h"
#include "json.hpp"

namespace agelens {

using nlohmann::json;

namespace {

json ParseJson(const std::string& text, const std::string& what) {
  json j = json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded()) throw DataError("malformed JSON in " + what);
  return j;
}

template <typename T>
T Field(const json& obj, const char* key, const std::string& what) {
  auto it = obj.find(key);
  if (it == obj.end()) throw DataError(what + ": missing field '" + key + "'");
  try {
    return it->get<T>();
  } catch (const json::exception&) {
    throw DataError(what + ": bad value for field '" + key + "'");
  }
}

std::string Dump(const json& j) {
  return j.dump(2, ' ', false, json::error_handler_t::replace) + "\n";
}

std::string Num(double v) { return json(v).dump(); }

std::vector<std::string> SplitCsvLine(const std::string& line, std::size_t max_fields) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (out.size() + 1 < max_fields) {
    const auto comma = line.find(',', start);
    if (comma == std::string::npos) break;
    out.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
  out.push_back(line.substr(start));
  if (!out.empty() && !out.back().empty() && out.back().back() == '\r') out.back().pop_back();
  return out;
}

}  // namespace

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void WriteFile(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write '" + path + "'");
  out << contents;
  if (!out) throw IoError("write failed for '" + path + "'");
}

// --- mentions ---------------------------------------------------------------

std::string MentionToJson(const AgeMention& m) {
  json j = {{"review_id", m.review_id}, {"user_id", m.user_id},
            {"item_id", m.item_id},     {"date", FormatDate(m.date)},
            {"rating", m.rating},       {"value_years", m.value_years},
            {"unit_raw", m.unit_raw},   {"possessive", m.possessive}};
  return j.dump(-1, ' ', false, json::error_handler_t::replace);
}

AgeMention MentionFromJson(const std::string& line) {
  const json j = ParseJson(line, "mention record");
  const std::string what = "mention record";
  AgeMention m;
  m.review_id = Field<std::string>(j, "review_id", what);
  m.user_id = Field<std::string>(j, "user_id", what);
  m.item_id = Field<std::string>(j, "item_id", what);
  try {
    m.date = ParseDate(Field<std::string>(j, "date", what));
  } catch (const ConfigError& e) {
    throw DataError(what + ": " + e.what());
  }
  m.rating = Field<int>(j, "rating", what);
  m.value_years = Field<double>(j, "value_years", what);
  m.unit_raw = Field<std::string>(j, "unit_raw", what);
  m.possessive = Field<bool>(j, "possessive", what);
  if (m.rating < 1 || m.rating > 5) throw DataError(what + ": rating out of range");
  if (!(m.value_years > 0.0)) throw DataError(what + ": value_years must be > 0");
  return m;
}

void WriteMentions(std::ostream& out, std::span<const AgeMention> mentions) {
  for (const auto& m : mentions) out << MentionToJson(m) << '\n';
}

MentionList ReadMentions(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open mention file '" + path + "'");
  MentionList out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(MentionFromJson(line));
    } catch (const DataError& e) {
      throw DataError(path + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

// --- lexicon ----------------------------------------------------------------

UnitLexicon LexiconFromJson(const std::string& text) {
  const json j = ParseJson(text, "lexicon");
  if (!j.is_object()) throw DataError("lexicon must be a JSON object");
  UnitLexicon lex;
  for (const auto& [key, variants] : j.items()) {
    const auto unit = UnitFromName(key);
    if (!unit) throw DataError("lexicon: unknown unit '" + key + "'");
    if (!variants.is_array()) throw DataError("lexicon: '" + key + "' must be a list");
    for (const auto& v : variants) {
      if (!v.is_string()) throw DataError("lexicon: variants must be strings");
      if (!lex.Add(*unit, v.get<std::string>())) {
        throw DataError("lexicon: variant '" + v.get<std::string>() +
                        "' listed under two units");
      }
    }
  }
  return lex;
}

UnitLexicon LoadLexicon(const std::string& source) {
  if (source.empty() || source == "builtin") return UnitLexicon::Builtin();
  return LexiconFromJson(ReadFile(source));
}

std::string LexiconToJson(const UnitLexicon& lexicon) {
  json j = json::object();
  for (Unit u : kAllUnits) {
    j[std::string(UnitName(u))] = std::vector<std::string>(
        lexicon.Variants(u).begin(), lexicon.Variants(u).end());
  }
  return Dump(j);
}

// --- item profiles ----------------------------------------------------------

std::string ItemProfilesToJson(const ItemProfileMap& profiles) {
  json arr = json::array();
  for (const auto& [id, p] : profiles) {
    arr.push_back({{"item_id", p.item_id},
                   {"strategy", std::string(StrategyName(p.strategy))},
                   {"low_years", p.low_years},
                   {"high_years", p.high_years},
                   {"n_used", p.n_used},
                   {"n_removed", p.n_removed}});
  }
  return Dump(arr);
}

ItemProfileMap ItemProfilesFromJson(const std::string& text) {
  const json arr = ParseJson(text, "item profiles");
  if (!arr.is_array()) throw DataError("item profiles must be a JSON array");
  ItemProfileMap out;
  const std::string what = "item profile";
  for (const auto& j : arr) {
    ItemAgeProfile p;
    p.item_id = Field<std::string>(j, "item_id", what);
    const auto strategy = StrategyFromName(Field<std::string>(j, "strategy", what));
    if (!strategy) throw DataError(what + ": unknown strategy");
    p.strategy = *strategy;
    p.low_years = Field<double>(j, "low_years", what);
    p.high_years = Field<double>(j, "high_years", what);
    p.n_used = Field<std::size_t>(j, "n_used", what);
    p.n_removed = Field<std::size_t>(j, "n_removed", what);
    if (p.low_years > p.high_years) throw DataError(what + ": low_years > high_years");
    out.emplace(p.item_id, std::move(p));
  }
  return out;
}

// --- user models ------------------------------------------------------------

std::string UserModelsToJson(const UserModelMap& models) {
  json arr = json::array();
  for (const auto& [key, m] : models) {
    arr.push_back({{"user_id", m.user_id},
                   {"variant", std::string(VariantName(m.variant))},
                   {"t0", FormatDate(m.t0)},
                   {"a0", m.a0},
                   {"slope", m.slope},
                   {"intercept", m.intercept},
                   {"n_points", m.n_points},
                   {"residual_rms", m.residual_rms}});
  }
  return Dump(arr);
}

UserModelMap UserModelsFromJson(const std::string& text) {
  const json arr = ParseJson(text, "user models");
  if (!arr.is_array()) throw DataError("user models must be a JSON array");
  UserModelMap out;
  const std::string what = "user model";
  for (const auto& j : arr) {
    UserAgeModel m;
    m.user_id = Field<std::string>(j, "user_id", what);
    const auto variant = VariantFromName(Field<std::string>(j, "variant", what));
    if (!variant) throw DataError(what + ": unknown variant");
    m.variant = *variant;
    try {
      m.t0 = ParseDate(Field<std::string>(j, "t0", what));
    } catch (const ConfigError& e) {
      throw DataError(what + ": " + e.what());
    }
    m.a0 = Field<double>(j, "a0", what);
    m.slope = Field<double>(j, "slope", what);
    m.intercept = Field<double>(j, "intercept", what);
    m.n_points = Field<std::size_t>(j, "n_points", what);
    m.residual_rms = Field<double>(j, "residual_rms", what);
    out.emplace(UserModelKey{m.user_id, m.variant}, std::move(m));
  }
  return out;
}

// --- ratings ----------------------------------------------------------------

std::vector<Rating> ReadRatingsCsv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open ratings file '" + path + "'");
  std::vector<Rating> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto f = SplitCsvLine(line, 4);
    if (line_no == 1 && !f.empty() && f[0] == "user_id") continue;
    const std::string where = path + ":" + std::to_string(line_no);
    if (f.size() != 4 || f[0].empty() || f[1].empty()) {
      throw DataError(where + ": expected user_id,item_id,rating,timestamp");
    }
    Rating r;
    r.user_id = f[0];
    r.item_id = f[1];
    try {
      std::size_t pos = 0;
      r.rating = std::stoi(f[2], &pos);
      if (pos != f[2].size()) throw std::invalid_argument("rating");
      r.date = DayFromUnixSeconds(std::stoll(f[3], &pos));
      if (pos != f[3].size()) throw std::invalid_argument("timestamp");
    } catch (const std::exception&) {
      throw DataError(where + ": bad rating or timestamp");
    }
    if (r.rating < 1 || r.rating > 5) throw DataError(where + ": rating outside 1..5");
    out.push_back(std::move(r));
  }
  return out;
}

void WriteRatingsCsv(std::ostream& out, std::span<const Rating> ratings) {
  out << "user_id,item_id,rating,timestamp\n";
  for (const auto& r : ratings) {
    out << r.user_id << ',' << r.item_id << ',' << r.rating << ','
        << UnixSeconds(r.date) << '\n';
  }
}

std::map<std::string, std::string> ReadItemTitles(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open item title file '" + path + "'");
  std::map<std::string, std::string> out;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    const auto f = SplitCsvLine(line, 2);
    if (first && f[0] == "item_id") {
      first = false;
      continue;
    }
    first = false;
    if (f.size() == 2 && !f[0].empty()) out[f[0]] = f[1];
  }
  return out;
}

std::string CorpusStatsToJson(const CorpusStats& s, std::size_t skipped_lines) {
  json j = {{"n_reviews", s.n_reviews},
            {"n_items", s.n_items},
            {"n_users", s.n_users},
            {"n_users_with_possessives", s.n_users_with_possessives},
            {"n_mentions", s.n_mentions},
            {"n_possessive_mentions", s.n_possessive_mentions},
            {"avg_reviews_per_item", s.avg_reviews_per_item},
            {"avg_terms_per_user", s.avg_terms_per_user},
            {"avg_poss_terms_per_user", s.avg_poss_terms_per_user},
            {"skipped_lines", skipped_lines}};
  return Dump(j);
}

// --- experiment config ------------------------------------------------------

namespace {

std::string ResolvePath(const std::string& p, const std::string& base_dir) {
  if (p.empty() || p == "builtin" || base_dir.empty()) return p;
  const std::filesystem::path path(p);
  if (path.is_absolute()) return p;
  return (std::filesystem::path(base_dir) / path).lexically_normal().string();
}

std::string_view VariantStrategyName(VariantStrategy s) {
  return s == VariantStrategy::kEditDistance ? "edit-distance" : "skip-gram";
}

}  // namespace

ExperimentConfig ExperimentConfigFromJson(const std::string& text,
                                          const std::string& base_dir) {
  const json j = json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded() || !j.is_object()) {
    throw ConfigError("config must be a JSON object");
  }
  ExperimentConfig c;
  std::set<std::string> unknown;
  for (const auto& [key, value] : j.items()) {
    auto get = [&](auto& dst) {
      try {
        value.get_to(dst);
      } catch (const json::exception&) {
        throw ConfigError("config field '" + key + "': wrong type");
      }
    };
    auto get_size = [&](std::size_t& dst) {
      if (!value.is_number_integer() || value.get<std::int64_t>() < 0) {
        throw ConfigError("config field '" + key + "': expected a non-negative integer");
      }
      dst = value.get<std::size_t>();
    };
    if (key == "reviews") get(c.reviews);
    else if (key == "ratings") get(c.ratings);
    else if (key == "mentions") get(c.mentions);
    else if (key == "lexicon") get(c.lexicon);
    else if (key == "item_titles") get(c.item_titles);
    else if (key == "engines") {
      std::vector<std::string> names;
      get(names);
      c.engines.clear();
      for (const auto& name : names) {
        auto e = EngineFromName(name);
        if (!e) throw ConfigError("config field 'engines': unknown engine '" + name + "'");
        c.engines.push_back(*e);
      }
    }
    else if (key == "n") get_size(c.n);
    else if (key == "oversample") get_size(c.oversample);
    else if (key == "relevance_threshold") get(c.relevance_threshold);
    else if (key == "train_fraction") get(c.train_fraction);
    else if (key == "poss_window") get_size(c.extract.poss_window);
    else if (key == "max_years") get(c.extract.max_years);
    else if (key == "discover_variants") get(c.discover_variants);
    else if (key == "variant_strategy") {
      std::string s;
      get(s);
      if (s == "edit-distance") c.discovery.strategy = VariantStrategy::kEditDistance;
      else if (s == "skip-gram") c.discovery.strategy = VariantStrategy::kSkipGram;
      else throw ConfigError("config field 'variant_strategy': unknown value '" + s + "'");
    }
    else if (key == "variant_window") get(c.discovery.window);
    else if (key == "variant_min_count") get_size(c.discovery.min_count);
    else if (key == "variant_similarity") get(c.discovery.similarity_threshold);
    else if (key == "strategy") {
      std::string s;
      get(s);
      auto st = StrategyFromName(s);
      if (!st) throw ConfigError("config field 'strategy': unknown value '" + s + "'");
      c.items.strategy = *st;
    }
    else if (key == "min_reviews") get_size(c.items.min_reviews);
    else if (key == "p_low") get(c.items.tukey.p_low);
    else if (key == "p_high") get(c.items.tukey.p_high);
    else if (key == "fence_k") get(c.items.tukey.fence_k);
    else if (key == "k") get_size(c.users.k);
    else if (key == "user_tukey") get(c.users.user_tukey);
    else if (key == "neighborhood") get_size(c.engine.neighborhood);
    else if (key == "als_rank") get_size(c.engine.als_rank);
    else if (key == "als_lambda") get(c.engine.als_lambda);
    else if (key == "als_sweeps") get_size(c.engine.als_sweeps);
    else if (key == "seed") {
      if (!value.is_number_integer() || value.get<std::int64_t>() < 0) {
        throw ConfigError("config field 'seed': expected a non-negative integer");
      }
      c.seed = value.get<std::uint64_t>();
    }
    else if (key == "threads") get(c.threads);
    else unknown.insert(key);
  }
  if (!unknown.empty()) {
    std::string names;
    for (const auto& k : unknown) names += (names.empty() ? "" : ", ") + k;
    throw ConfigError("unknown config field(s): " + names);
  }
  c.users.tukey = c.items.tukey;
  c.reviews = ResolvePath(c.reviews, base_dir);
  c.ratings = ResolvePath(c.ratings, base_dir);
  c.mentions = ResolvePath(c.mentions, base_dir);
  c.lexicon = ResolvePath(c.lexicon, base_dir);
  c.item_titles = ResolvePath(c.item_titles, base_dir);
  ValidateConfig(c, /*require_inputs=*/false);
  return c;
}

ExperimentConfig LoadExperimentConfig(const std::string& path) {
  std::string text;
  try {
    text = ReadFile(path);
  } catch (const IoError& e) {
    throw ConfigError(e.what());
  }
  return ExperimentConfigFromJson(
      text, std::filesystem::path(path).parent_path().string());
}

std::string ExperimentConfigToJson(const ExperimentConfig& c) {
  std::vector<std::string> engines;
  for (auto e : c.engines) engines.emplace_back(EngineName(e));
  json j = {
      {"reviews", c.reviews},
      {"ratings", c.ratings},
      {"mentions", c.mentions},
      {"lexicon", c.lexicon},
      {"item_titles", c.item_titles},
      {"engines", engines},
      {"n", c.n},
      {"oversample", c.oversample},
      {"relevance_threshold", c.relevance_threshold},
      {"train_fraction", c.train_fraction},
      {"poss_window", c.extract.poss_window},
      {"max_years", c.extract.max_years},
      {"discover_variants", c.discover_variants},
      {"variant_strategy", std::string(VariantStrategyName(c.discovery.strategy))},
      {"variant_window", c.discovery.window},
      {"variant_min_count", c.discovery.min_count},
      {"variant_similarity", c.discovery.similarity_threshold},
      {"strategy", std::string(StrategyName(c.items.strategy))},
      {"min_reviews", c.items.min_reviews},
      {"p_low", c.items.tukey.p_low},
      {"p_high", c.items.tukey.p_high},
      {"fence_k", c.items.tukey.fence_k},
      {"k", c.users.k},
      {"user_tukey", c.users.user_tukey},
      {"neighborhood", c.engine.neighborhood},
      {"als_rank", c.engine.als_rank},
      {"als_lambda", c.engine.als_lambda},
      {"als_sweeps", c.engine.als_sweeps},
      {"seed", c.seed},
  };
  return Dump(j);
}

// --- reports ----------------------------------------------------------------

std::string ReportToJson(const EvalReport& r, const ExperimentConfig& config) {
  json strategies = json::array();
  for (const auto& s : r.strategies) {
    strategies.push_back({{"name", s.name},
                          {"engine", s.engine},
                          {"post_filtered", s.post_filtered},
                          {"oversample", s.oversample},
                          {"ndcg", s.metrics.ndcg},
                          {"map", s.metrics.map},
                          {"precision", s.metrics.precision},
                          {"recall", s.metrics.recall},
                          {"mean_list_length", s.mean_list_length}});
  }
  json series = json::array();
  for (const auto& p : r.drift.series) {
    series.push_back({{"bucket", p.bucket},
                      {"source", p.source},
                      {"delta_years", p.delta_years},
                      {"n_users", p.n_users}});
  }
  json drift_mean = json::object();
  for (const auto& [source, d] : r.drift.mean_delta) {
    drift_mean[source] = {{"delta_years", d}, {"n_users", r.drift.n_users.at(source)}};
  }
  json examples = json::array();
  for (const auto& e : r.filtered_examples) {
    examples.push_back({{"user_id", e.user_id},
                        {"item_id", e.item_id},
                        {"title", e.title},
                        {"low_years", e.low_years},
                        {"high_years", e.high_years},
                        {"predicted_age_years", e.predicted_age_years},
                        {"engine", e.engine}});
  }
  // The config echo omits threads: results must not depend on it.
  json j = {
      {"at", r.n},
      {"relevance_threshold", r.relevance_threshold},
      {"counts",
       {{"train_ratings", r.n_train},
        {"test_ratings", r.n_test},
        {"eval_users", r.n_eval_users},
        {"train_mentions", r.n_train_mentions},
        {"item_profiles", r.n_item_profiles},
        {"user_models", r.n_user_models},
        {"eval_users_without_model", r.n_users_without_model}}},
      {"strategies", strategies},
      {"drift", {{"series", series}, {"mean", drift_mean}}},
      {"filtered_examples", examples},
      {"notes", r.notes},
      {"config", json::parse(ExperimentConfigToJson(config))},
  };
  return Dump(j);
}

std::string DriftToCsv(const DriftResult& drift) {
  std::string out = "bucket,source,delta_years\n";
  for (const auto& p : drift.series) {
    out += p.bucket + "," + p.source + "," + Num(p.delta_years) + "\n";
  }
  return out;
}

DriftResult DriftFromReportJson(const std::string& report_text) {
  const json j = ParseJson(report_text, "report");
  DriftResult d;
  try {
    for (const auto& p : j.at("drift").at("series")) {
      d.series.push_back({p.at("bucket").get<std::string>(), p.at("source").get<std::string>(),
                          p.at("delta_years").get<double>(), p.at("n_users").get<std::size_t>()});
    }
    for (const auto& [source, v] : j.at("drift").at("mean").items()) {
      d.mean_delta[source] = v.at("delta_years").get<double>();
      d.n_users[source] = v.at("n_users").get<std::size_t>();
    }
  } catch (const json::exception& e) {
    throw DataError(std::string("report has no usable drift section: ") + e.what());
  }
  return d;
}

std::string RecommendationToJson(const PostFilterResult& result, bool filtered,
                                 std::string_view engine) {
  json entries = json::array();
  for (const auto& e : result.list.entries) {
    entries.push_back({{"item_id", e.item_id}, {"score", e.score}});
  }
  json verdicts = json::array();
  for (const auto& v : result.verdicts) {
    json jv = {{"item_id", v.item_id}, {"verdict", std::string(VerdictName(v.verdict))}};
    if (v.low_years) jv["low_years"] = *v.low_years;
    if (v.high_years) jv["high_years"] = *v.high_years;
    verdicts.push_back(std::move(jv));
  }
  json j = {{"user_id", result.list.user_id},
            {"generated_at", FormatDate(result.list.generated_at)},
            {"engine", std::string(engine)},
            {"post_filter", filtered},
            {"unfiltered", result.unfiltered},
            {"entries", entries},
            {"verdicts", verdicts}};
  if (result.target_age_years) j["target_age_years"] = *result.target_age_years;
  return Dump(j);
}

}  // namespace agelens
