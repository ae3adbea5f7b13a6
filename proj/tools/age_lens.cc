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

// age-lens: command line front end for the age-aware recommendation pipeline.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "agelens/corpus.h"
#include "agelens/error.h"
#include "agelens/experiment.h"
#include "agelens/extract.h"
#include "agelens/io.h"
#include "agelens/item_profile.h"
#include "agelens/lexicon.h"
#include "agelens/post_filter.h"
#include "agelens/ratings.h"
#include "agelens/recommender.h"
#include "agelens/synth.h"
#include "agelens/user_profile.h"
#include "json.hpp"
#include "stage_cache.h"

namespace agelens::tools {
namespace {

using nlohmann::json;

enum class Level { kError, kWarn, kInfo, kDebug };

struct Globals {
  int threads = 1;
  std::optional<std::uint64_t> seed;
  bool force = false;
  std::string log_level = "warn";

  Level level() const {
    if (log_level == "error") return Level::kError;
    if (log_level == "info") return Level::kInfo;
    if (log_level == "debug") return Level::kDebug;
    return Level::kWarn;
  }
  std::uint64_t seed_or(std::uint64_t fallback) const { return seed.value_or(fallback); }
};

Globals g;

void Log(Level level, const std::string& msg) {
  static constexpr const char* kNames[] = {"error", "warn", "info", "debug"};
  if (level <= g.level()) std::cerr << "[" << kNames[static_cast<int>(level)] << "] " << msg << "\n";
}

std::string Num(double v) { return json(v).dump(); }

void Emit(const std::string& out, const std::string& body) {
  if (out.empty() || out == "-") {
    std::cout << body;
  } else {
    if (auto parent = std::filesystem::path(out).parent_path(); !parent.empty()) {
      std::filesystem::create_directories(parent);
    }
    WriteFile(out, body);
    Log(Level::kInfo, "wrote " + out);
  }
}

// Runs `work` unless every output already carries a matching stamp. Stages
// writing to stdout always run.
template <typename Work>
void Staged(const std::vector<std::string>& outputs, const StageKey& key, Work&& work) {
  std::vector<std::string> files;
  for (const auto& o : outputs) {
    if (!o.empty() && o != "-") files.push_back(o);
  }
  if (!g.force && files.size() == outputs.size() && UpToDate(files, key)) {
    Log(Level::kInfo, "outputs up to date (" + key.Hex() + "); use --force to rerun");
    return;
  }
  work();
  if (files.size() == outputs.size()) WriteStamps(files, key);
}

Day ParseDay(const std::string& s) { return ParseDate(s); }

bool OnOff(const std::string& v, const char* flag) {
  if (v == "on") return true;
  if (v == "off") return false;
  throw ConfigError(std::string(flag) + " must be on or off");
}

// --- stats / extract --------------------------------------------------------

struct ExtractArgs {
  std::string input;
  std::string lexicon = "builtin";
  std::string out;
  std::string lexicon_out;
  std::string discover = "on";
  std::string variant_strategy = "edit-distance";
  std::size_t variant_min_count = 5;
  ExtractOptions extract;
};

VariantDiscoveryOptions DiscoveryFrom(const ExtractArgs& a) {
  VariantDiscoveryOptions d;
  if (a.variant_strategy == "edit-distance") d.strategy = VariantStrategy::kEditDistance;
  else if (a.variant_strategy == "skip-gram") d.strategy = VariantStrategy::kSkipGram;
  else throw ConfigError("--variant-strategy must be edit-distance or skip-gram");
  d.min_count = a.variant_min_count;
  return d;
}

struct Extracted {
  LoadedCorpus corpus;
  UnitLexicon lexicon;
  MentionList mentions;
};

Extracted RunExtraction(const ExtractArgs& a) {
  Extracted e;
  e.corpus = LoadReviews(a.input);
  if (e.corpus.skipped > 0) {
    Log(Level::kWarn, "skipped " + std::to_string(e.corpus.skipped) + " malformed lines in " + a.input);
  }
  e.lexicon = LoadLexicon(a.lexicon);
  if (OnOff(a.discover, "--discover")) {
    const auto sentences = TokenizeCorpus(e.corpus.reviews);
    const std::size_t before = e.lexicon.size();
    e.lexicon = DiscoverUnitVariants(sentences, e.lexicon, DiscoveryFrom(a));
    Log(Level::kInfo, "variant discovery added " + std::to_string(e.lexicon.size() - before) + " variants");
  }
  ExtractDiagnostics diag;
  e.mentions = ExtractCorpus(e.corpus.reviews, e.lexicon, a.extract, g.threads, &diag);
  Log(Level::kInfo, "phrases " + std::to_string(diag.phrases) + ", unparseable " +
                        std::to_string(diag.unparseable) + ", non-positive " +
                        std::to_string(diag.non_positive) + ", above cap " +
                        std::to_string(diag.above_cap));
  return e;
}

StageKey ExtractKey(const char* stage, const ExtractArgs& a) {
  StageKey k(stage);
  k.AddFile("input", a.input).AddFile("lexicon", a.lexicon);
  k.Add("discover", a.discover).Add("variant_strategy", a.variant_strategy);
  k.Add("variant_min_count", a.variant_min_count);
  k.Add("poss_window", a.extract.poss_window).Add("max_years", Num(a.extract.max_years));
  return k;
}

void AddExtractFlags(CLI::App* sub, ExtractArgs& a) {
  sub->add_option("--input", a.input, "Reviews, JSON lines")->required();
  sub->add_option("--lexicon", a.lexicon, "builtin or a lexicon JSON file");
  sub->add_option("--discover", a.discover, "Unit variant discovery (on|off)");
  sub->add_option("--variant-strategy", a.variant_strategy, "edit-distance|skip-gram");
  sub->add_option("--variant-min-count", a.variant_min_count);
  sub->add_option("--poss-window", a.extract.poss_window);
  sub->add_option("--max-years", a.extract.max_years);
}

// --- commands ---------------------------------------------------------------

struct Args {
  ExtractArgs extract;
  ExtractArgs stats;

  std::string mentions, out, strategy = "rating-poss", models, user, date;
  std::size_t min_reviews = 4;
  TukeyOptions tukey;
  std::string fallback = "off";
  std::size_t k = 4;
  bool user_tukey = false;
  std::string variant;

  std::string ratings, engine = "ub-cf", post_filter = "on", item_profiles, user_models;
  std::size_t n = 10, oversample = 5;
  EngineOptions engine_opts;

  std::string config, drift_csv, report, report_out = "report.json";

  SynthOptions synth;
  std::string synth_out = "synth";
};

void CmdStats(const Args& a) {
  Extracted e = RunExtraction(a.stats);
  std::cout << CorpusStatsToJson(ComputeCorpusStats(e.corpus.reviews, e.mentions), e.corpus.skipped);
}

void CmdExtract(const Args& a) {
  const auto& x = a.extract;
  std::vector<std::string> outs = {x.out};
  if (!x.lexicon_out.empty()) outs.push_back(x.lexicon_out);
  Staged(outs, ExtractKey("extract", x), [&] {
    Extracted e = RunExtraction(x);
    std::ostringstream os;
    WriteMentions(os, e.mentions);
    Emit(x.out, os.str());
    if (!x.lexicon_out.empty()) Emit(x.lexicon_out, LexiconToJson(e.lexicon));
    Log(Level::kInfo, std::to_string(e.mentions.size()) + " mentions");
  });
}

void CmdProfileItems(const Args& a) {
  const auto strategy = StrategyFromName(a.strategy);
  if (!strategy) throw ConfigError("--strategy must be all|rating|poss|rating-poss");
  ItemProfileOptions o;
  o.strategy = *strategy;
  o.min_reviews = a.min_reviews;
  o.tukey = a.tukey;
  if (o.min_reviews == 0) throw ConfigError("--min-reviews must be >= 1");
  const bool fallback = OnOff(a.fallback, "--fallback");
  StageKey k("profile-items");
  k.AddFile("mentions", a.mentions).Add("strategy", a.strategy).Add("min_reviews", a.min_reviews);
  k.Add("p_low", Num(a.tukey.p_low)).Add("p_high", Num(a.tukey.p_high)).Add("fence_k", Num(a.tukey.fence_k));
  k.Add("fallback", a.fallback);
  Staged({a.out}, k, [&] {
    const MentionList m = ReadMentions(a.mentions);
    const ItemProfileMap p = fallback ? ProfileItemsWithFallback(m, o) : ProfileItems(m, o);
    Emit(a.out, ItemProfilesToJson(p));
    Log(Level::kInfo, std::to_string(p.size()) + " item profiles");
  });
}

void CmdProfileUsers(const Args& a) {
  UserModelOptions o;
  o.k = a.k;
  o.user_tukey = a.user_tukey;
  o.tukey = a.tukey;
  if (o.k == 0) throw ConfigError("--k must be >= 1");
  StageKey k("profile-users");
  k.AddFile("mentions", a.mentions).Add("k", a.k).Add("user_tukey", a.user_tukey ? 1 : 0);
  k.Add("p_low", Num(a.tukey.p_low)).Add("p_high", Num(a.tukey.p_high)).Add("fence_k", Num(a.tukey.fence_k));
  Staged({a.out}, k, [&] {
    const MentionList m = ReadMentions(a.mentions);
    const UserModelMap models = BuildUserModels(m, o, g.threads);
    Emit(a.out, UserModelsToJson(models));
    Log(Level::kInfo, std::to_string(models.size()) + " user models");
  });
}

void CmdPredictAge(const Args& a) {
  const Day t = ParseDay(a.date);
  const UserModelMap models = UserModelsFromJson(ReadFile(a.models));
  const UserAgeModel* m = SelectUserModel(models, a.user);
  if (m == nullptr) throw DataError("no age model for user '" + a.user + "'");
  std::cout << Num(TargetAge(*m, t)) << "\n";
}

void CmdRegressionDump(const Args& a) {
  ModelVariant variant = ModelVariant::kPossessive;
  if (!a.variant.empty()) {
    auto v = VariantFromName(a.variant);
    if (!v) throw ConfigError("--variant must be possessive or all-terms");
    variant = *v;
  }
  const MentionList m = ReadMentions(a.mentions);
  const UserStreams streams = CollectUserMentions(a.user, m);
  std::vector<TimedAge> stream;
  if (variant == ModelVariant::kPossessive) {
    stream = streams.possessive;
  } else {
    stream = streams.possessive;
    stream.insert(stream.end(), streams.general.begin(), streams.general.end());
    std::sort(stream.begin(), stream.end(), [](const TimedAge& x, const TimedAge& y) {
      return std::tie(x.date, x.review_id, x.value_years) < std::tie(y.date, y.review_id, y.value_years);
    });
  }
  if (stream.empty()) throw DataError("user '" + a.user + "' has no " + std::string(VariantName(variant)) + " mentions");
  const auto deltas = AgeTimeNormalization(stream);
  std::string csv = "date,value_years,dt_years,dage_years\n";
  for (std::size_t i = 0; i < stream.size(); ++i) {
    csv += FormatDate(stream[i].date) + "," + Num(stream[i].value_years) + "," +
           Num(deltas[i].dt_years) + "," + Num(deltas[i].dage_years) + "\n";
  }
  Emit(a.out, csv);
}

void CmdRecommend(const Args& a) {
  const auto engine = EngineFromName(a.engine);
  if (!engine) throw ConfigError("--engine must be ub-cf|ib-cf|mf-als");
  if (a.n == 0 || a.oversample == 0) throw ConfigError("--n and --oversample must be >= 1");
  const bool filter = OnOff(a.post_filter, "--post-filter");
  if (filter && a.item_profiles.empty()) throw ConfigError("--post-filter on needs --item-profiles");
  const Day t = ParseDay(a.date);

  StageKey k("recommend");
  k.AddFile("ratings", a.ratings).Add("engine", a.engine).Add("user", a.user).Add("date", a.date);
  k.Add("n", a.n).Add("oversample", a.oversample).Add("post_filter", a.post_filter);
  k.AddFile("item_profiles", a.item_profiles).AddFile("user_models", a.user_models);
  k.Add("neighborhood", a.engine_opts.neighborhood).Add("als_rank", a.engine_opts.als_rank);
  k.Add("als_lambda", Num(a.engine_opts.als_lambda)).Add("als_sweeps", a.engine_opts.als_sweeps);
  k.Add("seed", g.seed_or(42));

  Staged({a.out}, k, [&] {
    // Only ratings known at the recommendation date are used.
    std::vector<Rating> ratings;
    for (auto& r : ReadRatingsCsv(a.ratings)) {
      if (r.date <= t) ratings.push_back(std::move(r));
    }
    ratings = DeduplicateRatings(ratings);
    if (ratings.empty()) throw DataError("no ratings on or before " + a.date);
    const RatingMatrix matrix(ratings);
    EngineOptions eo = a.engine_opts;
    eo.seed = g.seed_or(42);
    eo.threads = g.threads;
    const auto rec = MakeRecommender(*engine, matrix, eo);

    ItemProfileMap profiles;
    if (!a.item_profiles.empty()) profiles = ItemProfilesFromJson(ReadFile(a.item_profiles));
    UserModelMap models;
    if (!a.user_models.empty()) models = UserModelsFromJson(ReadFile(a.user_models));
    const UserAgeModel* model = SelectUserModel(models, a.user);
    if (filter && model == nullptr) {
      Log(Level::kWarn, "no age model for '" + a.user + "'; list is returned unfiltered");
    }
    const PostFilterResult res =
        RecommendFor(*rec, a.user, t, a.n, filter ? a.oversample : 1, filter, model, profiles);
    Emit(a.out, RecommendationToJson(res, filter, a.engine));
  });
}

void CmdEvaluate(const Args& a, const CLI::App& sub) {
  ExperimentConfig c = LoadExperimentConfig(a.config);
  if (g.seed) c.seed = *g.seed;
  if (sub.get_parent()->count("--threads") > 0) c.threads = g.threads;
  c.engine.seed = c.seed;
  c.engine.threads = c.threads;
  ValidateConfig(c, /*require_inputs=*/true);

  StageKey k("evaluate");
  k.Add("config", ExperimentConfigToJson(c));
  k.AddFile("reviews", c.reviews).AddFile("ratings", c.ratings).AddFile("mentions", c.mentions);
  k.AddFile("lexicon", c.lexicon).AddFile("item_titles", c.item_titles);
  std::vector<std::string> outs = {a.report_out};
  if (!a.drift_csv.empty()) outs.push_back(a.drift_csv);

  Staged(outs, k, [&] {
    ExperimentData d;
    if (!c.reviews.empty()) {
      LoadedCorpus corpus = LoadReviews(c.reviews);
      if (corpus.skipped > 0) Log(Level::kWarn, "skipped " + std::to_string(corpus.skipped) + " malformed review lines");
      d.reviews = std::move(corpus.reviews);
    }
    if (!c.ratings.empty()) d.ratings = ReadRatingsCsv(c.ratings);
    if (!c.mentions.empty()) d.mentions = ReadMentions(c.mentions);
    if (!c.item_titles.empty()) d.item_titles = ReadItemTitles(c.item_titles);
    const EvalReport report = RunExperiment(d, c, LoadLexicon(c.lexicon));
    Emit(a.report_out, ReportToJson(report, c));
    if (!a.drift_csv.empty()) Emit(a.drift_csv, DriftToCsv(report.drift));
    for (const auto& s : report.strategies) {
      Log(Level::kInfo, s.name + ": ndcg " + Num(s.metrics.ndcg) + " map " + Num(s.metrics.map));
    }
  });
}

void CmdDriftReport(const Args& a) {
  StageKey k("drift-report");
  k.AddFile("report", a.report);
  Staged({a.out}, k, [&] { Emit(a.out, DriftToCsv(DriftFromReportJson(ReadFile(a.report)))); });
}

void CmdSynthGen(const Args& a) {
  SynthOptions o = a.synth;
  o.seed = g.seed_or(o.seed);
  StageKey k("synth-gen");
  k.Add("users", o.n_users).Add("items", o.n_items).Add("seed", o.seed).Add("noise", Num(o.noise));
  k.Add("min_purchases", o.min_purchases).Add("max_purchases", o.max_purchases);
  const std::filesystem::path dir(a.synth_out);
  Staged({(dir / "reviews.jsonl").string()}, k, [&] {
    const auto files = WriteSynthetic(GenerateSynthetic(o), a.synth_out);
    Log(Level::kInfo, "wrote " + std::to_string(files.size()) + " files to " + a.synth_out);
  });
}

int ErrorExit(int code, std::string_view kind, const std::string& message) {
  json j = {{"error", {{"kind", kind}, {"message", message}, {"exit_code", code}}}};
  std::cerr << j.dump(-1, ' ', false, json::error_handler_t::replace) << "\n";
  return code;
}

int Main(int argc, char** argv) {
  CLI::App app{"Age-aware review mining and recommendation pipeline", "age-lens"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--threads", g.threads, "Worker threads")->check(CLI::PositiveNumber);
  app.add_option("--seed", g.seed, "Random seed");
  app.add_flag("--force", g.force, "Rerun stages whose outputs are up to date");
  app.add_option("--log-level", g.log_level, "error|warn|info|debug")
      ->check(CLI::IsMember({"error", "warn", "info", "debug"}));

  Args a;
  auto* stats = app.add_subcommand("stats", "Corpus statistics as JSON");
  AddExtractFlags(stats, a.stats);

  auto* extract = app.add_subcommand("extract", "Extract age mentions");
  AddExtractFlags(extract, a.extract);
  extract->add_option("--out", a.extract.out, "Mentions JSON lines")->required();
  extract->add_option("--lexicon-out", a.extract.lexicon_out, "Write the effective lexicon");

  auto add_tukey = [&](CLI::App* s) {
    s->add_option("--p-low", a.tukey.p_low);
    s->add_option("--p-high", a.tukey.p_high);
    s->add_option("--fence-k", a.tukey.fence_k);
  };
  auto* items = app.add_subcommand("profile-items", "Item target-age ranges");
  items->add_option("--mentions", a.mentions)->required();
  items->add_option("--strategy", a.strategy, "all|rating|poss|rating-poss");
  items->add_option("--min-reviews", a.min_reviews);
  items->add_option("--fallback", a.fallback, "Fall back to all mentions (on|off)");
  items->add_option("--out", a.out)->required();
  add_tukey(items);

  auto* users = app.add_subcommand("profile-users", "Per-user age models");
  users->add_option("--mentions", a.mentions)->required();
  users->add_option("--k", a.k, "Minimum mentions per user");
  users->add_flag("--user-tukey", a.user_tukey, "Tukey-filter each user's values");
  users->add_option("--out", a.out)->required();
  add_tukey(users);

  auto* predict = app.add_subcommand("predict-age", "Predicted target age in years");
  predict->add_option("--models", a.models)->required();
  predict->add_option("--user", a.user)->required();
  predict->add_option("--date", a.date)->required();

  auto* dump = app.add_subcommand("regression-dump", "A user's (dt, dage) pairs as CSV");
  dump->add_option("--mentions", a.mentions)->required();
  dump->add_option("--user", a.user)->required();
  dump->add_option("--variant", a.variant, "possessive|all-terms");
  dump->add_option("--out", a.out, "CSV path (default stdout)");

  auto* rec = app.add_subcommand("recommend", "Top-n list for one user");
  rec->add_option("--ratings", a.ratings)->required();
  rec->add_option("--engine", a.engine, "ub-cf|ib-cf|mf-als");
  rec->add_option("--user", a.user)->required();
  rec->add_option("--date", a.date)->required();
  rec->add_option("--n", a.n);
  rec->add_option("--oversample", a.oversample);
  rec->add_option("--post-filter", a.post_filter, "on|off");
  rec->add_option("--item-profiles", a.item_profiles);
  rec->add_option("--user-models", a.user_models);
  rec->add_option("--neighborhood", a.engine_opts.neighborhood);
  rec->add_option("--als-rank", a.engine_opts.als_rank);
  rec->add_option("--als-lambda", a.engine_opts.als_lambda);
  rec->add_option("--als-sweeps", a.engine_opts.als_sweeps);
  rec->add_option("--out", a.out, "JSON path (default stdout)");

  auto* eval = app.add_subcommand("evaluate", "Temporal-split evaluation");
  eval->add_option("--config", a.config, "Experiment config (JSON)")->required();
  eval->add_option("--out", a.report_out, "Report path");
  eval->add_option("--drift-csv", a.drift_csv, "Drift series CSV");

  auto* drift = app.add_subcommand("drift-report", "Drift series from a report");
  drift->add_option("--report", a.report)->required();
  drift->add_option("--out", a.out, "CSV path (default stdout)");

  auto* synth = app.add_subcommand("synth-gen", "Synthetic corpus with ground truth");
  synth->add_option("--users", a.synth.n_users)->check(CLI::PositiveNumber);
  synth->add_option("--items", a.synth.n_items)->check(CLI::PositiveNumber);
  synth->add_option("--noise", a.synth.noise)->check(CLI::Range(0.0, 1.0));
  synth->add_option("--min-purchases", a.synth.min_purchases);
  synth->add_option("--max-purchases", a.synth.max_purchases);
  synth->add_option("--out", a.synth_out, "Output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << app.help();
    return ErrorExit(1, "usage", e.what());
  }

  try {
    if (*stats) CmdStats(a);
    else if (*extract) CmdExtract(a);
    else if (*items) CmdProfileItems(a);
    else if (*users) CmdProfileUsers(a);
    else if (*predict) CmdPredictAge(a);
    else if (*dump) CmdRegressionDump(a);
    else if (*rec) CmdRecommend(a);
    else if (*eval) CmdEvaluate(a, *eval);
    else if (*drift) CmdDriftReport(a);
    else if (*synth) CmdSynthGen(a);
  } catch (const ConfigError& e) {
    return ErrorExit(1, "config", e.what());
  } catch (const LeakageError& e) {
    return ErrorExit(2, "leakage", e.what());
  } catch (const EmptyCorpusError& e) {
    return ErrorExit(2, "empty-corpus", e.what());
  } catch (const IoError& e) {
    return ErrorExit(2, "io", e.what());
  } catch (const DataError& e) {
    return ErrorExit(2, "data", e.what());
  } catch (const std::filesystem::filesystem_error& e) {
    return ErrorExit(2, "io", e.what());
  }
  return 0;
}

}  // namespace
}  // namespace agelens::tools

int main(int argc, char** argv) { return agelens::tools::Main(argc, argv); }
