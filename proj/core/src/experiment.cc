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

#include "agelens/experiment.h"

#include <algorithm>
#include <memory>

#include "agelens/error.h"
#include "agelens/parallel.h"
#include "agelens/post_filter.h"

namespace agelens {

namespace {

void Require(bool ok, const std::string& field, const std::string& why) {
  if (!ok) throw ConfigError("config field '" + field + "': " + why);
}

bool OnTrainSide(const std::string& user, const std::string& item, Day date,
                 const TemporalSplit& split,
                 const std::set<std::pair<std::string, std::string>>& train_pairs) {
  if (!train_pairs.contains({user, item})) return false;
  auto cut = split.cut.find(user);
  return cut == split.cut.end() || date <= cut->second;
}

struct UserOutcome {
  std::vector<std::string> base, pf, pf_m1;
  bool has_model = false;
  std::vector<FilteredExample> removed;
};

std::vector<std::string> Ids(std::span<const ScoredItem> items) {
  std::vector<std::string> out;
  out.reserve(items.size());
  for (const auto& s : items) out.push_back(s.item_id);
  return out;
}

}  // namespace

void ValidateConfig(const ExperimentConfig& c, bool require_inputs) {
  if (require_inputs) {
    Require(!c.reviews.empty() || (!c.ratings.empty() && !c.mentions.empty()),
            "reviews", "set 'reviews', or both 'ratings' and 'mentions'");
  }
  Require(!c.engines.empty(), "engines", "at least one engine required");
  Require(c.n >= 1, "n", "must be >= 1");
  Require(c.oversample >= 1, "oversample", "must be >= 1");
  Require(c.relevance_threshold >= 1 && c.relevance_threshold <= 5,
          "relevance_threshold", "must be in [1, 5]");
  Require(c.train_fraction > 0.0 && c.train_fraction < 1.0, "train_fraction",
          "must be in (0, 1)");
  Require(c.extract.poss_window >= 1, "poss_window", "must be >= 1");
  Require(c.extract.max_years > 0.0, "max_years", "must be > 0");
  Require(c.discovery.window >= 1, "variant_window", "must be >= 1");
  Require(c.discovery.min_count >= 1, "variant_min_count", "must be >= 1");
  Require(c.items.min_reviews >= 1, "min_reviews", "must be >= 1");
  Require(c.users.k >= 1, "k", "must be >= 1");
  for (const auto* t : {&c.items.tukey, &c.users.tukey}) {
    Require(t->p_low > 0.0 && t->p_low < 1.0, "p_low", "must be in (0, 1)");
    Require(t->p_high > 0.0 && t->p_high < 1.0, "p_high", "must be in (0, 1)");
    Require(t->p_low <= t->p_high, "p_low", "must not exceed p_high");
    Require(t->fence_k >= 0.0, "fence_k", "must be >= 0");
  }
  Require(c.engine.neighborhood >= 1, "neighborhood", "must be >= 1");
  Require(c.engine.als_rank >= 1, "als_rank", "must be >= 1");
  Require(c.engine.als_lambda > 0.0, "als_lambda", "must be > 0");
  Require(c.engine.als_sweeps >= 1, "als_sweeps", "must be >= 1");
  Require(c.threads >= 1, "threads", "must be >= 1");
}

const StrategyResult* EvalReport::Find(const std::string& name) const {
  for (const auto& s : strategies) {
    if (s.name == name) return &s;
  }
  return nullptr;
}

void AssertNoLeakage(std::span<const AgeMention> mentions, const TemporalSplit& split) {
  const auto train_pairs = split.TrainPairs();
  for (const auto& m : mentions) {
    if (!OnTrainSide(m.user_id, m.item_id, m.date, split, train_pairs)) {
      throw LeakageError("mention from review '" + m.review_id + "' (user " +
                         m.user_id + ", item " + m.item_id +
                         ") is not on the train side of the split");
    }
  }
}

MentionList RestrictToTrain(std::span<const AgeMention> mentions,
                            const TemporalSplit& split) {
  const auto train_pairs = split.TrainPairs();
  MentionList out;
  for (const auto& m : mentions) {
    if (OnTrainSide(m.user_id, m.item_id, m.date, split, train_pairs)) out.push_back(m);
  }
  return out;
}

EvalReport RunExperiment(const ExperimentData& data, const ExperimentConfig& config,
                         const UnitLexicon& lexicon) {
  ValidateConfig(config, /*require_inputs=*/false);
  std::vector<Rating> ratings =
      data.ratings.empty() ? RatingsFromReviews(data.reviews) : data.ratings;
  if (ratings.empty()) throw DataError("experiment has no ratings");

  const TemporalSplit split = SplitTemporal(ratings, config.train_fraction);

  MentionList train_mentions;
  if (data.mentions) {
    train_mentions = RestrictToTrain(*data.mentions, split);
  } else {
    const auto train_pairs = split.TrainPairs();
    std::vector<ReviewRecord> train_reviews;
    for (const auto& r : data.reviews) {
      if (OnTrainSide(r.user_id, r.item_id, r.date, split, train_pairs)) {
        train_reviews.push_back(r);
      }
    }
    UnitLexicon lex = lexicon;
    if (config.discover_variants) {
      lex = DiscoverUnitVariants(TokenizeCorpus(train_reviews), lexicon, config.discovery);
    }
    train_mentions = ExtractCorpus(train_reviews, lex, config.extract, config.threads);
  }
  AssertNoLeakage(train_mentions, split);

  const ItemProfileMap profiles = ProfileItemsWithFallback(train_mentions, config.items);
  ItemProfileOptions all_opts = config.items;
  all_opts.strategy = SubsetStrategy::kAll;
  const ItemProfileMap all_profiles = ProfileItems(train_mentions, all_opts);
  const UserModelMap models = BuildUserModels(train_mentions, config.users, config.threads);

  const RatingMatrix matrix(split.train);
  std::vector<std::string> users;
  std::vector<Day> cuts;
  std::vector<std::set<std::string>> relevant;
  {
    std::map<std::string, std::set<std::string>> rel;
    for (const auto& r : split.test) {
      if (r.rating > config.relevance_threshold) rel[r.user_id].insert(r.item_id);
    }
    for (const auto& [user, cut] : split.cut) {
      if (!matrix.UserIndex(user)) continue;
      users.push_back(user);
      cuts.push_back(cut);
      relevant.push_back(rel[user]);
    }
  }

  EvalReport report;
  report.n = config.n;
  report.relevance_threshold = config.relevance_threshold;
  report.n_train = split.train.size();
  report.n_test = split.test.size();
  report.n_eval_users = users.size();
  report.n_train_mentions = train_mentions.size();
  report.n_item_profiles = profiles.size();
  report.n_user_models = models.size();

  EngineOptions engine_opts = config.engine;
  engine_opts.seed = config.seed;
  engine_opts.threads = config.threads;

  RecsBySource drift_recs;
  const std::size_t n = config.n;
  for (EngineKind kind : config.engines) {
    const auto engine = MakeRecommender(kind, matrix, engine_opts);
    const std::string name(EngineName(kind));
    std::vector<UserOutcome> outcomes(users.size());
    ParallelFor(users.size(), config.threads, [&](std::size_t k) {
      const auto list = engine->Recommend(users[k], cuts[k], n * config.oversample);
      const UserAgeModel* model = SelectUserModel(models, users[k]);
      UserOutcome& o = outcomes[k];
      o.has_model = model != nullptr;

      RecommendationList top = list;
      if (top.entries.size() > n) top.entries.resize(n);
      o.base = Ids(top.entries);

      auto pf = PostFilter(list, model, profiles, cuts[k]);
      if (pf.list.entries.size() > n) pf.list.entries.resize(n);
      o.pf = Ids(pf.list.entries);

      const auto pf1 = PostFilter(top, model, profiles, cuts[k]);
      o.pf_m1 = Ids(pf1.list.entries);
      for (const auto& v : pf1.verdicts) {
        if (v.verdict != Verdict::kRemoved) continue;
        FilteredExample ex;
        ex.user_id = users[k];
        ex.item_id = v.item_id;
        if (auto t = data.item_titles.find(v.item_id); t != data.item_titles.end()) {
          ex.title = t->second;
        }
        ex.low_years = *v.low_years;
        ex.high_years = *v.high_years;
        ex.predicted_age_years = *pf1.target_age_years;
        ex.engine = name;
        o.removed.push_back(std::move(ex));
      }
    });

    struct Variant {
      std::string suffix;
      bool filtered;
      std::size_t oversample;
      std::vector<std::string> UserOutcome::*lists;
    };
    std::vector<Variant> variants = {{"", false, 1, &UserOutcome::base},
                                     {"-pf", true, config.oversample, &UserOutcome::pf}};
    if (config.oversample != 1) variants.push_back({"-pf-m1", true, 1, &UserOutcome::pf_m1});

    for (const auto& v : variants) {
      StrategyResult s;
      s.name = name + v.suffix;
      s.engine = name;
      s.post_filtered = v.filtered;
      s.oversample = v.oversample;
      double length = 0.0;
      auto& per_user = drift_recs[s.name];
      for (std::size_t k = 0; k < users.size(); ++k) {
        const auto& recs = outcomes[k].*(v.lists);
        s.metrics += ComputeMetrics(recs, relevant[k], n);
        length += static_cast<double>(recs.size());
        per_user[users[k]] = recs;
      }
      if (!users.empty()) {
        const double denom = static_cast<double>(users.size());
        s.metrics.ndcg /= denom;
        s.metrics.map /= denom;
        s.metrics.precision /= denom;
        s.metrics.recall /= denom;
        s.mean_list_length = length / denom;
      }
      report.strategies.push_back(std::move(s));
    }

    if (report.filtered_examples.empty()) {
      for (const auto& o : outcomes) {
        for (const auto& ex : o.removed) {
          if (report.filtered_examples.size() >= 10) break;
          report.filtered_examples.push_back(ex);
        }
      }
    }
    if (kind == config.engines.front()) {
      report.n_users_without_model = static_cast<std::size_t>(
          std::count_if(outcomes.begin(), outcomes.end(),
                        [](const UserOutcome& o) { return !o.has_model; }));
    }
  }

  report.drift = ComputeDrift(split, all_profiles, drift_recs);
  report.notes = {
      "mf-als is matrix factorization by alternating least squares with "
      "weighted-lambda regularization",
      "<engine>-pf filters n*oversample candidates and keeps the first n; "
      "<engine>-pf-m1 filters the plain top-n list",
      "metrics are means over users with at least one held-out rating; "
      "relevant items are held-out ratings above the relevance threshold",
      "item and user age profiles are built from train-side reviews only",
  };
  return report;
}

}  // namespace agelens
