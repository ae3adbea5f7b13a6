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

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <random>
#include <sstream>

#include "agelens/drift.h"
#include "agelens/error.h"
#include "agelens/experiment.h"
#include "agelens/extract.h"
#include "agelens/io.h"
#include "agelens/parallel.h"
#include "agelens/synth.h"
#include "doctest.h"
#include "fixtures.h"

using namespace agelens;
using fixture::D;
using fixture::Mention;
using fixture::R;

namespace {

SynthCorpus SmallCorpus(std::uint64_t seed = 5, double noise = 0.0) {
  SynthOptions o;
  o.n_users = 150;
  o.n_items = 60;
  o.seed = seed;
  o.noise = noise;
  return GenerateSynthetic(o);
}

ExperimentConfig FastConfig() {
  ExperimentConfig c;
  c.engine.als_rank = 5;
  c.engine.als_sweeps = 5;
  return c;
}

std::string Key(const AgeMention& m) {
  std::ostringstream s;
  s << m.review_id << '|' << m.value_years << '|' << m.possessive;
  return s.str();
}

}  // namespace

TEST_SUITE("drift") {

TEST_CASE("recommending older items gives a positive delta") {
  std::vector<Rating> r;
  for (int k = 0; k < 5; ++k) {
    r.push_back(R("u", "young" + std::to_string(k), 5, "2012-01-01"));
    r.back().date = Day{r.back().date.value + k};
  }
  auto split = SplitTemporal(r, 0.8);
  REQUIRE(split.test.size() == 1);
  ItemProfileMap p;
  for (int k = 0; k < 5; ++k) {
    const std::string id = "young" + std::to_string(k);
    p[id] = {id, SubsetStrategy::kAll, 0.5, 1.5, 4, 0};
  }
  p["old"] = {"old", SubsetStrategy::kAll, 3.0, 4.0, 4, 0};
  RecsBySource recs;
  recs["engine"]["u"] = {"old", "unprofiled"};
  auto d = ComputeDrift(split, p, recs);
  CHECK(d.mean_delta.at("engine") == doctest::Approx(2.5));
  CHECK(d.mean_delta.at("test") == doctest::Approx(0.0));
  CHECK(d.n_users.at("engine") == 1);
  REQUIRE_FALSE(d.series.empty());
  CHECK(d.series.front().bucket == "2012-01");
}

TEST_CASE("no profiles gives an empty series") {
  auto split = SplitTemporal(std::vector<Rating>{R("u", "a", 5, "2012-01-01"), R("u", "b", 4, "2012-02-01")}, 0.5);
  RecsBySource recs;
  recs["engine"]["u"] = {"c"};
  auto d = ComputeDrift(split, {}, recs);
  CHECK(d.series.empty());
  CHECK(d.mean_delta.empty());
}

}  // TEST_SUITE

TEST_SUITE("experiment") {

TEST_CASE("leakage guard") {
  std::vector<Rating> r = {R("u", "a", 5, "2012-01-01"), R("u", "b", 5, "2012-02-01"), R("u", "c", 5, "2012-03-01"),
                           R("u", "d", 5, "2012-04-01"), R("u", "e", 5, "2012-05-01")};
  auto split = SplitTemporal(r, 0.8);
  const auto train_side = Mention("r1", "u", "a", "2012-01-01", 5, 1.0, true);
  const auto test_pair = Mention("r5", "u", "e", "2012-05-01", 5, 1.0, true);
  const auto late = Mention("r9", "u", "a", "2012-06-01", 5, 1.0, true);
  CHECK_NOTHROW(AssertNoLeakage(std::vector<AgeMention>{train_side}, split));
  CHECK_THROWS_AS(AssertNoLeakage(std::vector<AgeMention>{train_side, test_pair}, split), LeakageError);
  CHECK_THROWS_AS(AssertNoLeakage(std::vector<AgeMention>{late}, split), LeakageError);
  auto kept = RestrictToTrain(std::vector<AgeMention>{train_side, test_pair, late}, split);
  REQUIRE(kept.size() == 1);
  CHECK(kept[0].review_id == "r1");
}

TEST_CASE("config validation names the field") {
  auto expect = [](auto mutate, const std::string& field) {
    ExperimentConfig c;
    mutate(c);
    try {
      ValidateConfig(c, false);
      FAIL("accepted invalid " << field);
    } catch (const ConfigError& e) {
      CHECK(std::string(e.what()).find("'" + field + "'") != std::string::npos);
    }
  };
  expect([](ExperimentConfig& c) { c.n = 0; }, "n");
  expect([](ExperimentConfig& c) { c.train_fraction = 1.0; }, "train_fraction");
  expect([](ExperimentConfig& c) { c.engines.clear(); }, "engines");
  expect([](ExperimentConfig& c) { c.items.tukey.p_low = 0.97; }, "p_low");
  expect([](ExperimentConfig& c) { c.engine.als_lambda = 0; }, "als_lambda");
  expect([](ExperimentConfig& c) { c.threads = 0; }, "threads");
  expect([](ExperimentConfig& c) { c.relevance_threshold = 6; }, "relevance_threshold");
  ExperimentConfig c;
  CHECK_THROWS_AS(ValidateConfig(c, true), ConfigError);
  CHECK_NOTHROW(ValidateConfig(c, false));
}

TEST_CASE("run is deterministic, thread-independent and row-order invariant") {
  const auto corpus = SmallCorpus();
  ExperimentData data;
  data.reviews = corpus.reviews;
  auto c = FastConfig();
  const auto a = ReportToJson(RunExperiment(data, c), c);
  c.threads = 3;
  const auto b = ReportToJson(RunExperiment(data, c), FastConfig());
  CHECK(a == b);
  std::mt19937_64 rng(1);
  std::shuffle(data.reviews.begin(), data.reviews.end(), rng);
  CHECK(ReportToJson(RunExperiment(data, FastConfig()), FastConfig()) == a);
}

TEST_CASE("report covers every strategy and only train mentions") {
  const auto corpus = SmallCorpus(6);
  ExperimentData data;
  data.reviews = corpus.reviews;
  const auto rep = RunExperiment(data, FastConfig());
  for (std::string e : {"ub-cf", "ib-cf", "mf-als"}) {
    for (std::string suffix : {"", "-pf", "-pf-m1"}) {
      const auto* s = rep.Find(e + suffix);
      REQUIRE(s);
      CHECK(s->engine == e);
      CHECK(s->mean_list_length <= 10.0);
      for (double v : {s->metrics.ndcg, s->metrics.map, s->metrics.precision, s->metrics.recall}) {
        CHECK((v >= 0.0 && v <= 1.0));
      }
    }
  }
  CHECK(rep.n_train + rep.n_test == corpus.ratings.size());
  const auto all = ExtractCorpus(corpus.reviews, UnitLexicon::Builtin());
  CHECK(rep.n_train_mentions < all.size());
  CHECK(rep.n_eval_users > 0);
}

TEST_CASE("supplied mentions from held-out reviews never reach profiles") {
  const auto corpus = SmallCorpus(7);
  ExperimentData data;
  data.ratings = corpus.ratings;
  data.mentions = corpus.planted;
  const auto rep = RunExperiment(data, FastConfig());
  auto split = SplitTemporal(corpus.ratings, 0.8);
  CHECK(rep.n_train_mentions == RestrictToTrain(corpus.planted, split).size());
  CHECK(rep.n_train_mentions < corpus.planted.size());
}

TEST_CASE("empty ratings are a data error") {
  CHECK_THROWS_AS(RunExperiment(ExperimentData{}, FastConfig()), DataError);
}

}  // TEST_SUITE

TEST_SUITE("io") {

TEST_CASE("mentions round trip") {
  const auto m = Mention("r1", "u", "i", "2013-02-03", 4, 0.75, true, "mnths");
  const auto back = MentionFromJson(MentionToJson(m));
  CHECK(back == m);
  CHECK_THROWS_AS(MentionFromJson("{\"review_id\": 3}"), DataError);
  CHECK_THROWS_AS(MentionFromJson("not json"), DataError);
}

TEST_CASE("profiles and models round trip") {
  ItemProfileMap p;
  p["a"] = {"a", SubsetStrategy::kRatingPossessive, 0.25, 1.0 / 3.0, 7, 2};
  CHECK(ItemProfilesFromJson(ItemProfilesToJson(p)) == p);
  UserModelMap m;
  UserAgeModel u;
  u.user_id = "x";
  u.t0 = D("2012-05-06");
  u.a0 = 1.5;
  u.slope = 0.9;
  u.intercept = 0.1;
  u.n_points = 4;
  u.residual_rms = 0.01;
  m[{"x", ModelVariant::kPossessive}] = u;
  CHECK(UserModelsFromJson(UserModelsToJson(m)) == m);
}

TEST_CASE("lexicon round trip") {
  const auto& b = UnitLexicon::Builtin();
  CHECK(LexiconToJson(LexiconFromJson(LexiconToJson(b))) == LexiconToJson(b));
  CHECK(LoadLexicon("builtin").Lookup("yrs") == Unit::kYear);
  CHECK_THROWS_AS(LexiconFromJson("{\"decade\": [\"decades\"]}"), DataError);
}

TEST_CASE("config parsing") {
  auto c = ExperimentConfigFromJson(R"({"reviews": "r.jsonl", "n": 5, "engines": ["ib-cf"], "fence_k": 1.0})", "/data");
  CHECK(c.reviews == "/data/r.jsonl");
  CHECK(c.n == 5);
  REQUIRE(c.engines.size() == 1);
  CHECK(c.engines[0] == EngineKind::kItemCf);
  CHECK(c.users.tukey.fence_k == 1.0);
  CHECK_THROWS_AS(ExperimentConfigFromJson(R"({"reviews": "r", "bogus": 1})"), ConfigError);
  CHECK_THROWS_AS(ExperimentConfigFromJson(R"({"n": 0})"), ConfigError);
  CHECK_THROWS_AS(ExperimentConfigFromJson(R"({"engines": ["svd"]})"), ConfigError);
  CHECK_THROWS_AS(ExperimentConfigFromJson("[1"), ConfigError);
  const auto echo = ExperimentConfigFromJson(ExperimentConfigToJson(c));
  CHECK(ExperimentConfigToJson(echo) == ExperimentConfigToJson(c));
}

TEST_CASE("ratings csv") {
  const auto dir = std::filesystem::temp_directory_path() / "agelens_io_test";
  std::filesystem::create_directories(dir);
  const auto path = (dir / "r.csv").string();
  std::vector<Rating> r = {R("u1", "i1", 5, "2012-01-02"), R("u2", "i1", 3, "2013-06-07")};
  std::ostringstream out;
  WriteRatingsCsv(out, r);
  WriteFile(path, out.str());
  CHECK(ReadRatingsCsv(path) == r);
  WriteFile(path, "u1,i1,5,1325462400\n");
  CHECK(ReadRatingsCsv(path).size() == 1);
  WriteFile(path, "u1,i1,seven,1325462400\n");
  CHECK_THROWS_AS(ReadRatingsCsv(path), DataError);
  CHECK_THROWS_AS(ReadRatingsCsv((dir / "missing.csv").string()), IoError);
  std::filesystem::remove_all(dir);
}

}  // TEST_SUITE

TEST_SUITE("synth") {

TEST_CASE("same seed gives the same corpus") {
  const auto a = SmallCorpus(11), b = SmallCorpus(11), c = SmallCorpus(12);
  REQUIRE(a.reviews.size() == b.reviews.size());
  for (std::size_t k = 0; k < a.reviews.size(); ++k) CHECK(ToJsonLine(a.reviews[k]) == ToJsonLine(b.reviews[k]));
  CHECK(a.ratings == b.ratings);
  CHECK(a.ratings != c.ratings);
}

TEST_CASE("zero noise: extraction recovers every planted mention") {
  for (std::uint64_t seed : {1, 2, 3}) {
    const auto corpus = SmallCorpus(seed);
    const auto got = ExtractCorpus(corpus.reviews, UnitLexicon::Builtin());
    std::multiset<std::string> planted, extracted;
    for (const auto& m : corpus.planted) planted.insert(Key(m));
    for (const auto& m : got) extracted.insert(Key(m));
    CHECK(planted.size() > 500);
    CHECK(planted == extracted);
  }
}

TEST_CASE("noise adds misspellings and distractors") {
  const auto corpus = SmallCorpus(4, 0.5);
  CHECK_FALSE(corpus.distractors.empty());
  const auto builtin = ExtractCorpus(corpus.reviews, UnitLexicon::Builtin());
  const auto tokens = TokenizeCorpus(corpus.reviews);
  const auto lex = DiscoverUnitVariants(tokens, UnitLexicon::Builtin());
  const auto discovered = ExtractCorpus(corpus.reviews, lex);
  CHECK(discovered.size() > builtin.size());
}

TEST_CASE("planted slope is recovered for users with enough possessive mentions") {
  const auto corpus = GenerateSynthetic({.n_users = 400, .n_items = 100, .seed = 8});
  const auto models = BuildUserModels(corpus.planted);
  std::map<std::string, std::size_t> poss;
  for (const auto& m : corpus.planted) poss[m.user_id] += m.possessive;
  std::size_t checked = 0;
  for (const auto& [user, n] : poss) {
    if (n < 4) continue;
    auto it = models.find({user, ModelVariant::kPossessive});
    REQUIRE(it != models.end());
    CHECK_MESSAGE(std::abs(it->second.slope - 1.0) <= 0.1, user << " slope " << it->second.slope);
    ++checked;
  }
  CHECK(checked > 100);
}

TEST_CASE("planted item range is recovered") {
  // Purchases of a 4-9 month item by children of every age in that window,
  // plus low-rated out-of-range purchases.
  std::vector<AgeMention> m;
  int k = 0;
  for (int months = 4; months <= 9; ++months) {
    for (int rep = 0; rep < 3; ++rep) {
      ++k;
      m.push_back(Mention("r" + std::to_string(k), "u" + std::to_string(k), "I", "2012-01-01", 5, months / 12.0, true, "months"));
    }
  }
  for (double years : {2.0, 3.0, 1.5}) {
    ++k;
    m.push_back(Mention("r" + std::to_string(k), "u" + std::to_string(k), "I", "2012-01-01", 2, years, true));
  }
  const auto p = ProfileItems(m).at("I");
  CHECK(std::abs(p.low_years - 0.3) <= 0.15);
  CHECK(std::abs(p.high_years - 0.8) <= 0.15);
}

TEST_CASE("invalid options") {
  CHECK_THROWS_AS(GenerateSynthetic({.n_users = 0}), ConfigError);
  CHECK_THROWS_AS(GenerateSynthetic({.noise = 1.5}), ConfigError);
}

TEST_CASE("written files reload") {
  const auto dir = (std::filesystem::temp_directory_path() / "agelens_synth_test").string();
  std::filesystem::remove_all(dir);
  const auto corpus = SmallCorpus(13);
  WriteSynthetic(corpus, dir);
  const auto loaded = LoadReviews(dir + "/reviews.jsonl");
  CHECK(loaded.reviews.size() == corpus.reviews.size());
  CHECK(ReadMentions(dir + "/planted_mentions.jsonl") == corpus.planted);
  CHECK(LoadExperimentConfig(dir + "/experiment.json").reviews == dir + "/reviews.jsonl");
  std::filesystem::remove_all(dir);
}

}  // TEST_SUITE

TEST_SUITE("parallel") {

TEST_CASE("every index runs once") {
  for (int threads : {1, 2, 7}) {
    std::vector<std::atomic<int>> hits(101);
    ParallelFor(hits.size(), threads, [&](std::size_t i) { ++hits[i]; });
    for (auto& h : hits) CHECK(h.load() == 1);
  }
  ParallelFor(0, 4, [](std::size_t) { FAIL("called"); });
}

TEST_CASE("worker exceptions propagate") {
  CHECK_THROWS_AS(ParallelFor(10, 3, [](std::size_t i) {
                    if (i == 7) throw DataError("boom");
                  }),
                  DataError);
}

}  // TEST_SUITE
