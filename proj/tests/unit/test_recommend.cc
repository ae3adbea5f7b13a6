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
#include <cmath>
#include <random>

#include "agelens/als.h"
#include "agelens/error.h"
#include "agelens/knn.h"
#include "agelens/post_filter.h"
#include "agelens/ratings.h"
#include "agelens/recommender.h"
#include "doctest.h"
#include "fixtures.h"
#include "oracles.h"

using namespace agelens;
using fixture::D;
using fixture::R;

namespace {

std::vector<Rating> FromDense(const oracle::Dense& m) {
  std::vector<Rating> out;
  for (std::size_t u = 0; u < m.size(); ++u) {
    for (std::size_t i = 0; i < m[u].size(); ++i) {
      if (m[u][i]) out.push_back(R("u" + std::to_string(u), "i" + std::to_string(i), m[u][i], "2012-01-01"));
    }
  }
  return out;
}

oracle::Dense RandomDense(std::mt19937_64& rng, std::size_t users, std::size_t items, int fill_pct) {
  oracle::Dense m(users, std::vector<int>(items, 0));
  for (auto& row : m) {
    for (auto& x : row) {
      if (static_cast<int>(rng() % 100) < fill_pct) x = static_cast<int>(rng() % 5) + 1;
    }
  }
  return m;
}

// Dense row u is user "u<u>"; map through the matrix index explicitly.
std::size_t UserOf(const RatingMatrix& m, std::size_t dense_user) {
  return *m.UserIndex("u" + std::to_string(dense_user));
}

void CheckAgainstOracle(const Recommender& rec, const RatingMatrix& m, std::size_t dense_user,
                        const std::map<std::size_t, double>& expected) {
  auto got = rec.TopN(UserOf(m, dense_user), 1000);
  REQUIRE(got.size() == expected.size());
  for (const auto& s : got) {
    const std::size_t dense_item = std::stoul(s.item_id.substr(1));
    REQUIRE(expected.count(dense_item));
    CHECK(s.score == doctest::Approx(expected.at(dense_item)).epsilon(1e-12));
  }
  for (std::size_t k = 1; k < got.size(); ++k) {
    CHECK((got[k - 1].score > got[k].score ||
           (got[k - 1].score == got[k].score && got[k - 1].item_id < got[k].item_id)));
  }
}

}  // namespace

TEST_SUITE("ratings") {

TEST_CASE("matrix indexes and means") {
  std::vector<Rating> r = {R("b", "x", 4, "2012-01-01"), R("a", "y", 2, "2012-01-02"), R("a", "x", 5, "2012-01-03")};
  RatingMatrix m(r);
  CHECK(m.num_users() == 2);
  CHECK(m.num_items() == 2);
  CHECK(m.num_ratings() == 3);
  CHECK(m.UserId(0) == "a");
  CHECK(m.UserMean(*m.UserIndex("a")) == 3.5);
  CHECK(m.Get(*m.UserIndex("b"), *m.ItemIndex("x")) == 4.0);
  CHECK_FALSE(m.Get(*m.UserIndex("b"), *m.ItemIndex("y")));
  CHECK_FALSE(m.UserIndex("zz"));
}

TEST_CASE("duplicates keep the latest rating") {
  auto d = DeduplicateRatings(std::vector<Rating>{R("u", "i", 2, "2012-01-01"), R("u", "i", 5, "2012-02-01"),
                                                  R("u", "j", 1, "2012-01-01"), R("u", "j", 3, "2012-01-01")});
  REQUIRE(d.size() == 2);
  for (const auto& r : d) CHECK(r.rating == (r.item_id == "i" ? 5 : 3));
}

}  // TEST_SUITE

TEST_SUITE("knn") {

TEST_CASE("pearson examples") {
  auto p = [](std::vector<double> a, std::vector<double> b) { return PearsonSimilarity(a, b); };
  CHECK(*p({1, 2, 3}, {2, 4, 6}) == doctest::Approx(1.0));
  CHECK(*p({1, 2, 3}, {3, 2, 1}) == doctest::Approx(-1.0));
  CHECK_FALSE(p({5, 5, 5}, {1, 2, 3}));
  CHECK_FALSE(p({1}, {2}));
}

TEST_CASE("pearson is symmetric and bounded") {
  std::mt19937_64 rng(1);
  auto dense = RandomDense(rng, 30, 20, 40);
  RatingMatrix m(FromDense(dense));
  for (std::size_t u = 0; u < m.num_users(); ++u) {
    for (std::size_t v = 0; v < m.num_users(); ++v) {
      auto a = UserPearson(m, u, v), b = UserPearson(m, v, u);
      REQUIRE(a.has_value() == b.has_value());
      if (a) {
        CHECK(*a == doctest::Approx(*b).epsilon(1e-14));
        CHECK(std::abs(*a) <= 1.0);
      }
    }
  }
}

TEST_CASE("euclidean item similarity") {
  RatingMatrix m(FromDense({{5, 5, 0}, {3, 3, 0}, {0, 0, 4}}));
  CHECK(*ItemEuclideanSimilarity(m, 0, 1) == 1.0);
  CHECK_FALSE(ItemEuclideanSimilarity(m, 0, 2));
  std::mt19937_64 rng(2);
  RatingMatrix r(FromDense(RandomDense(rng, 25, 15, 50)));
  for (std::size_t i = 0; i < r.num_items(); ++i) {
    for (std::size_t j = 0; j < r.num_items(); ++j) {
      if (auto s = ItemEuclideanSimilarity(r, i, j)) CHECK((*s > 0.0 && *s <= 1.0));
    }
  }
}

TEST_CASE("user-based toy matrix matches the brute-force recompute") {
  const oracle::Dense toy = {{5, 3, 0, 1, 0}, {4, 0, 0, 1, 2}, {1, 1, 0, 5, 4}, {5, 4, 5, 2, 0}};
  RatingMatrix m(FromDense(toy));
  UserBasedCf cf(m, 50);
  for (std::size_t u = 0; u < toy.size(); ++u) CheckAgainstOracle(cf, m, u, oracle::UserCfScores(toy, u, 50));
  // User 0 correlates positively with users 1 and 3 only.
  auto top = cf.TopN(UserOf(m, 0), 10);
  REQUIRE(top.size() == 2);
  CHECK(top[0].item_id == "i2");
}

TEST_CASE("user-based random matrices and neighborhood cap") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 10; ++t) {
    auto dense = RandomDense(rng, 9, 9, 55);
    RatingMatrix m(FromDense(dense));
    for (std::size_t k : {2, 50}) {
      UserBasedCf cf(m, k);
      for (std::size_t u = 0; u < dense.size(); ++u) {
        if (!m.UserIndex("u" + std::to_string(u))) continue;
        CheckAgainstOracle(cf, m, u, oracle::UserCfScores(dense, u, k));
      }
    }
  }
}

TEST_CASE("item-based toy and random matrices match the brute-force recompute") {
  const oracle::Dense toy = {{5, 3, 0, 1, 0}, {4, 0, 0, 1, 2}, {1, 1, 0, 5, 4}, {5, 4, 5, 2, 0}};
  RatingMatrix m(FromDense(toy));
  ItemBasedCf cf(m);
  for (std::size_t u = 0; u < toy.size(); ++u) CheckAgainstOracle(cf, m, u, oracle::ItemCfScores(toy, u));
  std::mt19937_64 rng(4);
  for (int t = 0; t < 10; ++t) {
    auto dense = RandomDense(rng, 9, 9, 50);
    RatingMatrix r(FromDense(dense));
    ItemBasedCf ib(r);
    for (std::size_t u = 0; u < dense.size(); ++u) {
      if (!r.UserIndex("u" + std::to_string(u))) continue;
      CheckAgainstOracle(ib, r, u, oracle::ItemCfScores(dense, u));
    }
  }
}

TEST_CASE("empty lists") {
  RatingMatrix m(FromDense({{5, 3}, {4, 2}}));
  for (auto kind : {EngineKind::kUserCf, EngineKind::kItemCf, EngineKind::kMfAls}) {
    auto rec = MakeRecommender(kind, m);
    CHECK(rec->TopN(0, 0).empty());
    CHECK(rec->TopN(0, 10).empty());  // every item rated
    CHECK_THROWS_AS(rec->Recommend("nobody", D("2012-01-01"), 10), DataError);
  }
}

TEST_CASE("no valid neighbors means an empty list") {
  RatingMatrix m(FromDense({{5, 5, 0}, {1, 2, 3}}));
  CHECK(UserBasedCf(m).TopN(0, 10).empty());
}

TEST_CASE("engine names") {
  for (auto kind : {EngineKind::kUserCf, EngineKind::kItemCf, EngineKind::kMfAls}) {
    CHECK(EngineFromName(EngineName(kind)) == kind);
  }
  CHECK_FALSE(EngineFromName("mf-svd"));
}

}  // TEST_SUITE

TEST_SUITE("als") {

TEST_CASE("rank-1 matrix is reconstructed") {
  RatingMatrix m(FromDense({{2, 4}, {3, 6}}));
  AlsOptions o;
  o.rank = 1;
  o.lambda = 1e-9;
  o.sweeps = 20;
  auto f = AlsTrain(m, o);
  for (std::size_t u = 0; u < 2; ++u) {
    for (std::size_t i = 0; i < 2; ++i) CHECK(std::abs(f.Predict(u, i) - *m.Get(u, i)) < 1e-6);
  }
}

TEST_CASE("objective never increases") {
  std::mt19937_64 rng(6);
  RatingMatrix m(FromDense(RandomDense(rng, 20, 30, 30)));
  AlsOptions o;
  o.rank = 5;
  o.sweeps = 10;
  auto f = AlsTrain(m, o);
  REQUIRE(f.loss_trace.size() == 1 + 2 * o.sweeps);
  for (std::size_t k = 1; k < f.loss_trace.size(); ++k) CHECK(f.loss_trace[k] <= f.loss_trace[k - 1] + 1e-9);
  CHECK(f.loss_trace.back() == doctest::Approx(AlsObjective(m, f)).epsilon(1e-12));
}

TEST_CASE("fixed seed gives identical factors at any thread count") {
  std::mt19937_64 rng(7);
  RatingMatrix m(FromDense(RandomDense(rng, 25, 25, 35)));
  AlsOptions o;
  o.rank = 4;
  const auto a = AlsTrain(m, o);
  for (int t : {1, 3}) {
    o.threads = t;
    const auto b = AlsTrain(m, o);
    CHECK(a.user_factors == b.user_factors);
    CHECK(a.item_factors == b.item_factors);
  }
  o.seed = 43;
  CHECK(AlsTrain(m, o).user_factors != a.user_factors);
}

TEST_CASE("invalid parameters") {
  RatingMatrix m(FromDense({{1, 2}}));
  AlsOptions o;
  o.rank = 0;
  CHECK_THROWS_AS(AlsTrain(m, o), ConfigError);
  o.rank = 2;
  o.lambda = 0;
  CHECK_THROWS_AS(AlsTrain(m, o), ConfigError);
  o.lambda = 0.1;
  o.sweeps = 0;
  CHECK_THROWS_AS(AlsTrain(m, o), ConfigError);
}

}  // TEST_SUITE

TEST_SUITE("post_filter") {

namespace {

ItemAgeProfile Range(const std::string& id, double low, double high) {
  ItemAgeProfile p;
  p.item_id = id;
  p.low_years = low;
  p.high_years = high;
  p.n_used = 4;
  return p;
}

UserAgeModel ModelAt(double age, Day t) {
  UserAgeModel m;
  m.t0 = t;
  m.a0 = age;
  m.n_points = 4;
  return m;
}

RecommendationList List(std::vector<std::string> ids, Day t) {
  RecommendationList l;
  l.user_id = "U";
  l.generated_at = t;
  double s = 5;
  for (auto& id : ids) l.entries.push_back({id, s -= 0.1});
  return l;
}

}  // namespace

TEST_CASE("out-of-range items are removed") {
  const Day t = D("2013-05-01");
  ItemProfileMap p = {{"jump", Range("jump", 4 / 12.0, 9 / 12.0)}, {"bottle", Range("bottle", 0, 1.0)}};
  auto r = PostFilter(List({"jump", "bottle", "other"}, t), nullptr, p, t);
  CHECK(r.unfiltered);
  CHECK(r.list.entries.size() == 3);

  const auto fourteen = ModelAt(14 / 12.0, t);
  r = PostFilter(List({"jump", "other"}, t), &fourteen, p, t);
  REQUIRE(r.list.entries.size() == 1);
  CHECK(r.list.entries[0].item_id == "other");
  CHECK(r.verdicts[0].verdict == Verdict::kRemoved);
  CHECK(r.verdicts[1].verdict == Verdict::kNoProfile);

  const auto older = ModelAt(3.5, t);
  CHECK(PostFilter(List({"bottle"}, t), &older, p, t).list.entries.empty());

  const auto half = ModelAt(0.5, t);
  r = PostFilter(List({"jump"}, t), &half, p, t);
  CHECK(r.list.entries.size() == 1);
  CHECK(r.verdicts[0].verdict == Verdict::kKept);
  CHECK(*r.target_age_years == 0.5);
}

TEST_CASE("range bounds are inclusive") {
  const Day t = D("2013-05-01");
  ItemProfileMap p = {{"a", Range("a", 1.0, 2.0)}};
  for (double age : {1.0, 2.0}) {
    const auto m = ModelAt(age, t);
    CHECK(PostFilter(List({"a"}, t), &m, p, t).list.entries.size() == 1);
  }
}

TEST_CASE("filtered output is an order-preserving subsequence") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(0, 4);
  const Day t = D("2013-05-01");
  for (int trial = 0; trial < 100; ++trial) {
    ItemProfileMap p;
    std::vector<std::string> ids;
    for (int i = 0; i < 30; ++i) {
      const std::string id = "i" + std::to_string(i);
      ids.push_back(id);
      if (rng() % 4) {
        const double lo = u(rng);
        p[id] = Range(id, lo, lo + u(rng) / 2);
      }
    }
    std::shuffle(ids.begin(), ids.end(), rng);
    const auto m = ModelAt(u(rng), t);
    const auto in = List(ids, t);
    const auto r = PostFilter(in, &m, p, t);
    std::size_t j = 0;
    for (const auto& e : in.entries) {
      if (j < r.list.entries.size() && r.list.entries[j] == e) ++j;
    }
    CHECK(j == r.list.entries.size());
    const double age = TargetAge(m, t);
    for (const auto& e : r.list.entries) {
      auto it = p.find(e.item_id);
      if (it != p.end()) CHECK((it->second.low_years <= age && age <= it->second.high_years));
    }
    for (const auto& v : r.verdicts) {
      if (v.verdict == Verdict::kRemoved) CHECK((age < *v.low_years || age > *v.high_years));
    }
  }
}

TEST_CASE("oversampling keeps lists full") {
  std::vector<Rating> r;
  for (int i = 0; i < 60; ++i) {
    r.push_back(R("a", "i" + std::to_string(100 + i), 1 + i % 5, "2012-01-01"));
    if (i % 3) r.push_back(R("b", "i" + std::to_string(100 + i), 1 + (i * 7) % 5, "2012-01-01"));
  }
  r.push_back(R("b", "i999", 5, "2012-01-01"));
  RatingMatrix m(r);
  ItemBasedCf cf(m);
  const Day t = D("2013-01-01");
  // "b" has 20 unrated candidates; every other one is out of range.
  ItemProfileMap p;
  for (int i = 0; i < 60; i += 3) {
    const std::string id = "i" + std::to_string(100 + i);
    p[id] = i % 2 ? Range(id, 5, 6) : Range(id, 0, 3);
  }
  const auto model = ModelAt(1.0, t);
  auto base = cf.TopN(*m.UserIndex("b"), 50);
  REQUIRE(base.size() == 20);
  std::size_t removed = 0;
  for (const auto& s : base) removed += p.at(s.item_id).low_years == 5;
  const auto full = RecommendFor(cf, "b", t, 5, 5, true, &model, p);
  CHECK(full.list.entries.size() == 5);
  const auto literal = RecommendFor(cf, "b", t, 5, 1, true, &model, p);
  CHECK(literal.list.entries.size() <= 5);
  const auto all = RecommendFor(cf, "b", t, 50, 1, true, &model, p);
  CHECK(all.list.entries.size() == base.size() - removed);
  const auto off = RecommendFor(cf, "b", t, 5, 5, false, &model, p);
  CHECK(off.list.entries.size() == 5);
  CHECK(off.verdicts.empty());
}

TEST_CASE("engine scores do not depend on age data") {
  std::mt19937_64 rng(41);
  RatingMatrix m(FromDense(RandomDense(rng, 30, 30, 30)));
  const Day t = D("2013-01-01");
  for (auto kind : {EngineKind::kUserCf, EngineKind::kItemCf, EngineKind::kMfAls}) {
    auto rec = MakeRecommender(kind, m);
    const auto plain = rec->Recommend(m.UserId(3), t, 10);
    ItemProfileMap p = {{"i1", Range("i1", 0, 0.1)}};
    const auto model = ModelAt(2.0, t);
    const auto off = RecommendFor(*rec, m.UserId(3), t, 10, 1, false, &model, p);
    CHECK(off.list.entries == plain.entries);
  }
}

}  // TEST_SUITE
