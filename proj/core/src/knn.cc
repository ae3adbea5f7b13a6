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

#include "agelens/knn.h"

#include <algorithm>
#include <cmath>
#include <unordered_map>

namespace agelens {

std::optional<double> PearsonSimilarity(std::span<const double> u,
                                        std::span<const double> v) {
  const std::size_t n = std::min(u.size(), v.size());
  if (n < 2) return std::nullopt;
  double mu = 0.0, mv = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mu += u[i];
    mv += v[i];
  }
  mu /= static_cast<double>(n);
  mv /= static_cast<double>(n);
  double cov = 0.0, vu = 0.0, vv = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    cov += (u[i] - mu) * (v[i] - mv);
    vu += (u[i] - mu) * (u[i] - mu);
    vv += (v[i] - mv) * (v[i] - mv);
  }
  if (vu == 0.0 || vv == 0.0) return std::nullopt;
  return std::clamp(cov / std::sqrt(vu * vv), -1.0, 1.0);
}

std::optional<double> UserPearson(const RatingMatrix& m, std::size_t u, std::size_t v) {
  std::vector<double> a, b;
  auto ru = m.UserRow(u);
  auto rv = m.UserRow(v);
  for (std::size_t x = 0, y = 0; x < ru.size() && y < rv.size();) {
    if (ru[x].index < rv[y].index) {
      ++x;
    } else if (rv[y].index < ru[x].index) {
      ++y;
    } else {
      a.push_back(ru[x++].rating);
      b.push_back(rv[y++].rating);
    }
  }
  return PearsonSimilarity(a, b);
}

std::optional<double> ItemEuclideanSimilarity(const RatingMatrix& m,
                                              std::size_t i, std::size_t j) {
  auto ci = m.ItemColumn(i);
  auto cj = m.ItemColumn(j);
  double sq = 0.0;
  std::size_t co = 0;
  for (std::size_t x = 0, y = 0; x < ci.size() && y < cj.size();) {
    if (ci[x].index < cj[y].index) {
      ++x;
    } else if (cj[y].index < ci[x].index) {
      ++y;
    } else {
      const double d = ci[x++].rating - cj[y++].rating;
      sq += d * d;
      ++co;
    }
  }
  if (co == 0) return std::nullopt;
  return 1.0 / (1.0 + std::sqrt(sq));
}

UserBasedCf::UserBasedCf(const RatingMatrix& matrix, std::size_t k)
    : matrix_(matrix), k_(k) {}

std::vector<UserBasedCf::Neighbor> UserBasedCf::Neighborhood(std::size_t user) const {
  // Co-rated vectors for every user sharing at least one item, gathered in
  // item order so each pair matches what UserPearson would see.
  std::unordered_map<std::size_t, std::pair<std::vector<double>, std::vector<double>>> co;
  for (const auto& e : matrix_.UserRow(user)) {
    for (const auto& other : matrix_.ItemColumn(e.index)) {
      if (other.index == user) continue;
      auto& [mine, theirs] = co[other.index];
      mine.push_back(e.rating);
      theirs.push_back(other.rating);
    }
  }
  std::vector<Neighbor> out;
  for (const auto& [v, vecs] : co) {
    auto sim = PearsonSimilarity(vecs.first, vecs.second);
    if (sim && *sim > 0.0) out.push_back({v, *sim});
  }
  std::sort(out.begin(), out.end(), [](const Neighbor& a, const Neighbor& b) {
    if (a.similarity != b.similarity) return a.similarity > b.similarity;
    return a.user < b.user;
  });
  if (out.size() > k_) out.resize(k_);
  return out;
}

std::vector<ScoredItem> UserBasedCf::TopN(std::size_t user, std::size_t n) const {
  if (n == 0) return {};
  std::vector<bool> rated(matrix_.num_items(), false);
  for (const auto& e : matrix_.UserRow(user)) rated[e.index] = true;

  std::vector<double> num(matrix_.num_items(), 0.0), den(matrix_.num_items(), 0.0);
  for (const auto& nb : Neighborhood(user)) {
    const double mean_v = matrix_.UserMean(nb.user);
    for (const auto& e : matrix_.UserRow(nb.user)) {
      if (rated[e.index]) continue;
      num[e.index] += nb.similarity * (e.rating - mean_v);
      den[e.index] += std::abs(nb.similarity);
    }
  }
  const double mean_u = matrix_.UserMean(user);
  std::vector<ScoredItem> scored;
  for (std::size_t i = 0; i < num.size(); ++i) {
    if (den[i] > 0.0) scored.push_back({matrix_.ItemId(i), mean_u + num[i] / den[i]});
  }
  RankAndTruncate(scored, n);
  return scored;
}

std::vector<ScoredItem> ItemBasedCf::TopN(std::size_t user, std::size_t n) const {
  if (n == 0) return {};
  const auto row = matrix_.UserRow(user);
  std::vector<bool> rated(matrix_.num_items(), false);
  for (const auto& e : row) rated[e.index] = true;

  std::vector<double> num(matrix_.num_items(), 0.0), den(matrix_.num_items(), 0.0);
  std::vector<double> sq(matrix_.num_items(), 0.0);
  std::vector<std::size_t> co(matrix_.num_items(), 0);
  std::vector<std::size_t> touched;
  for (const auto& own : row) {
    // Squared distances from item `own.index` to every unrated item that
    // shares a rater with it.
    for (const auto& rater : matrix_.ItemColumn(own.index)) {
      for (const auto& e : matrix_.UserRow(rater.index)) {
        if (rated[e.index]) continue;
        if (co[e.index] == 0) touched.push_back(e.index);
        const double d = rater.rating - e.rating;
        sq[e.index] += d * d;
        ++co[e.index];
      }
    }
    for (std::size_t j : touched) {
      const double sim = 1.0 / (1.0 + std::sqrt(sq[j]));
      num[j] += sim * own.rating;
      den[j] += sim;
      sq[j] = 0.0;
      co[j] = 0;
    }
    touched.clear();
  }
  std::vector<ScoredItem> scored;
  for (std::size_t j = 0; j < num.size(); ++j) {
    if (den[j] > 0.0) scored.push_back({matrix_.ItemId(j), num[j] / den[j]});
  }
  RankAndTruncate(scored, n);
  return scored;
}

}  // namespace agelens
