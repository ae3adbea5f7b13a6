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

#include "agelens/als.h"

#include <Eigen/Dense>
#include <random>

#include "agelens/error.h"
#include "agelens/parallel.h"

namespace agelens {

namespace {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using ConstRowMap = Eigen::Map<const Vec>;
using RowMap = Eigen::Map<Vec>;

// Solves (sum_j y_j y_j^T + lambda * n I) x = sum_j r_j y_j for one row,
// where j runs over the row's observed entries. Returns true if jitter was
// needed.
bool SolveRow(std::span<const RatingMatrix::Entry> entries,
              const std::vector<double>& fixed, std::size_t rank, double lambda,
              double* out) {
  Mat a = Mat::Zero(static_cast<Eigen::Index>(rank), static_cast<Eigen::Index>(rank));
  Vec b = Vec::Zero(static_cast<Eigen::Index>(rank));
  for (const auto& e : entries) {
    ConstRowMap y(fixed.data() + e.index * rank, static_cast<Eigen::Index>(rank));
    a.noalias() += y * y.transpose();
    b.noalias() += e.rating * y;
  }
  a.diagonal().array() += lambda * static_cast<double>(entries.size());
  RowMap x(out, static_cast<Eigen::Index>(rank));
  Eigen::LLT<Mat> llt(a);
  if (llt.info() == Eigen::Success) {
    x = llt.solve(b);
    return false;
  }
  a.diagonal().array() += 1e-9;
  x = a.ldlt().solve(b);
  return true;
}

std::vector<double> SeededUniform(std::size_t count, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> dist(0.0, 0.1);
  std::vector<double> v(count);
  for (double& x : v) x = dist(rng);
  return v;
}

}  // namespace

double FactorModel::Predict(std::size_t u, std::size_t i) const {
  double s = 0.0;
  const double* p = user_factors.data() + u * rank;
  const double* q = item_factors.data() + i * rank;
  for (std::size_t f = 0; f < rank; ++f) s += p[f] * q[f];
  return s;
}

double AlsObjective(const RatingMatrix& m, const FactorModel& model) {
  double loss = 0.0;
  double reg = 0.0;
  for (std::size_t u = 0; u < m.num_users(); ++u) {
    const auto row = m.UserRow(u);
    for (const auto& e : row) {
      const double r = e.rating - model.Predict(u, e.index);
      loss += r * r;
    }
    ConstRowMap p(model.user_factors.data() + u * model.rank,
                  static_cast<Eigen::Index>(model.rank));
    reg += static_cast<double>(row.size()) * p.squaredNorm();
  }
  for (std::size_t i = 0; i < m.num_items(); ++i) {
    ConstRowMap q(model.item_factors.data() + i * model.rank,
                  static_cast<Eigen::Index>(model.rank));
    reg += static_cast<double>(m.ItemColumn(i).size()) * q.squaredNorm();
  }
  return loss + model.lambda * reg;
}

FactorModel AlsTrain(const RatingMatrix& m, const AlsOptions& options) {
  if (options.rank == 0) throw ConfigError("als rank must be >= 1");
  if (!(options.lambda > 0.0)) throw ConfigError("als lambda must be > 0");
  if (options.sweeps == 0) throw ConfigError("als sweeps must be >= 1");

  FactorModel model;
  model.rank = options.rank;
  model.lambda = options.lambda;
  std::mt19937_64 rng(options.seed);
  model.user_factors = SeededUniform(m.num_users() * options.rank, rng);
  model.item_factors = SeededUniform(m.num_items() * options.rank, rng);
  model.loss_trace.push_back(AlsObjective(m, model));

  std::vector<char> jitter_users(m.num_users()), jitter_items(m.num_items());
  for (std::size_t sweep = 0; sweep < options.sweeps; ++sweep) {
    ParallelFor(m.num_users(), options.threads, [&](std::size_t u) {
      jitter_users[u] = SolveRow(m.UserRow(u), model.item_factors, options.rank,
                                 options.lambda,
                                 model.user_factors.data() + u * options.rank);
    });
    model.loss_trace.push_back(AlsObjective(m, model));
    ParallelFor(m.num_items(), options.threads, [&](std::size_t i) {
      jitter_items[i] = SolveRow(m.ItemColumn(i), model.user_factors, options.rank,
                                 options.lambda,
                                 model.item_factors.data() + i * options.rank);
    });
    model.loss_trace.push_back(AlsObjective(m, model));
    for (char j : jitter_users) model.jitter_events += static_cast<std::size_t>(j);
    for (char j : jitter_items) model.jitter_events += static_cast<std::size_t>(j);
  }
  return model;
}

MatrixFactorizationCf::MatrixFactorizationCf(const RatingMatrix& matrix,
                                             const AlsOptions& options)
    : matrix_(matrix), model_(AlsTrain(matrix, options)) {}

std::vector<ScoredItem> MatrixFactorizationCf::TopN(std::size_t user,
                                                    std::size_t n) const {
  if (n == 0) return {};
  std::vector<bool> rated(matrix_.num_items(), false);
  for (const auto& e : matrix_.UserRow(user)) rated[e.index] = true;
  std::vector<ScoredItem> scored;
  for (std::size_t i = 0; i < matrix_.num_items(); ++i) {
    if (!rated[i]) scored.push_back({matrix_.ItemId(i), model_.Predict(user, i)});
  }
  RankAndTruncate(scored, n);
  return scored;
}

}  // namespace agelens
