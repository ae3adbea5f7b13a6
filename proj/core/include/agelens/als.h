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

#ifndef AGELENS_ALS_H_
#define AGELENS_ALS_H_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "agelens/ratings.h"
#include "agelens/recommender.h"

namespace agelens {

struct AlsOptions {
  std::size_t rank = 20;
  double lambda = 0.05;
  std::size_t sweeps = 15;
  std::uint64_t seed = 42;
  int threads = 1;
};

// Factors of an ALS-WR run. Row-major: user u occupies
// user_factors[u * rank, (u + 1) * rank).
struct FactorModel {
  std::size_t rank = 0;
  double lambda = 0.0;
  std::vector<double> user_factors;
  std::vector<double> item_factors;
  // Objective at initialization and after every half-sweep.
  std::vector<double> loss_trace;
  // Normal matrices that needed the 1e-9 ridge jitter.
  std::size_t jitter_events = 0;

  double Predict(std::size_t u, std::size_t i) const;
};

// sum over observed (r_ui - p_u.q_i)^2
//   + lambda * (sum_u n_u |p_u|^2 + sum_i n_i |q_i|^2)
double AlsObjective(const RatingMatrix& m, const FactorModel& model);

// Alternating exact ridge solves, users then items each sweep. Factors start
// from a seeded uniform [0, 0.1] draw. Throws ConfigError for rank 0,
// non-positive lambda or zero sweeps.
FactorModel AlsTrain(const RatingMatrix& m, const AlsOptions& options = {});

class MatrixFactorizationCf final : public Recommender {
 public:
  MatrixFactorizationCf(const RatingMatrix& matrix, const AlsOptions& options = {});

  std::string_view name() const override { return "mf-als"; }
  const RatingMatrix& matrix() const override { return matrix_; }
  std::vector<ScoredItem> TopN(std::size_t user, std::size_t n) const override;
  const FactorModel& model() const { return model_; }

 private:
  const RatingMatrix& matrix_;
  FactorModel model_;
};

}  // namespace agelens

#endif  // AGELENS_ALS_H_
