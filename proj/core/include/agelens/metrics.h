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

#ifndef AGELENS_METRICS_H_
#define AGELENS_METRICS_H_

#include <cstddef>
#include <set>
#include <span>
#include <string>

namespace agelens {

// Binary-relevance ranking metrics over the first n recommendations. An
// empty relevant set scores 0 everywhere.
//   P@n    = hits / n
//   R@n    = hits / |relevant|
//   MAP@n  = sum of precision at each hit rank / min(n, |relevant|)
//   NDCG@n = DCG / ideal DCG with gain 1 and discount 1 / log2(rank + 1)
double PrecisionAt(std::span<const std::string> recs,
                   const std::set<std::string>& relevant, std::size_t n);
double RecallAt(std::span<const std::string> recs,
                const std::set<std::string>& relevant, std::size_t n);
double AveragePrecisionAt(std::span<const std::string> recs,
                          const std::set<std::string>& relevant, std::size_t n);
double NdcgAt(std::span<const std::string> recs,
              const std::set<std::string>& relevant, std::size_t n);

struct RankingMetrics {
  double ndcg = 0.0;
  double map = 0.0;
  double precision = 0.0;
  double recall = 0.0;

  RankingMetrics& operator+=(const RankingMetrics& o) {
    ndcg += o.ndcg;
    map += o.map;
    precision += o.precision;
    recall += o.recall;
    return *this;
  }
};

RankingMetrics ComputeMetrics(std::span<const std::string> recs,
                              const std::set<std::string>& relevant, std::size_t n);

}  // namespace agelens

#endif  // AGELENS_METRICS_H_
