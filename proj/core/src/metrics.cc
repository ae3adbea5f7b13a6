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

#include "agelens/metrics.h"

#include <algorithm>
#include <cmath>

namespace agelens {

namespace {

std::size_t Hits(std::span<const std::string> recs,
                 const std::set<std::string>& relevant, std::size_t n) {
  std::size_t hits = 0;
  for (std::size_t r = 0; r < std::min(n, recs.size()); ++r) {
    if (relevant.contains(recs[r])) ++hits;
  }
  return hits;
}

}  // namespace

double PrecisionAt(std::span<const std::string> recs,
                   const std::set<std::string>& relevant, std::size_t n) {
  if (relevant.empty() || n == 0) return 0.0;
  return static_cast<double>(Hits(recs, relevant, n)) / static_cast<double>(n);
}

double RecallAt(std::span<const std::string> recs,
                const std::set<std::string>& relevant, std::size_t n) {
  if (relevant.empty()) return 0.0;
  return static_cast<double>(Hits(recs, relevant, n)) /
         static_cast<double>(relevant.size());
}

double AveragePrecisionAt(std::span<const std::string> recs,
                          const std::set<std::string>& relevant, std::size_t n) {
  if (relevant.empty() || n == 0) return 0.0;
  double sum = 0.0;
  std::size_t hits = 0;
  for (std::size_t r = 0; r < std::min(n, recs.size()); ++r) {
    if (!relevant.contains(recs[r])) continue;
    ++hits;
    sum += static_cast<double>(hits) / static_cast<double>(r + 1);
  }
  return sum / static_cast<double>(std::min(n, relevant.size()));
}

double NdcgAt(std::span<const std::string> recs,
              const std::set<std::string>& relevant, std::size_t n) {
  if (relevant.empty() || n == 0) return 0.0;
  double dcg = 0.0;
  for (std::size_t r = 0; r < std::min(n, recs.size()); ++r) {
    if (relevant.contains(recs[r])) dcg += 1.0 / std::log2(static_cast<double>(r) + 2.0);
  }
  double ideal = 0.0;
  for (std::size_t r = 0; r < std::min(n, relevant.size()); ++r) {
    ideal += 1.0 / std::log2(static_cast<double>(r) + 2.0);
  }
  return dcg / ideal;
}

RankingMetrics ComputeMetrics(std::span<const std::string> recs,
                              const std::set<std::string>& relevant, std::size_t n) {
  return {NdcgAt(recs, relevant, n), AveragePrecisionAt(recs, relevant, n),
          PrecisionAt(recs, relevant, n), RecallAt(recs, relevant, n)};
}

}  // namespace agelens
