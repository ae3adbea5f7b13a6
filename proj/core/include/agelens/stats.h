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

#ifndef AGELENS_STATS_H_
#define AGELENS_STATS_H_

#include <optional>
#include <span>
#include <vector>

namespace agelens {

// Percentile of ascending-sorted data by linear interpolation between closest
// ranks: h = (n - 1) * p, x[floor h] + (h - floor h) * (x[floor h + 1] - x[floor h]).
// p in [0, 1]; `sorted` must be non-empty.
double PercentileSorted(std::span<const double> sorted, double p);

struct TukeyOptions {
  double p_low = 0.05;
  double p_high = 0.95;
  // 0 clips to [P_low, P_high].
  double fence_k = 1.5;
};

struct Fences {
  double lower = 0.0;
  double upper = 0.0;
};

// [L - k*S, H + k*S] with L, H the low/high percentiles and S = H - L.
Fences TukeyFences(std::span<const double> values, const TukeyOptions& options = {});

// Values inside the fences, in input order. Empty input gives empty output.
std::vector<double> TukeyFilter(std::span<const double> values,
                                const TukeyOptions& options = {});

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double residual_rms = 0.0;
};

// Ordinary least squares of y on x. nullopt when fewer than two distinct x.
std::optional<LinearFit> FitLinear(std::span<const double> x,
                                   std::span<const double> y);

}  // namespace agelens

#endif  // AGELENS_STATS_H_
