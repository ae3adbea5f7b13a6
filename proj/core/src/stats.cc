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

#include "agelens/stats.h"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstddef>

namespace agelens {

double PercentileSorted(std::span<const double> sorted, double p) {
  assert(!sorted.empty());
  const double h = static_cast<double>(sorted.size() - 1) * p;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  if (lo + 1 >= sorted.size()) return sorted.back();
  const double frac = h - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

Fences TukeyFences(std::span<const double> values, const TukeyOptions& options) {
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const double low = PercentileSorted(sorted, options.p_low);
  const double high = PercentileSorted(sorted, options.p_high);
  const double spread = high - low;
  return {low - options.fence_k * spread, high + options.fence_k * spread};
}

std::vector<double> TukeyFilter(std::span<const double> values,
                                const TukeyOptions& options) {
  if (values.empty()) return {};
  const Fences f = TukeyFences(values, options);
  std::vector<double> out;
  out.reserve(values.size());
  for (double v : values) {
    if (v >= f.lower && v <= f.upper) out.push_back(v);
  }
  return out;
}

std::optional<LinearFit> FitLinear(std::span<const double> x,
                                   std::span<const double> y) {
  assert(x.size() == y.size());
  const std::size_t n = x.size();
  if (n < 2) return std::nullopt;
  const bool spread = std::any_of(x.begin(), x.end(), [&](double v) { return v != x[0]; });
  if (!spread) return std::nullopt;

  // Centered sums keep the closed form well conditioned.
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (!(sxx > 0.0)) return std::nullopt;

  LinearFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double sse = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = y[i] - (fit.intercept + fit.slope * x[i]);
    sse += r * r;
  }
  fit.residual_rms = std::sqrt(sse / static_cast<double>(n));
  return fit;
}

}  // namespace agelens
