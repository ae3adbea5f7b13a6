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

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "agelens/als.h"
#include "agelens/extract.h"
#include "agelens/knn.h"
#include "agelens/stats.h"
#include "agelens/synth.h"
#include "agelens/tokenize.h"

namespace {

using namespace agelens;

const SynthCorpus& Corpus() {
  static const SynthCorpus corpus = [] {
    SynthOptions o;
    o.n_users = 1000;
    o.n_items = 300;
    o.noise = 0.3;
    return GenerateSynthetic(o);
  }();
  return corpus;
}

void BM_Tokenize(benchmark::State& state) {
  const auto& reviews = Corpus().reviews;
  std::size_t bytes = 0;
  for (auto _ : state) {
    for (const auto& r : reviews) {
      benchmark::DoNotOptimize(Tokenize(r.text));
      bytes += r.text.size();
    }
  }
  state.SetBytesProcessed(static_cast<std::int64_t>(bytes));
}
BENCHMARK(BM_Tokenize);

void BM_ExtractCorpus(benchmark::State& state) {
  const auto& reviews = Corpus().reviews;
  const auto& lexicon = UnitLexicon::Builtin();
  const int threads = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(ExtractCorpus(reviews, lexicon, {}, threads));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(reviews.size()));
}
BENCHMARK(BM_ExtractCorpus)->Arg(1)->Arg(4);

void BM_TukeyFilter(benchmark::State& state) {
  std::mt19937_64 rng(1);
  std::lognormal_distribution<double> d(0.0, 0.8);
  std::vector<double> v(static_cast<std::size_t>(state.range(0)));
  for (auto& x : v) x = d(rng);
  for (auto _ : state) benchmark::DoNotOptimize(TukeyFilter(v));
}
BENCHMARK(BM_TukeyFilter)->Range(8, 4096);

void BM_AlsTrain(benchmark::State& state) {
  const RatingMatrix m(Corpus().ratings);
  AlsOptions o;
  o.rank = static_cast<std::size_t>(state.range(0));
  o.sweeps = 5;
  for (auto _ : state) benchmark::DoNotOptimize(AlsTrain(m, o));
}
BENCHMARK(BM_AlsTrain)->Arg(10)->Arg(20)->Unit(benchmark::kMillisecond);

void BM_UserCfTopN(benchmark::State& state) {
  const RatingMatrix m(Corpus().ratings);
  const UserBasedCf cf(m, 50);
  std::size_t u = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(cf.TopN(u, 10));
    u = (u + 1) % m.num_users();
  }
}
BENCHMARK(BM_UserCfTopN);

void BM_ItemCfTopN(benchmark::State& state) {
  const RatingMatrix m(Corpus().ratings);
  const ItemBasedCf cf(m);
  std::size_t u = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(cf.TopN(u, 10));
    u = (u + 1) % m.num_users();
  }
}
BENCHMARK(BM_ItemCfTopN);

}  // namespace

BENCHMARK_MAIN();
