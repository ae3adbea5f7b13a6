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

#include "agelens/lexicon.h"

#include <algorithm>
#include <cmath>
#include <unordered_map>
#include <vector>

namespace agelens {

namespace {

constexpr std::size_t UnitIndex(Unit u) { return static_cast<std::size_t>(u); }

// Canonical spellings a candidate is measured against.
constexpr std::array<std::pair<Unit, std::string_view>, 6> kCanonicalForms = {{
    {Unit::kYear, "year"},
    {Unit::kYear, "years"},
    {Unit::kMonth, "month"},
    {Unit::kMonth, "months"},
    {Unit::kWeek, "week"},
    {Unit::kWeek, "weeks"},
}};

bool IsAlphaWord(std::string_view s) {
  if (s.size() < 2) return false;
  return std::all_of(s.begin(), s.end(),
                     [](char c) { return c >= 'a' && c <= 'z'; });
}

bool IsNumberToken(const Token& t) {
  return t.kind == TokenKind::kNumber || IsNumberWord(t.lower);
}

// Occurrences of each candidate word directly after a number token.
std::unordered_map<std::string, std::size_t> NumberAdjacentCounts(
    std::span<const Sentence> corpus) {
  std::unordered_map<std::string, std::size_t> counts;
  for (const auto& sentence : corpus) {
    for (std::size_t i = 1; i < sentence.size(); ++i) {
      const Token& t = sentence[i];
      if (t.kind != TokenKind::kWord || !IsNumberToken(sentence[i - 1])) continue;
      ++counts[t.lower];
    }
  }
  return counts;
}

bool Admissible(const std::string& word, std::size_t count,
                const UnitLexicon& lexicon,
                const VariantDiscoveryOptions& options) {
  return count >= options.min_count && IsAlphaWord(word) &&
         !lexicon.Contains(word) && !IsNumberWord(word) &&
         !VariantStoplist().contains(word) &&
         !options.extra_stopwords.contains(word);
}

std::optional<Unit> NearestByEditDistance(const std::string& word,
                                          std::size_t max_distance) {
  std::array<std::size_t, 3> best;
  best.fill(static_cast<std::size_t>(-1));
  for (const auto& [unit, form] : kCanonicalForms) {
    best[UnitIndex(unit)] = std::min(best[UnitIndex(unit)], EditDistance(word, form));
  }
  const auto it = std::min_element(best.begin(), best.end());
  if (*it > max_distance) return std::nullopt;
  if (std::count(best.begin(), best.end(), *it) > 1) return std::nullopt;
  return static_cast<Unit>(it - best.begin());
}

using ContextVector = std::unordered_map<std::string, double>;

std::string ContextKey(const Token& t) {
  return IsNumberToken(t) ? std::string("<num>") : t.lower;
}

std::unordered_map<std::string, ContextVector> BuildContexts(
    std::span<const Sentence> corpus, int window) {
  std::unordered_map<std::string, ContextVector> contexts;
  const auto w = static_cast<std::ptrdiff_t>(std::max(window, 1));
  for (const auto& sentence : corpus) {
    const auto n = static_cast<std::ptrdiff_t>(sentence.size());
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      if (sentence[i].kind != TokenKind::kWord) continue;
      ContextVector& ctx = contexts[sentence[i].lower];
      for (std::ptrdiff_t j = std::max<std::ptrdiff_t>(0, i - w);
           j <= std::min(n - 1, i + w); ++j) {
        if (j == i || sentence[j].kind == TokenKind::kPunct) continue;
        ctx[ContextKey(sentence[j])] += 1.0;
      }
    }
  }
  return contexts;
}

double Cosine(const ContextVector& a, const ContextVector& b) {
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (const auto& [k, v] : a) {
    na += v * v;
    if (auto it = b.find(k); it != b.end()) dot += v * it->second;
  }
  for (const auto& [k, v] : b) nb += v * v;
  if (na == 0.0 || nb == 0.0) return 0.0;
  return dot / (std::sqrt(na) * std::sqrt(nb));
}

}  // namespace

double YearsPerUnit(Unit unit) {
  switch (unit) {
    case Unit::kYear:
      return 1.0;
    case Unit::kMonth:
      return 1.0 / 12.0;
    case Unit::kWeek:
      return 1.0 / 52.0;
  }
  return 1.0;
}

double UnitsPerYear(Unit unit) {
  switch (unit) {
    case Unit::kYear:
      return 1.0;
    case Unit::kMonth:
      return 12.0;
    case Unit::kWeek:
      return 52.0;
  }
  return 1.0;
}

std::string_view UnitName(Unit unit) {
  switch (unit) {
    case Unit::kYear:
      return "year";
    case Unit::kMonth:
      return "month";
    case Unit::kWeek:
      return "week";
  }
  return "year";
}

std::optional<Unit> UnitFromName(std::string_view name) {
  for (Unit u : kAllUnits) {
    if (UnitName(u) == name) return u;
  }
  return std::nullopt;
}

UnitLexicon UnitLexicon::Builtin() {
  UnitLexicon lex;
  for (std::string_view v : {"year", "years", "yr", "yrs"}) lex.Add(Unit::kYear, v);
  for (std::string_view v : {"month", "months", "mo", "mos"}) lex.Add(Unit::kMonth, v);
  for (std::string_view v : {"week", "weeks", "wk", "wks"}) lex.Add(Unit::kWeek, v);
  return lex;
}

bool UnitLexicon::Add(Unit unit, std::string_view variant) {
  std::string key = AsciiLower(variant);
  if (auto it = index_.find(key); it != index_.end()) return it->second == unit;
  index_.emplace(key, unit);
  variants_[UnitIndex(unit)].insert(std::move(key));
  return true;
}

std::optional<Unit> UnitLexicon::Lookup(std::string_view lower) const {
  if (auto it = index_.find(lower); it != index_.end()) return it->second;
  return std::nullopt;
}

const std::set<std::string>& UnitLexicon::Variants(Unit unit) const {
  return variants_[UnitIndex(unit)];
}

std::size_t EditDistance(std::string_view a, std::string_view b) {
  std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

const std::set<std::string, std::less<>>& VariantStoplist() {
  static const std::set<std::string, std::less<>> kStop = {
      "bears",  "dear",    "deer",    "ears",     "gears",   "hears",
      "near",   "pears",   "rear",    "tear",     "tears",   "wear",
      "wears",  "yeah",    "yes",     "yet",      "yard",    "yards",
      "yearly", "meals",   "mouth",   "mouths",   "moth",    "moths",
      "monday", "mother",  "most",    "motion",   "monthly", "meek",
      "seek",   "seeks",   "peek",    "peeks",    "geeks",   "reeks",
      "weed",   "weeds",   "wheel",   "wheels",   "sweet",   "sweets",
      "weak",   "wee",     "weekly",  "weekend",  "weekends", "works",
      "walks",  "we",      "ye",      "yo",       "or",      "on",
      "no",     "to",      "so",      "do",       "go",
  };
  return kStop;
}

bool IsNumberWord(std::string_view lower) {
  static const std::set<std::string, std::less<>> kWords = {
      "one", "two", "three", "four",   "five",   "six",   "seven",
      "eight", "nine", "ten", "eleven", "twelve", "half",
  };
  return kWords.contains(lower);
}

UnitLexicon DiscoverUnitVariants(std::span<const Sentence> corpus,
                                 const UnitLexicon& seeds,
                                 const VariantDiscoveryOptions& options) {
  UnitLexicon out = seeds;
  const auto counts = NumberAdjacentCounts(corpus);

  // Sorted candidate order keeps Add() order, and therefore the result,
  // independent of hash iteration order.
  std::vector<std::string> candidates;
  for (const auto& [word, count] : counts) {
    if (Admissible(word, count, seeds, options)) candidates.push_back(word);
  }
  std::sort(candidates.begin(), candidates.end());

  if (options.strategy == VariantStrategy::kEditDistance) {
    for (const auto& word : candidates) {
      if (auto unit = NearestByEditDistance(word, options.max_edit_distance)) {
        out.Add(*unit, word);
      }
    }
    return out;
  }

  const auto contexts = BuildContexts(corpus, options.window);
  std::array<ContextVector, 3> unit_contexts;
  for (Unit u : kAllUnits) {
    for (const auto& variant : seeds.Variants(u)) {
      auto it = contexts.find(variant);
      if (it == contexts.end()) continue;
      for (const auto& [k, v] : it->second) unit_contexts[UnitIndex(u)][k] += v;
    }
  }
  for (const auto& word : candidates) {
    auto it = contexts.find(word);
    if (it == contexts.end()) continue;
    std::array<double, 3> sim{};
    for (Unit u : kAllUnits) {
      sim[UnitIndex(u)] = Cosine(it->second, unit_contexts[UnitIndex(u)]);
    }
    const auto best = std::max_element(sim.begin(), sim.end());
    if (*best < options.similarity_threshold) continue;
    const bool tie = std::count_if(sim.begin(), sim.end(), [&](double s) {
                       return std::abs(s - *best) <= 1e-12;
                     }) > 1;
    if (tie) continue;
    out.Add(static_cast<Unit>(best - sim.begin()), word);
  }
  return out;
}

}  // namespace agelens
