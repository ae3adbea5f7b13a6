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

#ifndef AGELENS_LEXICON_H_
#define AGELENS_LEXICON_H_

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>

#include "agelens/tokenize.h"

namespace agelens {

enum class Unit { kYear, kMonth, kWeek };

inline constexpr std::array<Unit, 3> kAllUnits = {Unit::kYear, Unit::kMonth,
                                                  Unit::kWeek};

// 1, 1/12 and 1/52.
double YearsPerUnit(Unit unit);
// 1, 12 and 52. Converting with value / UnitsPerYear rounds once.
double UnitsPerYear(Unit unit);
std::string_view UnitName(Unit unit);
std::optional<Unit> UnitFromName(std::string_view name);

// Surface variants for each canonical unit. A variant belongs to at most one
// unit.
class UnitLexicon {
 public:
  UnitLexicon() = default;

  // year/years/yr/yrs, month/months/mo/mos, week/weeks/wk/wks.
  static UnitLexicon Builtin();

  // Adds a lowercased variant. Returns false (and changes nothing) if it is
  // already registered under a different unit.
  bool Add(Unit unit, std::string_view variant);

  std::optional<Unit> Lookup(std::string_view lower) const;
  bool Contains(std::string_view lower) const { return Lookup(lower).has_value(); }
  const std::set<std::string>& Variants(Unit unit) const;
  std::size_t size() const { return index_.size(); }

  friend bool operator==(const UnitLexicon&, const UnitLexicon&) = default;

 private:
  std::map<std::string, Unit, std::less<>> index_;
  std::array<std::set<std::string>, 3> variants_;
};

enum class VariantStrategy {
  kEditDistance,  // default: spelling distance + number adjacency
  kSkipGram,      // context similarity over a +/- window co-occurrence model
};

struct VariantDiscoveryOptions {
  VariantStrategy strategy = VariantStrategy::kEditDistance;
  int window = 3;
  // Minimum occurrences directly after a number token.
  std::size_t min_count = 5;
  std::size_t max_edit_distance = 2;
  double similarity_threshold = 0.8;
  // Words never admitted, on top of the built-in stoplist.
  std::set<std::string> extra_stopwords;
};

// Levenshtein distance on bytes.
std::size_t EditDistance(std::string_view a, std::string_view b);

// The built-in list of real words that sit close to unit spellings
// ("ears", "mouth", "wheels", ...).
const std::set<std::string, std::less<>>& VariantStoplist();

// True for "one".."twelve" and "half".
bool IsNumberWord(std::string_view lower);

// Returns `seeds` extended with misspelt or shorthand unit variants found in
// the corpus. Each admitted variant goes to its nearest canonical unit; ties
// are rejected.
UnitLexicon DiscoverUnitVariants(std::span<const Sentence> corpus,
                                 const UnitLexicon& seeds,
                                 const VariantDiscoveryOptions& options = {});

}  // namespace agelens

#endif  // AGELENS_LEXICON_H_
