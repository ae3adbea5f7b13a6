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

#include "agelens/extract.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>

#include "agelens/parallel.h"

namespace agelens {

namespace {

std::optional<double> NumberWordValue(std::string_view w) {
  static const std::map<std::string, double, std::less<>> kValues = {
      {"one", 1},  {"two", 2},   {"three", 3},   {"four", 4},   {"five", 5},
      {"six", 6},  {"seven", 7}, {"eight", 8},   {"nine", 9},   {"ten", 10},
      {"eleven", 11}, {"twelve", 12}, {"half", 0.5},
  };
  if (auto it = kValues.find(w); it != kValues.end()) return it->second;
  return std::nullopt;
}

bool StartsNumber(const Token& t) {
  return t.kind == TokenKind::kNumber || IsNumberWord(t.lower);
}

bool IsConjunction(const Token& t) {
  return t.lower == "and" || t.lower == "or" || t.lower == "to" || t.lower == "&";
}

bool IsPossessive(const Token& t) { return t.lower == "my" || t.lower == "our"; }

bool HasHalfTail(const Sentence& s, std::size_t i) {
  return i + 3 < s.size() && (s[i + 1].lower == "and" || s[i + 1].lower == "&") &&
         s[i + 2].lower == "a" && s[i + 3].lower == "half";
}

struct NumberSpan {
  std::size_t begin = 0;
  std::size_t end = 0;  // inclusive
};

// Numeric expression starting at i, if any.
std::optional<NumberSpan> MatchNumber(const Sentence& s, std::size_t i) {
  if (i >= s.size() || !StartsNumber(s[i])) return std::nullopt;
  NumberSpan span{i, i};
  if (s[i].lower != "half" && HasHalfTail(s, i)) span.end = i + 3;
  return span;
}

// Unit token within two tokens right of `end`, stopping at punctuation or at
// the start of another number.
std::optional<std::size_t> FindUnit(const Sentence& s, std::size_t end,
                                    const UnitLexicon& lexicon) {
  for (std::size_t j = end + 1; j <= end + 2 && j < s.size(); ++j) {
    if (s[j].kind == TokenKind::kPunct || StartsNumber(s[j])) return std::nullopt;
    if (lexicon.Contains(s[j].lower)) return j;
  }
  return std::nullopt;
}

}  // namespace

std::vector<AgePhrase> ExtractAgePhrases(const Sentence& sentence,
                                         const UnitLexicon& lexicon,
                                         const ExtractOptions& options) {
  std::vector<NumberSpan> numbers;
  for (std::size_t i = 0; i < sentence.size();) {
    if (auto span = MatchNumber(sentence, i)) {
      numbers.push_back(*span);
      i = span->end + 1;
    } else {
      ++i;
    }
  }

  // Resolve units right to left so that "12 and 10 years" can hand the unit
  // of the second number to the first.
  std::vector<std::optional<std::size_t>> unit_of(numbers.size());
  for (std::size_t k = numbers.size(); k-- > 0;) {
    unit_of[k] = FindUnit(sentence, numbers[k].end, lexicon);
    if (unit_of[k] || k + 1 >= numbers.size() || !unit_of[k + 1]) continue;
    const std::size_t gap_begin = numbers[k].end + 1;
    const std::size_t next = numbers[k + 1].begin;
    const bool adjacent = next == gap_begin;
    const bool joined = next == gap_begin + 1 && IsConjunction(sentence[gap_begin]);
    if (adjacent || joined) unit_of[k] = unit_of[k + 1];
  }

  std::vector<AgePhrase> phrases;
  std::vector<std::size_t> phrase_begin;
  for (std::size_t k = 0; k < numbers.size(); ++k) {
    if (!unit_of[k]) continue;
    AgePhrase p;
    for (std::size_t t = numbers[k].begin; t <= numbers[k].end; ++t) {
      p.value_tokens.push_back(sentence[t].lower);
    }
    p.unit = sentence[*unit_of[k]].lower;
    p.number_pos = numbers[k].begin;
    p.unit_pos = *unit_of[k];
    phrases.push_back(std::move(p));
    phrase_begin.push_back(numbers[k].begin);
  }

  // Each pronoun claims the nearest phrase to its right inside the window;
  // each phrase keeps the nearest claiming pronoun.
  std::vector<std::optional<std::size_t>> owner(phrases.size());
  for (std::size_t p = 0; p < sentence.size(); ++p) {
    if (!IsPossessive(sentence[p])) continue;
    for (std::size_t k = 0; k < phrases.size(); ++k) {
      const std::size_t s = phrase_begin[k];
      if (s <= p) continue;
      if (s - p > options.poss_window) break;
      const bool blocked =
          std::any_of(sentence.begin() + static_cast<std::ptrdiff_t>(p) + 1,
                      sentence.begin() + static_cast<std::ptrdiff_t>(s),
                      [](const Token& t) {
                        return t.kind == TokenKind::kPunct || IsPossessive(t);
                      });
      if (!blocked && (!owner[k] || *owner[k] < p)) owner[k] = p;
      break;
    }
  }
  for (std::size_t k = 0; k < phrases.size(); ++k) {
    if (owner[k]) phrases[k].possessive = sentence[*owner[k]].lower;
  }
  return phrases;
}

std::optional<double> ParseNumericExpression(
    std::span<const std::string> value_tokens) {
  if (value_tokens.empty()) return std::nullopt;
  const std::string& head = value_tokens.front();
  double value = 0.0;
  if (auto w = NumberWordValue(head)) {
    value = *w;
  } else {
    const char* first = head.data();
    const char* last = head.data() + head.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last) return std::nullopt;
  }
  if (value_tokens.size() == 1) return value;
  if (value_tokens.size() == 4 && head != "half" &&
      (value_tokens[1] == "and" || value_tokens[1] == "&") &&
      value_tokens[2] == "a" && value_tokens[3] == "half") {
    return value + 0.5;
  }
  return std::nullopt;
}

std::optional<AgeMention> NormalizePhrase(const AgePhrase& phrase,
                                          const UnitLexicon& lexicon,
                                          const ReviewRecord& review,
                                          const ExtractOptions& options,
                                          ExtractDiagnostics* diag) {
  ExtractDiagnostics local;
  ExtractDiagnostics& d = diag != nullptr ? *diag : local;
  ++d.phrases;
  const auto unit = lexicon.Lookup(phrase.unit);
  const auto value = ParseNumericExpression(phrase.value_tokens);
  if (!unit || !value) {
    ++d.unparseable;
    return std::nullopt;
  }
  const double years = *value / UnitsPerYear(*unit);
  if (!(years > 0.0) || !std::isfinite(years)) {
    ++d.non_positive;
    return std::nullopt;
  }
  if (years > options.max_years) {
    ++d.above_cap;
    return std::nullopt;
  }
  AgeMention m;
  m.review_id = review.review_id;
  m.user_id = review.user_id;
  m.item_id = review.item_id;
  m.date = review.date;
  m.rating = review.rating;
  m.value_years = years;
  m.unit_raw = phrase.unit;
  m.possessive = phrase.possessive.has_value();
  return m;
}

MentionList ExtractReview(const ReviewRecord& review, const UnitLexicon& lexicon,
                          const ExtractOptions& options,
                          ExtractDiagnostics* diag) {
  MentionList out;
  for (const auto& sentence : Tokenize(review.text)) {
    for (const auto& phrase : ExtractAgePhrases(sentence, lexicon, options)) {
      if (auto m = NormalizePhrase(phrase, lexicon, review, options, diag)) {
        out.push_back(std::move(*m));
      }
    }
  }
  return out;
}

MentionList ExtractCorpus(std::span<const ReviewRecord> reviews,
                          const UnitLexicon& lexicon,
                          const ExtractOptions& options, int threads,
                          ExtractDiagnostics* diag) {
  std::vector<MentionList> per_review(reviews.size());
  std::vector<ExtractDiagnostics> per_diag(reviews.size());
  ParallelFor(reviews.size(), threads, [&](std::size_t i) {
    per_review[i] = ExtractReview(reviews[i], lexicon, options, &per_diag[i]);
  });

  // Review order, then a stable sort by id: phrase order within a review is
  // kept and the result is independent of both worker count and input order.
  std::vector<std::size_t> order(reviews.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return reviews[a].review_id < reviews[b].review_id;
  });
  MentionList out;
  for (std::size_t i : order) {
    for (auto& m : per_review[i]) out.push_back(std::move(m));
    if (diag != nullptr) *diag += per_diag[i];
  }
  return out;
}

std::vector<Sentence> TokenizeCorpus(std::span<const ReviewRecord> reviews) {
  std::vector<Sentence> out;
  for (const auto& r : reviews) {
    for (auto& s : Tokenize(r.text)) out.push_back(std::move(s));
  }
  return out;
}

}  // namespace agelens
