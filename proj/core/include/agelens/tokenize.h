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

#ifndef AGELENS_TOKENIZE_H_
#define AGELENS_TOKENIZE_H_

#include <string>
#include <string_view>
#include <vector>

namespace agelens {

enum class TokenKind {
  kWord,
  kNumber,  // digits, optionally with one decimal point ("2.5")
  kPunct,   // clause punctuation kept as a boundary marker: , ; :
};

struct Token {
  std::string text;   // original casing
  std::string lower;  // ASCII-lowercased view
  TokenKind kind = TokenKind::kWord;

  friend bool operator==(const Token&, const Token&) = default;
};

using Sentence = std::vector<Token>;

// Splits review text into sentences on terminal punctuation (. ! ? and
// ellipses) and each sentence into tokens. A period between two digits is a
// decimal point, not a terminator. Digit runs followed directly by letters
// are split ("3years" -> "3", "years") and hyphens are boundaries
// ("3-years" -> "3", "years"). Empty sentences are dropped.
std::vector<Sentence> Tokenize(std::string_view text);

// Token texts of one sentence in original casing.
std::vector<std::string> TokenTexts(const Sentence& sentence);

std::string AsciiLower(std::string_view s);

}  // namespace agelens

#endif  // AGELENS_TOKENIZE_H_
