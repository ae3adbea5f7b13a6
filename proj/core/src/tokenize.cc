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

#include "agelens/tokenize.h"

#include <cctype>

namespace agelens {

namespace {

bool IsDigit(char c) { return c >= '0' && c <= '9'; }
bool IsAsciiAlpha(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}
bool IsWordByte(char c) {
  return IsAsciiAlpha(c) || static_cast<unsigned char>(c) >= 0x80;
}

// Multi-byte UTF-8 punctuation that should act like its ASCII counterpart.
enum class Special { kNone, kSpace, kSentenceEnd };

Special ClassifyUtf8(std::string_view text, std::size_t i, std::size_t* len) {
  const auto b = [&](std::size_t k) {
    return i + k < text.size() ? static_cast<unsigned char>(text[i + k]) : 0;
  };
  if (b(0) == 0xC2 && b(1) == 0xA0) {  // no-break space
    *len = 2;
    return Special::kSpace;
  }
  if (b(0) == 0xE2 && b(1) == 0x80) {
    switch (b(2)) {
      case 0x93:  // en dash
      case 0x94:  // em dash
      case 0x9C:  // left double quote
      case 0x9D:  // right double quote
        *len = 3;
        return Special::kSpace;
      case 0xA6:  // ellipsis
        *len = 3;
        return Special::kSentenceEnd;
      default:
        break;
    }
  }
  return Special::kNone;
}

class Builder {
 public:
  void Push(std::string text, TokenKind kind) {
    Token t;
    t.lower = AsciiLower(text);
    t.text = std::move(text);
    t.kind = kind;
    current_.push_back(std::move(t));
  }
  void EndSentence() {
    if (!current_.empty()) sentences_.push_back(std::move(current_));
    current_.clear();
  }
  std::vector<Sentence> Finish() {
    EndSentence();
    return std::move(sentences_);
  }

 private:
  Sentence current_;
  std::vector<Sentence> sentences_;
};

}  // namespace

std::string AsciiLower(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

std::vector<Sentence> Tokenize(std::string_view text) {
  Builder builder;
  std::size_t i = 0;
  const std::size_t n = text.size();
  while (i < n) {
    const char c = text[i];
    std::size_t special_len = 0;
    switch (ClassifyUtf8(text, i, &special_len)) {
      case Special::kSpace:
        i += special_len;
        continue;
      case Special::kSentenceEnd:
        builder.EndSentence();
        i += special_len;
        continue;
      case Special::kNone:
        break;
    }

    if (IsDigit(c)) {
      std::size_t j = i;
      bool seen_point = false;
      while (j < n) {
        if (IsDigit(text[j])) {
          ++j;
        } else if (text[j] == '.' && !seen_point && j + 1 < n &&
                   IsDigit(text[j + 1])) {
          seen_point = true;
          ++j;
        } else {
          break;
        }
      }
      builder.Push(std::string(text.substr(i, j - i)), TokenKind::kNumber);
      i = j;
      continue;
    }

    if (IsWordByte(c)) {
      std::size_t j = i;
      while (j < n) {
        std::size_t len = 0;
        if (ClassifyUtf8(text, j, &len) != Special::kNone) break;
        if (IsWordByte(text[j]) || IsDigit(text[j])) {
          ++j;
        } else if (text[j] == '\'' && j + 1 < n && IsWordByte(text[j + 1])) {
          ++j;
        } else {
          break;
        }
      }
      builder.Push(std::string(text.substr(i, j - i)), TokenKind::kWord);
      i = j;
      continue;
    }

    switch (c) {
      case '.':
      case '!':
      case '?':
        builder.EndSentence();
        break;
      case ',':
      case ';':
      case ':':
        builder.Push(std::string(1, c), TokenKind::kPunct);
        break;
      case '&':
        builder.Push("&", TokenKind::kWord);
        break;
      default:
        // Whitespace, hyphens, brackets, quotes and anything else separate
        // tokens without producing one.
        break;
    }
    ++i;
  }
  return builder.Finish();
}

std::vector<std::string> TokenTexts(const Sentence& sentence) {
  std::vector<std::string> out;
  out.reserve(sentence.size());
  for (const auto& t : sentence) out.push_back(t.text);
  return out;
}

}  // namespace agelens
