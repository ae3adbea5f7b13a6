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

#include "agelens/date.h"

#include <charconv>
#include <chrono>
#include <cstdio>

#include "agelens/error.h"

namespace agelens {

namespace {

std::chrono::year_month_day ToCivil(Day day) {
  return std::chrono::year_month_day{
      std::chrono::sys_days{std::chrono::days{day.value}}};
}

int ParseField(std::string_view text, std::string_view whole) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw ConfigError("invalid date '" + std::string(whole) +
                      "', expected YYYY-MM-DD");
  }
  return v;
}

}  // namespace

Day ParseDate(std::string_view text) {
  if (text.size() != 10 || text[4] != '-' || text[7] != '-') {
    throw ConfigError("invalid date '" + std::string(text) +
                      "', expected YYYY-MM-DD");
  }
  const int y = ParseField(text.substr(0, 4), text);
  const int m = ParseField(text.substr(5, 2), text);
  const int d = ParseField(text.substr(8, 2), text);
  const std::chrono::year_month_day ymd{
      std::chrono::year{y}, std::chrono::month{static_cast<unsigned>(m)},
      std::chrono::day{static_cast<unsigned>(d)}};
  if (!ymd.ok()) {
    throw ConfigError("invalid date '" + std::string(text) + "'");
  }
  return Day{std::chrono::sys_days{ymd}.time_since_epoch().count()};
}

std::string FormatDate(Day day) {
  const auto ymd = ToCivil(day);
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()),
                static_cast<unsigned>(ymd.day()));
  return buf;
}

std::string FormatMonth(Day day) { return FormatDate(day).substr(0, 7); }

}  // namespace agelens
