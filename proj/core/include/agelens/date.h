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

#ifndef AGELENS_DATE_H_
#define AGELENS_DATE_H_

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace agelens {

inline constexpr double kDaysPerYear = 365.25;

// A calendar date as whole days since 1970-01-01. Review timestamps only
// carry day precision, so everything downstream works in days.
struct Day {
  std::int64_t value = 0;

  friend constexpr auto operator<=>(Day, Day) = default;
};

constexpr Day DayFromUnixSeconds(std::int64_t seconds) {
  // Floor division so pre-epoch timestamps land on the right day.
  std::int64_t d = seconds / 86400;
  if (seconds % 86400 < 0) --d;
  return Day{d};
}

constexpr std::int64_t UnixSeconds(Day day) { return day.value * 86400; }

constexpr double YearsBetween(Day from, Day to) {
  return static_cast<double>(to.value - from.value) / kDaysPerYear;
}

// "YYYY-MM-DD". Throws ConfigError on malformed or impossible dates.
Day ParseDate(std::string_view text);
std::string FormatDate(Day day);
// "YYYY-MM" bucket label.
std::string FormatMonth(Day day);

}  // namespace agelens

#endif  // AGELENS_DATE_H_
