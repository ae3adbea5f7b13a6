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

#include "agelens/synth.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <random>
#include <sstream>

#include "agelens/error.h"
#include "agelens/io.h"

namespace agelens {

namespace {

constexpr double kDaysPerMonth = kDaysPerYear / 12.0;

// Portable draws on top of mt19937_64; the standard distributions are
// implementation-defined and would make corpora differ across toolchains.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}
  double Uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }
  double Uniform(double lo, double hi) { return lo + (hi - lo) * Uniform(); }
  // Integer in [lo, hi].
  std::int64_t Int(std::int64_t lo, std::int64_t hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo + 1);
    return lo + static_cast<std::int64_t>(gen_() % span);
  }
  bool Chance(double p) { return Uniform() < p; }
  template <typename T>
  const T& Pick(const std::vector<T>& v) {
    return v[static_cast<std::size_t>(Int(0, static_cast<std::int64_t>(v.size()) - 1))];
  }
  std::size_t Weighted(const std::vector<double>& w) {
    double total = 0.0;
    for (double x : w) total += x;
    double r = Uniform() * total;
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (r < w[i]) return i;
      r -= w[i];
    }
    return w.size() - 1;
  }

 private:
  std::mt19937_64 gen_;
};

std::string PaddedId(char prefix, std::size_t i, std::size_t n) {
  const int width = std::max<int>(4, static_cast<int>(std::to_string(n).size()));
  char buf[32];
  std::snprintf(buf, sizeof buf, "%c%0*zu", prefix, width, i);
  return buf;
}

const std::vector<std::string> kNumberWords = {
    "zero", "one", "two", "three", "four",  "five",  "six",
    "seven", "eight", "nine", "ten", "eleven", "twelve"};

struct Phrase {
  std::string text;      // e.g. "2 and a half years"
  std::string unit_raw;  // surface unit token
  double value_years = 0.0;
};

std::string Number(int n, Rng& rng) {
  if (n <= 12 && rng.Chance(0.3)) return kNumberWords[static_cast<std::size_t>(n)];
  return std::to_string(n);
}

// A canonical phrase for an age of `months` months. Ages are generated so
// that those past two years are whole or half years.
Phrase AgePhraseFor(int months, double noise, Rng& rng) {
  Phrase p;
  p.value_years = months / 12.0;
  const bool typo = noise > 0.0 && rng.Chance(noise);
  if (months < 24) {
    p.unit_raw = months == 1 ? "month" : "months";
    if (typo) p.unit_raw = rng.Pick(std::vector<std::string>{"mnths", "mnts", "monhts"});
    else if (rng.Chance(0.1)) p.unit_raw = "mos";
    p.text = Number(months, rng) + " " + p.unit_raw;
    return p;
  }
  const int years = months / 12;
  p.unit_raw = "years";
  if (typo) p.unit_raw = rng.Pick(std::vector<std::string>{"yeras", "yers", "yaers"});
  else if (rng.Chance(0.15)) p.unit_raw = "yrs";
  if (months % 12 == 0) {
    const double style = rng.Uniform();
    if (style < 0.15) {
      p.text = std::to_string(years) + "-" + p.unit_raw;
    } else if (style < 0.25) {
      p.text = std::to_string(years) + p.unit_raw;
    } else {
      p.text = Number(years, rng) + " " + p.unit_raw;
    }
  } else if (rng.Chance(0.5)) {
    p.text = Number(years, rng) + " and a half " + p.unit_raw;
  } else {
    p.text = std::to_string(years) + ".5 " + p.unit_raw;
  }
  return p;
}

const std::vector<std::string> kChild = {"son", "daughter", "boy", "girl", "baby", "toddler"};

std::string PossessiveSentence(const std::string& age, Rng& rng) {
  const std::string& who = rng.Pick(kChild);
  switch (rng.Int(0, 3)) {
    case 0: return "My " + who + " is " + age + " old and loves it.";
    case 1: return "Bought this for my " + age + " old " + who + ".";
    case 2: return "Our " + who + " is " + age + " now.";
    default: return "My " + age + " old plays with it every day.";
  }
}

std::string PlainSentence(const std::string& age, Rng& rng) {
  switch (rng.Int(0, 2)) {
    case 0: return "Great for a " + age + " old.";
    case 1: return "Good choice for kids around " + age + ".";
    default: return "A " + age + " old would enjoy this.";
  }
}

const std::vector<std::string> kPositive = {
    "Sturdy and well made.", "The colors are bright and cheerful.",
    "Worth every penny.", "It keeps the little one busy for ages.",
    "Easy to clean and store."};
const std::vector<std::string> kNegative = {
    "Not really suitable at this stage.", "Lost interest very quickly.",
    "Too advanced or too simple, hard to say.", "Would not buy again."};

const std::vector<std::string> kAdjectives = {"Happy", "Little", "Bright", "Soft",
                                              "Busy", "Tiny", "Clever", "Cozy"};
const std::vector<std::string> kNouns = {"Rattle", "Blocks", "Puzzle", "Stroller",
                                         "Teether", "Scooter", "Book", "Walker",
                                         "Crayons", "Bottle"};

void CheckRate(double v, const char* name) {
  if (!(v >= 0.0 && v <= 1.0)) {
    throw ConfigError(std::string("synth option '") + name + "' must be in [0,1]");
  }
}

}  // namespace

SynthCorpus GenerateSynthetic(const SynthOptions& o) {
  if (o.n_users == 0 || o.n_items == 0) throw ConfigError("synth sizes must be >= 1");
  if (o.min_purchases == 0 || o.min_purchases > o.max_purchases) {
    throw ConfigError("synth purchases need 1 <= min <= max");
  }
  CheckRate(o.noise, "noise");
  CheckRate(o.possessive_rate, "possessive_rate");
  CheckRate(o.plain_rate, "plain_rate");
  CheckRate(o.in_range_rate, "in_range_rate");
  if (o.possessive_rate + o.plain_rate > 1.0) {
    throw ConfigError("synth possessive_rate + plain_rate must be <= 1");
  }

  Rng rng(o.seed);
  SynthCorpus c;

  // Items: popularity follows a Zipf law over a shuffled rank order.
  std::vector<std::size_t> rank(o.n_items);
  for (std::size_t i = 0; i < o.n_items; ++i) rank[i] = i + 1;
  for (std::size_t i = o.n_items; i > 1; --i) {
    std::swap(rank[i - 1], rank[static_cast<std::size_t>(rng.Int(0, static_cast<std::int64_t>(i) - 1))]);
  }
  for (std::size_t i = 0; i < o.n_items; ++i) {
    SynthItem item;
    item.item_id = PaddedId('I', i + 1, o.n_items);
    item.title = rng.Pick(kAdjectives) + " " + rng.Pick(kNouns) + " " + std::to_string(i + 1);
    item.low_years = std::round(rng.Uniform(0.0, 3.5) * 100.0) / 100.0;
    item.high_years = item.low_years + std::round(rng.Uniform(0.25, 1.5) * 100.0) / 100.0;
    item.popularity = 1.0 / std::pow(static_cast<double>(rank[i]), o.zipf_exponent);
    c.items.push_back(std::move(item));
  }

  const Day epoch_start = ParseDate("2008-01-01");
  std::size_t review_seq = 0;
  const std::size_t review_total_hint = o.n_users * o.max_purchases;

  for (std::size_t u = 0; u < o.n_users; ++u) {
    SynthUser user;
    user.user_id = PaddedId('U', u + 1, o.n_users);
    int months = static_cast<int>(rng.Int(1, 30));
    const Day first = Day{epoch_start.value + rng.Int(0, 4 * 365)};
    user.birth = Day{first.value - static_cast<std::int64_t>(std::llround(months * kDaysPerMonth))};

    const auto n_purchases = static_cast<std::size_t>(
        rng.Int(static_cast<std::int64_t>(o.min_purchases),
                static_cast<std::int64_t>(o.max_purchases)));
    std::vector<bool> bought(o.n_items, false);
    for (std::size_t k = 0; k < n_purchases; ++k) {
      if (k > 0) months += months < 24 ? static_cast<int>(rng.Int(1, 3)) : 6;
      // Past two years ages move in half-year steps.
      if (months >= 24 && months % 6 != 0) months += 6 - months % 6;
      const double age = months / 12.0;
      const Day date{user.birth.value + static_cast<std::int64_t>(std::llround(months * kDaysPerMonth))};

      const bool want_in = rng.Chance(o.in_range_rate);
      std::vector<std::size_t> cands;
      std::vector<double> weights;
      for (std::size_t i = 0; i < o.n_items; ++i) {
        if (bought[i]) continue;
        const bool in = c.items[i].low_years <= age && age <= c.items[i].high_years;
        if (in == want_in) {
          cands.push_back(i);
          weights.push_back(c.items[i].popularity);
        }
      }
      if (cands.empty()) {
        for (std::size_t i = 0; i < o.n_items; ++i) {
          if (bought[i]) continue;
          cands.push_back(i);
          weights.push_back(c.items[i].popularity);
        }
      }
      if (cands.empty()) break;  // user owns every item
      const std::size_t pick = cands[rng.Weighted(weights)];
      bought[pick] = true;
      const SynthItem& item = c.items[pick];
      const bool in_range = item.low_years <= age && age <= item.high_years;

      ReviewRecord r;
      r.review_id = PaddedId('R', ++review_seq, review_total_hint);
      r.user_id = user.user_id;
      r.item_id = item.item_id;
      r.date = date;
      r.rating = in_range ? (rng.Chance(0.6) ? 5 : 4) : static_cast<int>(rng.Int(1, 3));
      r.summary = in_range ? "Just right" : "Not for us";

      std::vector<std::string> sentences;
      sentences.push_back(in_range ? rng.Pick(kPositive) : rng.Pick(kNegative));
      auto plant = [&](const Phrase& p, bool possessive, MentionList& into) {
        AgeMention m;
        m.review_id = r.review_id;
        m.user_id = r.user_id;
        m.item_id = r.item_id;
        m.date = r.date;
        m.rating = r.rating;
        m.value_years = p.value_years;
        m.unit_raw = p.unit_raw;
        m.possessive = possessive;
        into.push_back(std::move(m));
      };
      const double roll = rng.Uniform();
      if (roll < o.possessive_rate + o.plain_rate) {
        const bool possessive = roll < o.possessive_rate;
        const Phrase p = AgePhraseFor(months, o.noise, rng);
        sentences.push_back(possessive ? PossessiveSentence(p.text, rng)
                                       : PlainSentence(p.text, rng));
        plant(p, possessive, c.planted);
      }
      if (o.noise > 0.0 && rng.Chance(o.noise)) {
        const int n = static_cast<int>(rng.Int(2, 11));
        Phrase d;
        d.unit_raw = rng.Chance(0.5) ? "weeks" : "months";
        d.value_years = n / (d.unit_raw == "weeks" ? 52.0 : 12.0);
        d.text = std::to_string(n) + " " + d.unit_raw;
        sentences.push_back("It broke after " + d.text + " of use.");
        plant(d, false, c.distractors);
      }
      if (rng.Chance(0.5)) sentences.push_back(in_range ? rng.Pick(kPositive) : rng.Pick(kNegative));

      for (const auto& s : sentences) r.text += (r.text.empty() ? "" : " ") + s;
      c.ratings.push_back({r.user_id, r.item_id, r.rating, r.date});
      c.reviews.push_back(std::move(r));
    }
    c.users.push_back(std::move(user));
  }
  return c;
}

std::vector<std::string> WriteSynthetic(const SynthCorpus& c, const std::string& dir) {
  std::filesystem::create_directories(dir);
  const std::filesystem::path d(dir);
  std::vector<std::string> files;
  auto emit = [&](const std::string& name, const std::string& body) {
    WriteFile((d / name).string(), body);
    files.push_back(name);
  };

  std::string reviews;
  for (const auto& r : c.reviews) reviews += ToJsonLine(r) + "\n";
  emit("reviews.jsonl", reviews);

  std::ostringstream ratings;
  WriteRatingsCsv(ratings, c.ratings);
  emit("ratings.csv", ratings.str());

  std::ostringstream items, titles;
  items << "item_id,low_years,high_years,popularity\n";
  titles << "item_id,title\n";
  for (const auto& i : c.items) {
    items << i.item_id << ',' << i.low_years << ',' << i.high_years << ',' << i.popularity << '\n';
    titles << i.item_id << ',' << i.title << '\n';
  }
  emit("items.csv", items.str());
  emit("item_titles.csv", titles.str());

  std::string users = "user_id,birth_date\n";
  for (const auto& u : c.users) users += u.user_id + "," + FormatDate(u.birth) + "\n";
  emit("users.csv", users);

  std::ostringstream planted, distractors;
  WriteMentions(planted, c.planted);
  WriteMentions(distractors, c.distractors);
  emit("planted_mentions.jsonl", planted.str());
  emit("distractor_mentions.jsonl", distractors.str());

  emit("experiment.json",
       "{\n  \"item_titles\": \"item_titles.csv\",\n  \"ratings\": \"ratings.csv\",\n"
       "  \"reviews\": \"reviews.jsonl\"\n}\n");
  return files;
}

}  // namespace agelens
