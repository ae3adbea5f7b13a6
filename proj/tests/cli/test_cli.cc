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

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

namespace fs = std::filesystem;

namespace {

struct Result {
  int code = -1;
  std::string out;
  std::string err;
};

std::string Slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

class Sandbox {
 public:
  explicit Sandbox(const std::string& name) : dir_(fs::temp_directory_path() / ("agelens_cli_" + name)) {
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  ~Sandbox() { fs::remove_all(dir_); }

  std::string Path(const std::string& name) const { return (dir_ / name).string(); }

  Result Run(const std::string& args) const {
    const std::string out = Path("stdout.txt"), err = Path("stderr.txt");
    const std::string cmd = std::string(AGELENS_CLI_PATH) + " " + args + " >" + out + " 2>" + err;
    const int status = std::system(cmd.c_str());
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, Slurp(out), Slurp(err)};
  }

 private:
  fs::path dir_;
};

std::string ErrorKind(const Result& r) {
  // The error object is the last line on stderr.
  auto end = r.err.find_last_not_of('\n');
  auto begin = r.err.rfind('\n', end);
  auto line = r.err.substr(begin == std::string::npos ? 0 : begin + 1, end - (begin == std::string::npos ? 0 : begin + 1) + 1);
  auto j = nlohmann::json::parse(line, nullptr, false);
  if (j.is_discarded() || !j.contains("error")) return "<none>";
  CHECK(j["error"]["exit_code"] == r.code);
  return j["error"]["kind"];
}

}  // namespace

TEST_CASE("usage and config errors exit 1") {
  Sandbox s("usage");
  auto r = s.Run("stats --bogus");
  CHECK(r.code == 1);
  CHECK(ErrorKind(r) == "usage");
  r = s.Run("");
  CHECK(r.code == 1);
  r = s.Run("--log-level loud stats --input x");
  CHECK(r.code == 1);

  std::ofstream(s.Path("bad.json")) << R"({"reviews": "r.jsonl", "nonsense": 1})";
  r = s.Run("evaluate --config " + s.Path("bad.json") + " --out " + s.Path("rep.json"));
  CHECK(r.code == 1);
  CHECK(ErrorKind(r) == "config");
  CHECK(r.err.find("nonsense") != std::string::npos);
}

TEST_CASE("data errors exit 2") {
  Sandbox s("data");
  auto r = s.Run("stats --input " + s.Path("missing.jsonl"));
  CHECK(r.code == 2);
  CHECK(ErrorKind(r) == "io");
  std::ofstream(s.Path("junk.jsonl")) << "not json\n{\"also\": \"not a review\"}\n";
  r = s.Run("stats --input " + s.Path("junk.jsonl"));
  CHECK(r.code == 2);
  CHECK(ErrorKind(r) == "empty-corpus");
}

TEST_CASE("synth-gen is reproducible") {
  Sandbox s("synth");
  REQUIRE(s.Run("--seed 3 synth-gen --users 80 --items 40 --out " + s.Path("a")).code == 0);
  REQUIRE(s.Run("--seed 3 synth-gen --users 80 --items 40 --out " + s.Path("b")).code == 0);
  REQUIRE(s.Run("--seed 4 synth-gen --users 80 --items 40 --out " + s.Path("c")).code == 0);
  for (auto name : {"reviews.jsonl", "ratings.csv", "items.csv", "planted_mentions.jsonl", "experiment.json"}) {
    CHECK(Slurp(s.Path("a/") + name) == Slurp(s.Path("b/") + name));
  }
  CHECK(Slurp(s.Path("a/reviews.jsonl")) != Slurp(s.Path("c/reviews.jsonl")));
}

TEST_CASE("pipeline stages chain and reruns are no-ops") {
  Sandbox s("pipeline");
  REQUIRE(s.Run("synth-gen --users 120 --items 50 --out " + s.Path("corpus")).code == 0);
  const std::string reviews = s.Path("corpus/reviews.jsonl");
  const std::string mentions = s.Path("mentions.jsonl");

  auto r = s.Run("stats --input " + reviews);
  REQUIRE(r.code == 0);
  CHECK(nlohmann::json::parse(r.out).contains("n_reviews"));

  REQUIRE(s.Run("extract --input " + reviews + " --out " + mentions).code == 0);
  const std::string first = Slurp(mentions);
  CHECK_FALSE(first.empty());
  CHECK(fs::exists(mentions + ".stamp"));

  // Same inputs: the stage is skipped, so a tampered output survives.
  std::ofstream(mentions, std::ios::trunc) << "tampered\n";
  REQUIRE(s.Run("extract --input " + reviews + " --out " + mentions).code == 0);
  CHECK(Slurp(mentions) == "tampered\n");
  REQUIRE(s.Run("--force extract --input " + reviews + " --out " + mentions).code == 0);
  CHECK(Slurp(mentions) == first);
  // A changed parameter invalidates the stamp.
  REQUIRE(s.Run("extract --input " + reviews + " --out " + mentions + " --poss-window 2").code == 0);
  REQUIRE(s.Run("extract --input " + reviews + " --out " + mentions).code == 0);
  CHECK(Slurp(mentions) == first);

  REQUIRE(s.Run("profile-items --mentions " + mentions + " --out " + s.Path("items.json")).code == 0);
  REQUIRE(s.Run("profile-users --mentions " + mentions + " --out " + s.Path("users.json")).code == 0);
  const auto users = nlohmann::json::parse(Slurp(s.Path("users.json")));
  REQUIRE_FALSE(users.empty());
  const std::string user = users[0]["user_id"];

  r = s.Run("predict-age --models " + s.Path("users.json") + " --user " + user + " --date 2014-01-01");
  REQUIRE(r.code == 0);
  CHECK(std::stod(r.out) >= 0.0);

  r = s.Run("recommend --ratings " + s.Path("corpus/ratings.csv") + " --engine ib-cf --user " + user +
            " --date 2014-01-01 --n 5 --post-filter on --item-profiles " + s.Path("items.json") +
            " --user-models " + s.Path("users.json"));
  REQUIRE(r.code == 0);
  const auto rec = nlohmann::json::parse(r.out);
  CHECK(rec["user_id"] == user);
  CHECK(rec["entries"].size() <= 5);

  r = s.Run("regression-dump --mentions " + mentions + " --user " + user);
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("date,value_years,dt_years,dage_years", 0) == 0);
}

TEST_CASE("evaluate writes a report and a drift series") {
  Sandbox s("evaluate");
  REQUIRE(s.Run("synth-gen --users 150 --items 60 --out " + s.Path("corpus")).code == 0);
  const std::string report = s.Path("report.json");
  auto r = s.Run("evaluate --config " + s.Path("corpus/experiment.json") + " --out " + report + " --drift-csv " +
                 s.Path("drift.csv"));
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(Slurp(report));
  CHECK(j["strategies"].size() == 9);
  CHECK(j["at"] == 10);
  CHECK(Slurp(s.Path("drift.csv")).rfind("bucket,source,delta_years", 0) == 0);
  r = s.Run("drift-report --report " + report + " --out " + s.Path("drift2.csv"));
  REQUIRE(r.code == 0);
  CHECK(Slurp(s.Path("drift2.csv")) == Slurp(s.Path("drift.csv")));
}
