// Copyright 2026 The hyperell Authors.
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

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "hyperell/cli.hpp"
#include "oracles.hpp"

using namespace hyperell;
using namespace hyperell::cli;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run_config(const RunConfig& c) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run(c, out, err);
  return {code, out.str(), err.str()};
}

Run run_argv(std::vector<std::string> args) {
  std::vector<char*> argv;
  static std::string name = "hyperell";
  argv.push_back(name.data());
  for (auto& a : args) argv.push_back(a.data());
  std::ostringstream out;
  std::ostringstream err;
  auto* old_out = std::cout.rdbuf(out.rdbuf());
  auto* old_err = std::cerr.rdbuf(err.rdbuf());
  const int code = main_entry(static_cast<int>(argv.size()), argv.data());
  std::cout.rdbuf(old_out);
  std::cerr.rdbuf(old_err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("property: config text round-trips") {
  oracle::Gen gen(71);
  const std::vector<std::string> commands{"scan", "lpoly", "extremal", "constants"};
  for (int trial = 0; trial < 100; ++trial) {
    RunConfig c;
    c.command = commands[gen.below(4)];
    c.q = static_cast<std::uint32_t>(2 * gen.below(50) + 3);
    c.d = static_cast<int>(gen.below(20));
    if (gen.below(2)) c.D = "x^5+2x+" + std::to_string(gen.below(3));
    for (std::uint64_t i = gen.below(4); i > 0; --i) c.targets.push_back("s:" + std::to_string(gen.below(13)));
    c.side = gen.below(2) ? "majorant" : "minorant";
    c.N = static_cast<int>(gen.below(65));
    for (std::uint64_t i = gen.below(3); i > 0; --i) c.degree_policies.push_back(gen.below(2) ? "formula" : "fixed:4");
    for (std::uint64_t i = gen.below(3); i > 0; --i) c.modes.push_back(gen.below(2) ? "weil" : "exact");
    c.sample = gen.below(2) ? "all" : "random:" + std::to_string(gen.below(1000) + 1);
    c.seed = gen.engine()();
    c.grid = static_cast<int>(gen.below(100000));
    c.extremal_grid = static_cast<int>(gen.below(5000));
    if (gen.below(2)) c.out = "/tmp/out_" + std::to_string(trial) + ".csv";
    c.nmax = static_cast<int>(gen.below(13));
    c.threads = static_cast<int>(gen.below(9));
    c.budget = gen.engine()();
    c.interval_method = gen.below(2) == 1;
    c.slack = gen.uniform(0.0, 1e-6);
    const auto back = RunConfig::from_text(c.to_text());
    CHECK(back == c);
  }
  CHECK_THROWS_AS(RunConfig::from_text("bogus=1\n"), ParseError);
  CHECK_THROWS_AS(RunConfig::from_text("q=three\n"), ParseError);
  CHECK_THROWS_AS(RunConfig::from_text("q\n"), ParseError);
  CHECK(RunConfig::from_text("# comment\n\n  q = 5 \n").q == 5);
}

TEST_CASE("validation rejects bad inputs before computing") {
  RunConfig c;
  c.q = 9;
  CHECK_THROWS_AS(validate(c), ConfigError);
  c.q = 4;
  CHECK_THROWS_AS(validate(c), ConfigError);
  c = RunConfig{};
  c.d = 6;
  CHECK_THROWS_AS(validate(c), ConfigError);
  c = RunConfig{};
  c.grid = 100;
  CHECK_THROWS_AS(validate(c), ConfigError);
  c = RunConfig{};
  c.targets = {"s:99"};
  CHECK_THROWS_AS(validate(c), ParseError);
  c = RunConfig{};
  c.command = "extremal";
  CHECK_THROWS_AS(validate(c), ConfigError);
  c.targets = {"interval:0.7:0.2"};
  CHECK_THROWS_AS(validate(c), ParseError);
  c.targets = {"log2sin"};
  c.side = "minorant";
  CHECK_THROWS_AS(validate(c), ConfigError);
  c.side = "majorant";
  c.extremal_grid = 10;
  CHECK_THROWS_AS(validate(c), ConfigError);
  c.extremal_grid = 0;
  CHECK_NOTHROW(validate(c));
  c = RunConfig{};
  c.command = "constants";
  c.nmax = 13;
  CHECK_THROWS_AS(validate(c), ConfigError);
}

TEST_CASE("lpoly command") {
  RunConfig c;
  c.command = "lpoly";
  c.D = "x^5+2x+1";
  auto r = run_config(c);
  REQUIRE(r.code == kSuccess);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["fe_symmetry"] == "exact");
  CHECK(j["theta"].size() == 4);
  CHECK(j["c"] == std::vector<int>{1, 3, 7, 9, 9});
  CHECK(j["rh_radius_err"].get<double>() < 1e-9);
  c.D = "x^2";
  CHECK(run_config(c).code == kInputError);
  c.D = "x^5+x+1";  // repeated root at 1 over F_3
  CHECK(run_config(c).code == kInputError);
  c.D = "x^5+";
  CHECK(run_config(c).code == kInputError);
}

TEST_CASE("extremal command examples") {
  RunConfig c;
  c.command = "extremal";
  c.N = 8;
  c.targets = {"log2sin"};
  auto r = run_config(c);
  REQUIRE(r.code == kSuccess);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["relative_gap"].get<double>() <= 5e-3);
  CHECK(j["oracle_mean"].get<double>() == doctest::Approx(std::log(2.0) / 9));

  c.targets = {"bernoulli:1"};
  c.side = "minorant";
  j = nlohmann::json::parse(run_config(c).out);
  CHECK(j["oracle_mean"].get<double>() == doctest::Approx(-1.0 / (12 * 81)));
  CHECK(j["within_tolerance"] == true);

  c.targets = {"interval:0.2:0.7"};
  c.N = 4;
  const std::string path = (std::filesystem::temp_directory_path() / "hyperell_interval.csv").string();
  c.out = path;
  r = run_config(c);
  REQUIRE(r.code == kSuccess);
  j = nlohmann::json::parse(r.out);
  CHECK(j["majorant_gap"].get<double>() == doctest::Approx(0.2).epsilon(5e-3));
  CHECK(j["minorant_gap"].get<double>() == doctest::Approx(0.2).epsilon(5e-3));
  const std::string csv = slurp(path);
  CHECK(csv.rfind("k,minorant_cos,minorant_sin,majorant_cos,majorant_sin\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 6);
  std::filesystem::remove(path);
}

TEST_CASE("constants command flags") {
  RunConfig c;
  c.command = "constants";
  c.nmax = 4;
  const auto r = run_config(c);
  REQUIRE(r.code == kSuccess);
  std::istringstream in(r.out);
  std::string line;
  std::vector<std::string> lines;
  while (std::getline(in, line)) lines.push_back(line);
  REQUIRE(lines.size() == 5);
  CHECK(lines[1].find(",exact match,") != std::string::npos);
  CHECK(lines[2].find(",A<C,inside") != std::string::npos);
  CHECK(lines[3].find(",exact match,") != std::string::npos);
  CHECK(lines[4].find(",A<C,inside") != std::string::npos);
}

TEST_CASE("scan command: files, determinism and the default config") {
  const auto dir = std::filesystem::temp_directory_path();
  const std::string p1 = (dir / "hyperell_scan1.csv").string();
  const std::string p2 = (dir / "hyperell_scan2.csv").string();
  RunConfig c;
  c.targets = {"s:0", "logmod"};
  c.sample = "random:30";
  c.seed = 4;
  c.grid = 2048;
  c.out = p1;
  c.threads = 1;
  REQUIRE(run_config(c).code == kSuccess);
  c.out = p2;
  c.threads = 3;
  REQUIRE(run_config(c).code == kSuccess);
  CHECK(slurp(p1) == slurp(p2));
  const auto m = nlohmann::json::parse(slurp(p1 + ".manifest.json"));
  CHECK(m["seed"] == 4);
  CHECK(m["d_count"] == 30);
  for (const auto& p : {p1, p2}) {
    std::filesystem::remove(p);
    std::filesystem::remove(p + ".manifest.json");
  }
  // A scan written to the stream carries the same CSV.
  c.out.clear();
  const auto r = run_config(c);
  REQUIRE(r.code == kSuccess);
  CHECK(r.out.rfind("q,d,D,", 0) == 0);
}

TEST_CASE("argv handling and exit codes") {
  CHECK(run_argv({"--help"}).code == kSuccess);
  CHECK(run_argv({}).code == kInputError);
  CHECK(run_argv({"frobnicate"}).code == kInputError);
  CHECK(run_argv({"lpoly", "--q", "3", "--D", "x^2"}).code == kInputError);
  CHECK(run_argv({"lpoly", "--q", "abc"}).code == kInputError);
  const auto ok = run_argv({"lpoly", "--q", "3", "--D", "x^5+2x+1"});
  CHECK(ok.code == kSuccess);
  CHECK(nlohmann::json::parse(ok.out)["d"] == 5);
  CHECK(run_argv({"constants", "--nmax", "3"}).code == kSuccess);
  CHECK(run_argv({"scan", "--d", "4"}).code == kInputError);

  // A config file supplies values that explicit flags override.
  const std::string cfg = (std::filesystem::temp_directory_path() / "hyperell_test.cfg").string();
  {
    std::ofstream f(cfg);
    f << "q=5\nD=x^5+x+1\n";
  }
  const auto from_file = run_argv({"lpoly", "--config", cfg});
  REQUIRE(from_file.code == kSuccess);
  CHECK(nlohmann::json::parse(from_file.out)["q"] == 5);
  const auto overridden = run_argv({"lpoly", "--config", cfg, "--D", "x^3+x+1"});
  REQUIRE(overridden.code == kSuccess);
  CHECK(nlohmann::json::parse(overridden.out)["d"] == 3);
  {
    std::ofstream f(cfg);
    f << "colour=blue\n";
  }
  CHECK(run_argv({"lpoly", "--config", cfg}).code == kInputError);
  std::filesystem::remove(cfg);
}
