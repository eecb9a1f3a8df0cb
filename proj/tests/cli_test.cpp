// Copyright 2026 The seqmeas Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <sys/wait.h>

#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "json.hpp"

namespace {

struct Invocation {
  int code = -1;
  std::string out;
};

Invocation run_with_env(const std::string& env, const std::string& args) {
  const std::string cmd = env + " " + std::string(SEQMEAS_CLI) + " " + args + " 2>/dev/null";
  Invocation r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return r;
  char buf[4096];
  while (std::fgets(buf, sizeof buf, pipe) != nullptr) r.out += buf;
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

Invocation run(const std::string& args) { return run_with_env("", args); }

std::vector<nlohmann::json> json_lines(const std::string& text) {
  std::vector<nlohmann::json> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(nlohmann::json::parse(line));
  return out;
}

std::string scenario(const char* name) { return std::string(SEQMEAS_SCENARIO_DIR) + "/" + name; }

}  // namespace

TEST(Cli, single_law_json_report) {
  const Invocation r = run("check --law ex-10 --format json");
  EXPECT_EQ(r.code, 0);
  const auto lines = json_lines(r.out);
  ASSERT_EQ(lines.size(), 1u);
  EXPECT_EQ(lines[0]["id"], "ex-10");
  EXPECT_EQ(lines[0]["status"], "pass");
}

TEST(Cli, unknown_law_is_a_usage_error) { EXPECT_EQ(run("check --law nope").code, 2); }

TEST(Cli, bad_flags_are_usage_errors) {
  EXPECT_EQ(run("check --dims 9").code, 2);
  EXPECT_EQ(run("check --format yaml").code, 2);
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("eval").code, 2);
}

TEST(Cli, full_suite_json_lines_all_succeed) {
  const Invocation r = run("check --law all --seed 42 --format json");
  EXPECT_EQ(r.code, 0);
  const auto lines = json_lines(r.out);
  EXPECT_GE(lines.size(), 40u);
  for (const auto& l : lines) {
    const std::string status = l["status"];
    EXPECT_TRUE(status == "pass" || status == "counterexample-found") << l.dump();
  }
}

TEST(Cli, zero_trials_exits_with_failure) { EXPECT_EQ(run("check --law thm-2.2 --trials 0").code, 1); }

TEST(Cli, seed_falls_back_to_environment) {
  auto flag = json_lines(run("check --law eq-2.2 --format json --seed 5").out).at(0);
  auto env = json_lines(run_with_env("SEQMEAS_SEED=5", "check --law eq-2.2 --format json").out).at(0);
  flag.erase("elapsed_ms");
  env.erase("elapsed_ms");
  EXPECT_EQ(flag, env);
  EXPECT_EQ(env["seed"], 5);
  EXPECT_EQ(run_with_env("SEQMEAS_SEED=abc", "check --law eq-2.2").code, 2);
}

TEST(Cli, text_report_is_line_oriented) {
  const Invocation r = run("check --law thm-2.2 --dims 2 --trials 3");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("PASS thm-2.2 kind=identity trials=3 dims=2 ", 0), 0u) << r.out;
  EXPECT_NE(r.out.find("\nsummary: 1/1 laws succeeded, seed=42\n"), std::string::npos) << r.out;
}

TEST(Cli, list_names_every_law) {
  const Invocation r = run("list --format json");
  EXPECT_EQ(r.code, 0);
  const auto lines = json_lines(r.out);
  EXPECT_GE(lines.size(), 40u);
  EXPECT_EQ(lines.front()["id"], "axioms-1");
}

TEST(Cli, eval_sample_prints_one_line_per_query) {
  const Invocation r = run("eval " + scenario("basic.json"));
  EXPECT_EQ(r.code, 0);
  const auto lines = json_lines(r.out);
  ASSERT_EQ(lines.size(), 10u);
  EXPECT_EQ(lines[1]["result"], (nlohmann::json{{"x", 0.5}, {"y", 0.5}}));
  EXPECT_EQ(lines[5]["error"]["kind"], "ConditioningOnNull");
}

TEST(Cli, eval_rejects_missing_and_malformed_files) {
  EXPECT_EQ(run("eval /nonexistent/scenario.json").code, 2);
  EXPECT_EQ(run("eval " + std::string(SEQMEAS_SCENARIO_DIR) + "/../CMakeLists.txt").code, 2);
}
