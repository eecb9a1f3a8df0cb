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

// seqmeas: law checker and scenario evaluator.
//
//   seqmeas check --law all --seed 42
//   seqmeas check --law ex-10 --format json
//   seqmeas eval scenarios/basic.json
//   seqmeas list
//
// Exit codes: 0 success, 1 law failure, 2 usage or input error.

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "seqmeas/laws/registry.hpp"
#include "seqmeas/scenario.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

struct CheckOptions {
  std::string law = "all";
  std::vector<std::size_t> dims = {2, 3};
  std::size_t trials = 50;
  std::optional<std::uint64_t> seed;
  double eq_tol = 1e-9;
  double psd_tol = 1e-10;
  std::optional<double> gap;
  std::string format = "text";
  std::size_t jobs = 0;
};

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
  if (flag) return *flag;
  const char* env = std::getenv("SEQMEAS_SEED");
  if (env == nullptr || *env == '\0') return 42;
  std::size_t used = 0;
  const std::string text(env);
  try {
    const std::uint64_t seed = std::stoull(text, &used);
    if (used == text.size()) return seed;
  } catch (const std::exception&) {
  }
  throw CLI::ValidationError("SEQMEAS_SEED", "not an unsigned integer: '" + text + "'");
}

int run_check(const CheckOptions& opt) {
  const std::uint64_t seed = resolve_seed(opt.seed);
  const seqmeas::Tolerances tol{opt.psd_tol, opt.eq_tol};
  std::vector<seqmeas::laws::LawReport> reports;
  try {
    if (opt.law == "all") {
      const std::size_t jobs = opt.jobs > 0 ? opt.jobs : std::max(1u, std::thread::hardware_concurrency());
      reports = seqmeas::laws::run_all(opt.dims, opt.trials, seed, tol, opt.gap, jobs);
    } else {
      reports.push_back(seqmeas::laws::run_law(opt.law, opt.dims, opt.trials, seed, tol, opt.gap));
    }
  } catch (const seqmeas::Error& e) {
    std::cerr << "seqmeas: " << e.what() << '\n';
    return kExitUsage;
  }

  std::size_t ok = 0;
  for (const auto& r : reports) {
    if (seqmeas::laws::succeeded(r.status)) ++ok;
    if (opt.format == "json") std::cout << seqmeas::laws::to_json(r).dump() << '\n';
    else std::cout << seqmeas::laws::format_text(r) << '\n';
  }
  if (opt.format == "text") {
    std::cout << "summary: " << ok << '/' << reports.size() << " laws succeeded, seed=" << seed << '\n';
  }
  return ok == reports.size() ? kExitOk : kExitFailure;
}

int run_eval(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    std::cerr << path << ": cannot open\n";
    return kExitUsage;
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();
  seqmeas::Scenario scenario;
  try {
    scenario = seqmeas::parse_scenario(text);
  } catch (const seqmeas::ScenarioError& e) {
    std::cerr << path << ':' << e.line() << ": " << e.message() << '\n';
    return kExitUsage;
  }
  seqmeas::run_scenario(scenario, std::cout);
  return kExitOk;
}

int run_list(const std::string& format) {
  for (const auto& check : seqmeas::laws::registry()) {
    if (format == "json") {
      std::cout << seqmeas::json{{"id", check.id},
                                 {"kind", seqmeas::laws::kind_name(check.kind)},
                                 {"description", check.description}}
                       .dump()
                << '\n';
    } else {
      std::cout << check.id << '\t' << seqmeas::laws::kind_name(check.kind) << '\t' << check.description << '\n';
    }
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sequential products of quantum effects, operations, observables and instruments"};
  app.require_subcommand(1);

  CheckOptions check;
  auto* check_cmd = app.add_subcommand("check", "Run law checks");
  check_cmd->add_option("--law", check.law, "Law id, or 'all'")->capture_default_str();
  check_cmd->add_option("--dims", check.dims, "Dimensions to test")
      ->delimiter(',')
      ->check(CLI::Range(seqmeas::kMinDim, seqmeas::kMaxDim))
      ->capture_default_str();
  check_cmd->add_option("--trials", check.trials, "Trials per dimension")->capture_default_str();
  check_cmd->add_option("--seed", check.seed, "Seed (default: $SEQMEAS_SEED, else 42)");
  check_cmd->add_option("--eq-tol", check.eq_tol, "Operator equality tolerance (max-norm)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  check_cmd->add_option("--psd-tol", check.psd_tol, "Positive cone tolerance")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  check_cmd->add_option("--gap", check.gap, "Counterexample and iff threshold (default: per law)")
      ->check(CLI::PositiveNumber);
  check_cmd->add_option("--format", check.format, "Output format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  check_cmd->add_option("--jobs", check.jobs, "Laws run in parallel (0: one per core)")->capture_default_str();

  std::string scenario_path;
  auto* eval_cmd = app.add_subcommand("eval", "Evaluate the queries of a scenario file");
  eval_cmd->add_option("scenario", scenario_path, "Scenario JSON file")->required();

  std::string list_format = "text";
  auto* list_cmd = app.add_subcommand("list", "List registered laws");
  list_cmd->add_option("--format", list_format, "Output format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();

  try {
    app.parse(argc, argv);
    if (*check_cmd) return run_check(check);
    if (*eval_cmd) return run_eval(scenario_path);
    if (*list_cmd) return run_list(list_format);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }
  return kExitUsage;
}
