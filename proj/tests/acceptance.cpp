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

// Acceptance run: one PASS/FAIL line per criterion, exit 1 if any fails.

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "seqmeas/laws/registry.hpp"
#include "seqmeas/sampling.hpp"

using namespace seqmeas;
using laws::LawReport;
using laws::LawStatus;

namespace {

constexpr double kExactTol = 1e-12;
constexpr double kIdentityTol = 1e-9;
constexpr double kSideIdentityTol = 1e-10;
constexpr double kViolationGap = 0.01;
constexpr double kFixtureBudgetMs = 1.0;
constexpr double kConstructionBudgetMs = 5000.0;
constexpr double kSuiteBudgetMs = 60000.0;
constexpr std::uint64_t kSeed = 42;

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

struct Verdict {
  bool ok = true;
  std::ostringstream detail;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      detail << " [failed: " << what << "]";
    }
  }
};

int failures = 0;

void report(int criterion, const std::string& title, Verdict& v) {
  if (!v.ok) ++failures;
  std::cout << (v.ok ? "PASS" : "FAIL") << " criterion " << criterion << ": " << title << v.detail.str()
            << std::endl;
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

void identity_law(Verdict& v, const std::string& id, const std::vector<std::size_t>& dims, std::size_t trials) {
  const LawReport r = laws::run_law(id, dims, trials, kSeed);
  v.detail << ' ' << id << "=" << fmt(r.max_deviation);
  v.require(r.status == LawStatus::kPass && r.max_deviation <= kIdentityTol, id + " " + laws::format_text(r));
}

void counterexample_law(Verdict& v, const std::string& id, std::size_t trials, double side_tol = kIdentityTol) {
  const LawReport r = laws::run_law(id, {2}, trials, kSeed);
  const double violation = r.violation.value_or(0.0);
  v.detail << ' ' << id << "=" << fmt(violation);
  v.require(r.status == LawStatus::kCounterexampleFound && violation > kViolationGap && r.max_deviation <= side_tol,
            id + " " + laws::format_text(r));
}

void criterion_1() {
  Verdict v;
  const auto start = Clock::now();
  const Effect e1 = Effect::projector(Vector{1.0, 0.0});
  const Effect e2 = Effect::projector(Vector{0.0, 1.0});
  ComplexMatrix d(2);
  d(0, 0) = d(0, 1) = d(1, 0) = d(1, 1) = 1.0;
  const Effect a(d * 0.5);
  const Effect b(d * 0.5);
  const std::vector<Effect> projections = {e1, e2};
  const Operation dephasing = sharp_operation(projections);
  const bool orthogonal = perp(a, b);
  const ComplexMatrix sum = (op_then_effect(dephasing, a).op() + op_then_effect(dephasing, b).op()).matrix();
  const double dev = max_distance(sum, ComplexMatrix::identity(2));
  const double elapsed = ms_since(start);
  v.detail << " perp=" << (orthogonal ? "true" : "false") << " dev=" << fmt(dev) << " time=" << fmt(elapsed) << "ms";
  v.require(!orthogonal, "a and b must not be orthogonal");
  v.require(dev <= kExactTol, "J(a)+J(b) must equal I");
  v.require(elapsed < kFixtureBudgetMs, "runtime budget");
  report(1, "dephasing fixture J(a)+J(b)=I with a,b not orthogonal", v);
}

void criterion_2() {
  Verdict v;
  const auto start = Clock::now();
  Rng rng(derive_seed(kSeed, "acceptance-semi-trivial"));
  double max_dev = 0.0;
  for (std::size_t dim = 2; dim <= 5; ++dim) {
    for (int trial = 0; trial < 50; ++trial) {
      const std::size_t n = 1 + uniform_index(rng, 3);
      const std::vector<Effect> effects = random_subunital_effects(dim, n, rng);
      const std::vector<State> states = random_states(dim, n, rng);
      std::vector<EffectStatePair> pairs;
      for (std::size_t i = 0; i < n; ++i) pairs.push_back({effects[i], states[i]});
      const Operation op = semi_trivial(pairs);
      HermitianMatrix effect_sum = HermitianMatrix::zero(dim);
      for (const auto& e : effects) effect_sum = effect_sum + e.op();
      max_dev = std::max(max_dev, max_distance(hat(op).matrix(), effect_sum.matrix()));
      for (std::size_t r = 0; r < dim; ++r) {
        for (std::size_t c = 0; c < dim; ++c) {
          const ComplexMatrix unit = ComplexMatrix::unit(dim, r, c);
          ComplexMatrix expected = ComplexMatrix::zero(dim);
          for (std::size_t i = 0; i < n; ++i)
            expected = expected + states[i].matrix() * trace_of_product(unit, effects[i].matrix());
          max_dev = std::max(max_dev, max_distance(apply_map(op, unit), expected));
        }
      }
    }
  }
  const LawReport law = laws::run_law("thm-2.2", {2, 3, 4, 5}, 50, kSeed);
  const double elapsed = ms_since(start);
  v.detail << " direct=" << fmt(max_dev) << " law=" << fmt(law.max_deviation) << " time=" << fmt(elapsed) << "ms";
  v.require(max_dev <= kIdentityTol, "direct formula");
  v.require(law.status == LawStatus::kPass && law.max_deviation <= kIdentityTol, "thm-2.2 law");
  v.require(elapsed < kConstructionBudgetMs, "runtime budget");
  report(2, "semi-trivial Kraus construction matches sum tr(rho a_i) alpha_i, dims 2..5", v);
}

void criterion_3() {
  Verdict v;
  identity_law(v, "thm-1.1", {2, 3}, 100);
  report(3, "hat map additive, convex-linear, surjective, injective on classes", v);
}

void criterion_4() {
  Verdict v;
  for (const char* id : {"thm-1.2i", "thm-1.2ii"}) {
    const LawReport r = laws::run_law(id, {2}, 100, kSeed);
    const double margin = r.violation.value_or(0.0);
    v.detail << ' ' << id << " dev=" << fmt(r.max_deviation) << " min_generic=" << fmt(margin);
    v.require(r.status == LawStatus::kPass && r.max_deviation <= kIdentityTol && margin > kViolationGap,
              std::string(id) + " " + laws::format_text(r));
  }
  report(4, "commutation iff checks, dim 2", v);
}

void criterion_5() {
  Verdict v;
  for (const char* id : {"eq-2.1", "eq-2.2", "eq-2.3/2.4", "ex-1", "ex-3"}) counterexample_law(v, id, 100);
  counterexample_law(v, "ex-2", 100, kSideIdentityTol);
  report(5, "Bayes-type identities fail with violation > 0.01", v);
}

void criterion_6() {
  Verdict v;
  for (const char* id : {"thm-3.1i", "thm-3.1ii", "thm-3.1iii", "lemma-3.2", "lemma-3.3", "thm-4.1i", "thm-4.1ii",
                         "thm-4.1iii", "thm-4.2", "lemma-4.3", "lemma-4.4"}) {
    identity_law(v, id, {2, 3}, 50);
  }
  for (const char* id : {"ex-6", "ex-7", "ex-8", "ex-9"}) counterexample_law(v, id, 100);
  report(6, "observable and instrument identities, and their counterexamples", v);
}

void criterion_7() {
  Verdict v;
  identity_law(v, "kraus-freedom", {2, 3, 4}, 50);
  report(7, "hat and operation-then-effect invariant under unitary Kraus remixing", v);
}

struct CliRun {
  int code = -1;
  std::map<std::string, std::string> statuses;
  double elapsed_ms = 0.0;
};

CliRun run_suite(std::uint64_t seed) {
  CliRun out;
  const std::string cmd =
      std::string(SEQMEAS_CLI) + " check --law all --format json --seed " + std::to_string(seed) + " 2>&1";
  const auto start = Clock::now();
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return out;
  std::string text;
  char buf[4096];
  while (std::fgets(buf, sizeof buf, pipe) != nullptr) text += buf;
  const int status = pclose(pipe);
  out.elapsed_ms = ms_since(start);
  out.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::istringstream lines(text);
  for (std::string line; std::getline(lines, line);) {
    const json r = json::parse(line, nullptr, false);
    if (r.is_object() && r.contains("id")) out.statuses[r["id"]] = r.value("status", "");
  }
  return out;
}

void criterion_8() {
  Verdict v;
  const CliRun main_run = run_suite(kSeed);
  v.detail << " exit=" << main_run.code << " laws=" << main_run.statuses.size() << " time=" << fmt(main_run.elapsed_ms)
           << "ms";
  v.require(main_run.code == 0, "exit code");
  v.require(main_run.statuses.size() == laws::registry().size(), "one report per law");
  v.require(main_run.elapsed_ms < kSuiteBudgetMs, "runtime budget");
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const CliRun rerun = run_suite(seed);
    v.require(rerun.statuses == main_run.statuses, "statuses differ at seed " + std::to_string(seed));
  }
  report(8, "full suite via CLI exits 0, statuses stable over seeds 1..5", v);
}

}  // namespace

int main() {
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  std::cout << (failures == 0 ? "all criteria pass" : std::to_string(failures) + " criteria fail") << std::endl;
  return failures == 0 ? 0 : 1;
}
