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

#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <future>
#include <optional>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "seqmeas/laws/effect_laws.hpp"
#include "seqmeas/laws/instrument_laws.hpp"
#include "seqmeas/laws/law.hpp"
#include "seqmeas/laws/mixed_laws.hpp"
#include "seqmeas/laws/operation_laws.hpp"

namespace seqmeas::laws {

/// Every registered check, in a fixed order.
inline const std::vector<LawCheck>& registry() {
  static const std::vector<LawCheck> checks = [] {
    std::vector<LawCheck> out;
    register_effect_laws(out);
    register_operation_laws(out);
    register_instrument_laws(out);
    register_mixed_laws(out);
    return out;
  }();
  return checks;
}

inline const LawCheck& find_law(std::string_view id) {
  for (const auto& c : registry())
    if (c.id == id) return c;
  fail(ErrorKind::kUnknownLaw, "no law with id '" + std::string(id) + "'");
}

/// Runs `trials` trials at each dimension (or at the check's fixed
/// dimensions) on the RNG stream derived from (seed, id). `gap` overrides the
/// check's own counterexample threshold.
inline LawReport run_law(std::string_view id, const std::vector<std::size_t>& dims, std::size_t trials,
                         std::uint64_t seed, const Tolerances& tolerances = {},
                         std::optional<double> gap = std::nullopt) {
  const LawCheck& check = find_law(id);
  const std::vector<std::size_t>& used = check.fixed_dims.empty() ? dims : check.fixed_dims;
  for (std::size_t d : used)
    if (d < kMinDim || d > kMaxDim)
      fail(ErrorKind::kDimension, "law dimensions must lie in 2..8, got " + std::to_string(d));

  const auto start = std::chrono::steady_clock::now();
  ScopedTolerances scope(tolerances);
  LawRun run(derive_seed(seed, check.id), gap.value_or(check.gap));
  std::string error;
  try {
    for (std::size_t d : used)
      for (std::size_t t = 0; t < trials; ++t) {
        check.trial(run, d);
        run.trial_done();
      }
  } catch (const Error& e) {
    error = e.what();
  }
  LawReport report = run.finish(check.kind);
  if (!error.empty()) {
    report.status = LawStatus::kFail;
    report.note = report.note.empty() ? "error " + error : report.note + "; error " + error;
  }
  if (!check.note.empty()) report.note = report.note.empty() ? check.note : check.note + "; " + report.note;
  report.id = check.id;
  report.dims = used;
  report.seed = seed;
  report.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return report;
}

/// Runs every registered law, at most `jobs` at a time; results are in
/// registry order.
inline std::vector<LawReport> run_all(const std::vector<std::size_t>& dims, std::size_t trials, std::uint64_t seed,
                                      const Tolerances& tolerances = {}, std::optional<double> gap = std::nullopt,
                                      std::size_t jobs = 1) {
  const auto& checks = registry();
  std::vector<LawReport> reports(checks.size());
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t k = next++; k < checks.size(); k = next++)
      reports[k] = run_law(checks[k].id, dims, trials, seed, tolerances, gap);
  };
  jobs = std::clamp<std::size_t>(jobs, 1, checks.size());
  std::vector<std::future<void>> running;
  for (std::size_t w = 1; w < jobs; ++w) running.push_back(std::async(std::launch::async, worker));
  worker();
  for (auto& f : running) f.get();
  return reports;
}

/// Recomputes the violation of a counterexample witness.
inline Measurement replay_witness(std::string_view id, const json& witness) {
  const LawCheck& check = find_law(id);
  if (!check.replay) fail(ErrorKind::kUnknownLaw, "law '" + check.id + "' has no replayable witness");
  return check.replay(witness);
}

}  // namespace seqmeas::laws
