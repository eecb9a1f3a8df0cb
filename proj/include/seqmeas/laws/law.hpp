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
#include <cmath>
#include <cstdint>
#include <cctype>
#include <functional>
#include <iomanip>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "seqmeas/errors.hpp"
#include "seqmeas/random.hpp"
#include "seqmeas/serialize.hpp"
#include "seqmeas/tolerances.hpp"

namespace seqmeas::laws {

enum class LawKind { kIdentity, kIff, kCounterexample };

enum class LawStatus { kPass, kFail, kCounterexampleFound, kCounterexampleMissing };

inline std::string_view kind_name(LawKind kind) {
  switch (kind) {
    case LawKind::kIdentity: return "identity";
    case LawKind::kIff: return "iff";
    case LawKind::kCounterexample: return "counterexample";
  }
  return "identity";
}

inline std::string_view status_name(LawStatus status) {
  switch (status) {
    case LawStatus::kPass: return "pass";
    case LawStatus::kFail: return "fail";
    case LawStatus::kCounterexampleFound: return "counterexample-found";
    case LawStatus::kCounterexampleMissing: return "counterexample-missing";
  }
  return "fail";
}

/// pass and counterexample-found are the successful outcomes.
inline bool succeeded(LawStatus status) {
  return status == LawStatus::kPass || status == LawStatus::kCounterexampleFound;
}

struct LawReport {
  std::string id;
  LawKind kind = LawKind::kIdentity;
  LawStatus status = LawStatus::kFail;
  std::size_t trials = 0;
  std::vector<std::size_t> dims;
  double max_deviation = 0.0;
  std::optional<double> violation;
  json witness;
  std::uint64_t seed = 0;
  double elapsed_ms = 0.0;
  std::string note;
};

inline json to_json(const LawReport& r) {
  json out = {{"id", r.id},
              {"kind", kind_name(r.kind)},
              {"status", status_name(r.status)},
              {"trials", r.trials},
              {"dims", r.dims},
              {"max_deviation", r.max_deviation},
              {"seed", r.seed},
              {"elapsed_ms", r.elapsed_ms}};
  out["violation"] = r.violation ? json(*r.violation) : json(nullptr);
  out["witness"] = r.witness;
  if (!r.note.empty()) out["note"] = r.note;
  return out;
}

/// One line: status, id, trial count, dims, deviation, violation, time.
inline std::string format_text(const LawReport& r) {
  std::ostringstream out;
  std::string status(status_name(r.status));
  std::transform(status.begin(), status.end(), status.begin(), [](unsigned char c) { return std::toupper(c); });
  out << status << ' ' << r.id << " kind=" << kind_name(r.kind) << " trials=" << r.trials << " dims=";
  for (std::size_t i = 0; i < r.dims.size(); ++i) out << (i ? "," : "") << r.dims[i];
  out.precision(3);
  out << std::scientific << " max_dev=" << r.max_deviation;
  if (r.violation) out << " violation=" << *r.violation;
  out << std::fixed << std::setprecision(1) << " (" << r.elapsed_ms << " ms)";
  if (!r.note.empty()) out << " note: " << r.note;
  return out.str();
}

/// Violation measured on a serialized witness, plus the largest deviation
/// of any side identity the same inputs must satisfy.
struct Measurement {
  double violation = 0.0;
  double side_deviation = 0.0;
  std::optional<double> side_tol;  // eq_tol when unset
};

/// Mutable state of one law execution: the law's own RNG stream and the
/// running tallies from which the report is built.
class LawRun {
 public:
  LawRun(std::uint64_t seed, double gap) : rng_(seed), gap_(gap) {}

  Rng& rng() { return rng_; }
  double gap() const { return gap_; }

  /// An identity that must hold within `tol` (eq_tol by default).
  void check(double deviation, std::optional<double> tol = std::nullopt) {
    const double t = tol.value_or(eq_tol());
    if (!(deviation <= t)) failed_identity_ = true;
    if (std::isnan(deviation)) deviation = std::numeric_limits<double>::infinity();
    max_deviation_ = std::max(max_deviation_, deviation);
  }

  /// A boolean fact; false counts as a unit deviation.
  void expect(bool ok) { check(ok ? 0.0 : 1.0, 0.5); }

  /// A generic instance of an iff check, whose violation must exceed the gap.
  void negative(double violation, json witness) {
    ++negatives_;
    if (!min_negative_ || violation < *min_negative_) {
      min_negative_ = violation;
      negative_witness_ = std::move(witness);
    }
  }

  /// A counterexample candidate; the strongest one is kept.
  void candidate(double violation, json witness) {
    if (!best_ || violation > *best_) {
      best_ = violation;
      best_witness_ = std::move(witness);
    }
  }

  void trial_done() { ++trials_; }
  /// Trials completed so far, i.e. the index of the running trial.
  std::size_t trial_index() const { return trials_; }
  void add_note(std::string note) { notes_.push_back(std::move(note)); }

  LawReport finish(LawKind kind) const {
    LawReport r;
    r.kind = kind;
    r.trials = trials_;
    r.max_deviation = max_deviation_;
    std::vector<std::string> notes = notes_;
    if (trials_ == 0) notes.insert(notes.begin(), "no trials run");
    switch (kind) {
      case LawKind::kIdentity:
        r.status = trials_ > 0 && !failed_identity_ ? LawStatus::kPass : LawStatus::kFail;
        break;
      case LawKind::kIff:
        r.violation = min_negative_;
        r.witness = negative_witness_;
        r.status = trials_ > 0 && !failed_identity_ && negatives_ > 0 && *min_negative_ > gap_ ? LawStatus::kPass
                                                                                               : LawStatus::kFail;
        break;
      case LawKind::kCounterexample:
        r.violation = best_;
        r.witness = best_witness_;
        if (failed_identity_) {
          r.status = LawStatus::kFail;
        } else {
          r.status = best_ && *best_ > gap_ ? LawStatus::kCounterexampleFound : LawStatus::kCounterexampleMissing;
        }
        break;
    }
    for (std::size_t i = 0; i < notes.size(); ++i) r.note += (i ? "; " : "") + notes[i];
    return r;
  }

 private:
  Rng rng_;
  double gap_;
  std::size_t trials_ = 0;
  double max_deviation_ = 0.0;
  bool failed_identity_ = false;
  std::size_t negatives_ = 0;
  std::optional<double> min_negative_;
  json negative_witness_;
  std::optional<double> best_;
  json best_witness_;
  std::vector<std::string> notes_;
};

using TrialFn = std::function<void(LawRun&, std::size_t dim)>;
using SampleFn = std::function<json(Rng&, std::size_t dim)>;
using MeasureFn = std::function<Measurement(const json&)>;

struct LawCheck {
  std::string id;
  LawKind kind = LawKind::kIdentity;
  std::string description;
  /// Dimensions the check always runs at; empty means the requested ones.
  std::vector<std::size_t> fixed_dims;
  /// Default counterexample threshold.
  double gap = kDefaultGap;
  /// Runs one trial at one dimension.
  TrialFn trial;
  /// Counterexample checks: recomputes the violation from a witness.
  MeasureFn replay;
  std::string note;
};

/// Identity or iff check driven by a per-trial function.
inline LawCheck make_check(std::string id, LawKind kind, std::string description, TrialFn trial) {
  LawCheck c;
  c.id = std::move(id);
  c.kind = kind;
  c.description = std::move(description);
  c.trial = std::move(trial);
  return c;
}

/// Counterexample check: each trial samples a witness, serializes it, and
/// measures the violation on the parsed copy, so reported witnesses replay
/// through `replay` exactly.
inline LawCheck make_search(std::string id, std::string description, SampleFn sample, MeasureFn measure,
                            double gap = kDefaultGap) {
  LawCheck c;
  c.id = std::move(id);
  c.kind = LawKind::kCounterexample;
  c.description = std::move(description);
  c.gap = gap;
  c.replay = measure;
  c.trial = [sample = std::move(sample), measure = std::move(measure)](LawRun& run, std::size_t dim) {
    const json witness = json::parse(sample(run.rng(), dim).dump());
    const Measurement m = measure(witness);
    run.check(m.side_deviation, m.side_tol);
    run.candidate(m.violation, witness);
  };
  return c;
}

}  // namespace seqmeas::laws
