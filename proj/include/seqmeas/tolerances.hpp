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

#include <cstddef>

namespace seqmeas {

// Fixed numerical constants.
inline constexpr double kHermTol = 1e-12;     // asymmetry accepted by HermitianMatrix
inline constexpr double kCondFloor = 1e-12;   // smallest conditioning denominator
inline constexpr double kTraceTol = 1e-10;    // |tr(rho) - 1| accepted by State
inline constexpr double kSqrtFloor = 1e-14;   // eigenvalues treated as zero under sqrt
inline constexpr double kDefaultGap = 0.01;   // counterexample threshold
inline constexpr std::size_t kMinDim = 2;
inline constexpr std::size_t kMaxDim = 8;

/// The two comparison tolerances used throughout: cone membership (`psd`)
/// and operator equality in max norm (`eq`).
struct Tolerances {
  double psd = 1e-10;
  double eq = 1e-9;

  friend bool operator==(const Tolerances&, const Tolerances&) = default;
};

/// Tolerances in effect on the calling thread. Law trials run on one thread
/// each, so overrides never leak between concurrently running laws.
inline Tolerances& current_tolerances() {
  thread_local Tolerances tolerances;
  return tolerances;
}

inline double psd_tol() { return current_tolerances().psd; }
inline double eq_tol() { return current_tolerances().eq; }

/// Installs `tolerances` for the current thread until destroyed.
class ScopedTolerances {
 public:
  explicit ScopedTolerances(const Tolerances& tolerances) : saved_(current_tolerances()) {
    current_tolerances() = tolerances;
  }
  ~ScopedTolerances() { current_tolerances() = saved_; }

  ScopedTolerances(const ScopedTolerances&) = delete;
  ScopedTolerances& operator=(const ScopedTolerances&) = delete;

 private:
  Tolerances saved_;
};

}  // namespace seqmeas
