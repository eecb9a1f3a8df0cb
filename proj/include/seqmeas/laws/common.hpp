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

#include <span>
#include <utility>
#include <vector>

#include "seqmeas/effects.hpp"
#include "seqmeas/instruments.hpp"
#include "seqmeas/laws/law.hpp"
#include "seqmeas/observables.hpp"
#include "seqmeas/operations.hpp"
#include "seqmeas/sampling.hpp"
#include "seqmeas/serialize.hpp"

namespace seqmeas::laws::detail {

/// Smallest distance from the hypothesis accepted for generic iff samples.
inline constexpr double kGenericFloor = 0.05;
inline constexpr int kMaxRedraws = 10000;
/// Side identities of counterexample searches.
inline constexpr double kSideTol = 1e-10;

/// Two effects y, z with y + z <= w, built as y = w∘s, z = w - y.
inline std::pair<Effect, Effect> split_below(const Effect& w, Rng& rng) {
  const Effect y = seq_product(w, Effect(random_effect(w.dim(), rng)));
  return {y, Effect(w.op() - y.op())};
}

/// sum_i a_i b a_i
inline ComplexMatrix pinch(std::span<const Effect> partition, const Effect& b) {
  ComplexMatrix out(b.dim());
  for (const auto& a : partition) out += a.matrix() * b.matrix() * a.matrix();
  return out;
}

inline json effects_json(std::span<const Effect> effects) {
  json out = json::array();
  for (const auto& e : effects) out.push_back(to_json(e));
  return out;
}

inline std::vector<Effect> effects_from_json(const json& j) {
  std::vector<Effect> out;
  for (const auto& e : j) out.push_back(effect_from_json(e));
  return out;
}

inline json states_json(std::span<const State> states) {
  json out = json::array();
  for (const auto& s : states) out.push_back(to_json(s));
  return out;
}

inline std::vector<State> states_from_json(const json& j) {
  std::vector<State> out;
  for (const auto& s : j) out.push_back(state_from_json(s));
  return out;
}

/// Largest entry of I(E_kl) - expected(E_kl) over all matrix units E_kl.
template <class Expected>
double matrix_unit_deviation(const Operation& op, Expected&& expected) {
  const std::size_t n = op.dim();
  double d = 0.0;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t l = 0; l < n; ++l) {
      const ComplexMatrix e = ComplexMatrix::unit(n, k, l);
      d = std::max(d, max_distance(apply_map(op, e), expected(e)));
    }
  return d;
}

/// Pure with probability 1/2, otherwise a random mixed state.
inline State random_mixed_or_pure(std::size_t dim, Rng& rng) {
  return uniform01(rng) < 0.5 ? State(random_pure_state(dim, rng)) : State(random_state(dim, rng));
}

/// 2 or 3 outcomes.
inline std::size_t small_outcome_count(Rng& rng) { return 2 + uniform_index(rng, 2); }

}  // namespace seqmeas::laws::detail
