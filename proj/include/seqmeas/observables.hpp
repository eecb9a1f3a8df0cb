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
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "seqmeas/effects.hpp"

namespace seqmeas {

/// Outcome label of the pair (x, y) in a product outcome set.
inline std::string product_label(const std::string& x, const std::string& y) { return x + "⊗" + y; }

/// A map between outcome sets, used for parts f(A) and f(I).
using OutcomeMap = std::map<std::string, std::string>;

using Distribution = std::vector<std::pair<std::string, double>>;

namespace detail {

inline void check_labels(std::span<const std::string> outcomes, std::size_t count, ErrorKind kind) {
  if (outcomes.empty()) fail(kind, "outcome set is empty");
  if (outcomes.size() != count) fail(kind, "one label per member is required");
  std::set<std::string> seen;
  for (const auto& x : outcomes) {
    if (!seen.insert(x).second) fail(kind, "duplicate outcome label '" + x + "'");
  }
}

/// Groups the indices of `outcomes` by their image under f. Output order is
/// `codomain` when given, else first appearance.
inline std::vector<std::pair<std::string, std::vector<std::size_t>>> group_by_image(
    std::span<const std::string> outcomes, const OutcomeMap& f,
    const std::optional<std::vector<std::string>>& codomain) {
  std::vector<std::pair<std::string, std::vector<std::size_t>>> groups;
  if (codomain) {
    for (const auto& y : *codomain) groups.push_back({y, {}});
  }
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    const auto it = f.find(outcomes[i]);
    if (it == f.end()) fail(ErrorKind::kNotSurjective, "map is undefined on outcome '" + outcomes[i] + "'");
    auto g = std::find_if(groups.begin(), groups.end(), [&](const auto& p) { return p.first == it->second; });
    if (g == groups.end()) {
      if (codomain) fail(ErrorKind::kNotSurjective, "image '" + it->second + "' is outside the codomain");
      groups.push_back({it->second, {i}});
    } else {
      g->second.push_back(i);
    }
  }
  for (const auto& [y, members] : groups) {
    if (members.empty()) fail(ErrorKind::kNotSurjective, "codomain outcome '" + y + "' has no preimage");
  }
  return groups;
}

}  // namespace detail

/// A finite effect-valued measure {a_x : x in Omega} with sum a_x = I.
class Observable {
 public:
  Observable() = default;

  Observable(std::vector<std::string> outcomes, std::vector<Effect> effects)
      : outcomes_(std::move(outcomes)), effects_(std::move(effects)) {
    detail::check_labels(outcomes_, effects_.size(), ErrorKind::kNotObservable);
    ComplexMatrix sum(effects_.front().dim());
    for (const auto& a : effects_) {
      require_same_dim(a.dim(), sum.dim(), "Observable");
      sum += a.matrix();
    }
    const double dev = max_distance(sum, ComplexMatrix::identity(sum.dim()));
    if (dev > eq_tol()) fail(ErrorKind::kNotObservable, "effects sum to I only within " + std::to_string(dev));
  }

  /// {a, a'} with outcomes "1" and "0".
  static Observable binary(const Effect& a) { return Observable({"1", "0"}, {a, complement(a)}); }
  static Observable trivial(std::size_t dim) { return Observable({"1"}, {Effect::identity(dim)}); }

  std::size_t size() const noexcept { return effects_.size(); }
  std::size_t dim() const noexcept { return effects_.front().dim(); }
  const std::vector<std::string>& outcomes() const noexcept { return outcomes_; }
  const std::vector<Effect>& effects() const noexcept { return effects_; }

  std::optional<std::size_t> index_of(const std::string& x) const {
    const auto it = std::find(outcomes_.begin(), outcomes_.end(), x);
    if (it == outcomes_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - outcomes_.begin());
  }

  const Effect& effect(const std::string& x) const {
    const auto i = index_of(x);
    if (!i) fail(ErrorKind::kInvalidArgument, "unknown outcome '" + x + "'");
    return effects_[*i];
  }

 private:
  std::vector<std::string> outcomes_;
  std::vector<Effect> effects_;
};

/// x -> tr(rho a_x)
inline Distribution distribution(const Observable& a, const State& rho) {
  require_same_dim(a.dim(), rho.dim(), "distribution");
  Distribution out;
  for (std::size_t i = 0; i < a.size(); ++i) out.emplace_back(a.outcomes()[i], prob(rho, a.effects()[i]));
  return out;
}

/// Probability of an event Delta ⊆ Omega_A.
inline double event_probability(const Observable& a, const State& rho, std::span<const std::string> event) {
  double p = 0.0;
  for (const auto& x : std::set<std::string>(event.begin(), event.end())) p += prob(rho, a.effect(x));
  return p;
}

/// (A∘B)_(x,y) = a_x∘b_y over Omega_A × Omega_B.
inline Observable obs_seq_product(const Observable& a, const Observable& b) {
  require_same_dim(a.dim(), b.dim(), "obs_seq_product");
  std::vector<std::string> outcomes;
  std::vector<Effect> effects;
  for (std::size_t x = 0; x < a.size(); ++x)
    for (std::size_t y = 0; y < b.size(); ++y) {
      outcomes.push_back(product_label(a.outcomes()[x], b.outcomes()[y]));
      effects.push_back(seq_product(a.effects()[x], b.effects()[y]));
    }
  return Observable(std::move(outcomes), std::move(effects));
}

/// (B|A)_y = sum_x a_x∘b_y
inline Observable obs_conditioned(const Observable& b, const Observable& given) {
  require_same_dim(b.dim(), given.dim(), "obs_conditioned");
  std::vector<Effect> effects;
  for (const auto& by : b.effects()) {
    ComplexMatrix sum(b.dim());
    for (const auto& ax : given.effects()) sum += seq_product(ax, by).matrix();
    effects.emplace_back(HermitianMatrix(sum));
  }
  return Observable(b.outcomes(), std::move(effects));
}

/// Outcome maps (x,y) -> x and (x,y) -> y on a product outcome set.
inline OutcomeMap first_projection(std::span<const std::string> xs, std::span<const std::string> ys) {
  OutcomeMap f;
  for (const auto& x : xs)
    for (const auto& y : ys) f[product_label(x, y)] = x;
  return f;
}
inline OutcomeMap second_projection(std::span<const std::string> xs, std::span<const std::string> ys) {
  OutcomeMap f;
  for (const auto& x : xs)
    for (const auto& y : ys) f[product_label(x, y)] = y;
  return f;
}

/// f(A)_y = sum {a_x : f(x) = y}. Without a codomain the image of f is used.
inline Observable obs_part(const Observable& a, const OutcomeMap& f,
                           const std::optional<std::vector<std::string>>& codomain = std::nullopt) {
  std::vector<std::string> outcomes;
  std::vector<Effect> effects;
  for (const auto& [y, members] : detail::group_by_image(a.outcomes(), f, codomain)) {
    ComplexMatrix sum(a.dim());
    for (std::size_t i : members) sum += a.effects()[i].matrix();
    outcomes.push_back(y);
    effects.emplace_back(HermitianMatrix(sum));
  }
  return Observable(std::move(outcomes), std::move(effects));
}

/// Largest effectwise max-norm distance; infinite when the outcome sets differ.
inline double observable_distance(const Observable& a, const Observable& b) {
  if (a.size() != b.size() || a.dim() != b.dim()) return std::numeric_limits<double>::infinity();
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto j = b.index_of(a.outcomes()[i]);
    if (!j) return std::numeric_limits<double>::infinity();
    d = std::max(d, distance(a.effects()[i], b.effects()[*j]));
  }
  return d;
}

/// Same outcome set (in any order) and effectwise max-norm within eq_tol.
inline bool observables_equal(const Observable& a, const Observable& b) { return observable_distance(a, b) <= eq_tol(); }

/// Checks that A witnesses coexistence of B and C: B = f(A) and C = g(A).
inline bool verify_coexistence_witness(const Observable& b, const Observable& c, const Observable& a,
                                       const OutcomeMap& f, const OutcomeMap& g) {
  return observables_equal(obs_part(a, f), b) && observables_equal(obs_part(a, g), c);
}

}  // namespace seqmeas
