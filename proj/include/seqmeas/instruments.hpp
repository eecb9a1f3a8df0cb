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
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "seqmeas/observables.hpp"
#include "seqmeas/operations.hpp"

namespace seqmeas {

/// A finite operation-valued measure {I_x} whose sum is a channel.
class Instrument {
 public:
  Instrument() = default;

  Instrument(std::vector<std::string> outcomes, std::vector<Operation> ops)
      : outcomes_(std::move(outcomes)), ops_(std::move(ops)) {
    detail::check_labels(outcomes_, ops_.size(), ErrorKind::kNotChannel);
    ComplexMatrix sum(ops_.front().dim());
    for (const auto& op : ops_) {
      require_same_dim(op.dim(), sum.dim(), "Instrument");
      sum += hat(op).matrix();
    }
    const double dev = max_distance(sum, ComplexMatrix::identity(sum.dim()));
    if (dev > eq_tol()) fail(ErrorKind::kNotChannel, "member operations sum to a channel only within " + std::to_string(dev));
  }

  /// The one-outcome instrument {C} of a channel C.
  static Instrument of_channel(const Operation& channel, std::string label = "1") {
    return Instrument({std::move(label)}, {channel});
  }

  std::size_t size() const noexcept { return ops_.size(); }
  std::size_t dim() const noexcept { return ops_.front().dim(); }
  const std::vector<std::string>& outcomes() const noexcept { return outcomes_; }
  const std::vector<Operation>& ops() const noexcept { return ops_; }

  std::optional<std::size_t> index_of(const std::string& x) const {
    const auto it = std::find(outcomes_.begin(), outcomes_.end(), x);
    if (it == outcomes_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - outcomes_.begin());
  }

  const Operation& op(const std::string& x) const {
    const auto i = index_of(x);
    if (!i) fail(ErrorKind::kInvalidArgument, "unknown outcome '" + x + "'");
    return ops_[*i];
  }

 private:
  std::vector<std::string> outcomes_;
  std::vector<Operation> ops_;
};

namespace detail {

inline Operation concat_kraus(std::span<const Operation* const> ops) {
  std::vector<ComplexMatrix> kraus;
  for (const Operation* op : ops) kraus.insert(kraus.end(), op->kraus().begin(), op->kraus().end());
  return Operation(std::move(kraus));
}

inline std::vector<std::string> default_labels(std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(std::to_string(i));
  return out;
}

}  // namespace detail

/// Ī = sum_x I_x, a channel.
inline Operation bar(const Instrument& inst) {
  std::vector<const Operation*> ops;
  for (const auto& op : inst.ops()) ops.push_back(&op);
  return detail::concat_kraus(ops);
}

/// Î = {hat(I_x)}, the observable the instrument measures.
inline Observable measured_observable(const Instrument& inst) {
  std::vector<Effect> effects;
  for (const auto& op : inst.ops()) effects.push_back(hat(op));
  return Observable(inst.outcomes(), std::move(effects));
}

/// x -> tr[I_x(rho)]
inline Distribution distribution(const Instrument& inst, const State& rho) {
  Distribution out;
  for (std::size_t i = 0; i < inst.size(); ++i) out.emplace_back(inst.outcomes()[i], op_prob(rho, inst.ops()[i]));
  return out;
}

/// L^A: I_x(rho) = a_x^{1/2} rho a_x^{1/2}
inline Instrument luders_instrument(const Observable& a) {
  std::vector<Operation> ops;
  for (const auto& e : a.effects()) ops.push_back(luders(e));
  return Instrument(a.outcomes(), std::move(ops));
}

/// I_x(rho) = tr(rho a_x) alpha
inline Instrument trivial_instrument(const Observable& a, const State& alpha) {
  std::vector<Operation> ops;
  for (const auto& e : a.effects()) ops.push_back(trivial(e, alpha));
  return Instrument(a.outcomes(), std::move(ops));
}

/// I_x(rho) = tr(rho a_x) alpha_x
inline Instrument semi_trivial_instrument(const Observable& a, std::span<const State> states) {
  if (states.size() != a.size()) fail(ErrorKind::kInvalidArgument, "one state per outcome is required");
  std::vector<Operation> ops;
  for (std::size_t x = 0; x < a.size(); ++x) ops.push_back(trivial(a.effects()[x], states[x]));
  return Instrument(a.outcomes(), std::move(ops));
}

/// I_x(rho) = A_x rho A_x^*; requires sum A_x^* A_x = I.
inline Instrument kraus_instrument(std::span<const ComplexMatrix> kraus,
                                   std::optional<std::vector<std::string>> outcomes = std::nullopt) {
  if (kraus.empty()) fail(ErrorKind::kNotChannel, "no Kraus operators");
  std::vector<Operation> ops;
  ComplexMatrix sum(kraus.front().dim());
  for (const auto& k : kraus) {
    require_same_dim(k.dim(), sum.dim(), "kraus_instrument");
    sum += k.adjoint() * k;
  }
  if (max_distance(sum, ComplexMatrix::identity(sum.dim())) > 1e-9) {
    fail(ErrorKind::kNotChannel, "sum of A_x^* A_x is not I");
  }
  for (const auto& k : kraus) ops.push_back(kraus_single(k));
  return Instrument(outcomes ? std::move(*outcomes) : detail::default_labels(kraus.size()), std::move(ops));
}

/// I_x(rho) = sum_i P^x_i rho P^x_i for a family of projections summing to I.
inline Instrument sharp_instrument(const std::vector<std::vector<Effect>>& families,
                                   std::optional<std::vector<std::string>> outcomes = std::nullopt) {
  if (families.empty()) fail(ErrorKind::kNotChannel, "no projections");
  std::vector<Effect> all;
  for (const auto& fam : families) all.insert(all.end(), fam.begin(), fam.end());
  // Validates projections and mutual orthogonality.
  const Operation total = sharp_operation(all);
  if (!is_channel(total)) fail(ErrorKind::kNotChannel, "projections do not sum to I");
  std::vector<Operation> ops;
  for (const auto& fam : families) ops.push_back(sharp_operation(fam));
  return Instrument(outcomes ? std::move(*outcomes) : detail::default_labels(families.size()), std::move(ops));
}

/// Sharp instrument whose projections are one-dimensional.
inline Instrument atomic_instrument(const std::vector<std::vector<Vector>>& families,
                                    std::optional<std::vector<std::string>> outcomes = std::nullopt) {
  std::vector<std::vector<Effect>> projections;
  for (const auto& fam : families) {
    auto& out = projections.emplace_back();
    for (const auto& v : fam) out.push_back(Effect::projector(v));
  }
  return sharp_instrument(projections, std::move(outcomes));
}

/// (I∘J)_(x,y) = I_x∘J_y
inline Instrument inst_seq_product(const Instrument& i, const Instrument& j) {
  require_same_dim(i.dim(), j.dim(), "inst_seq_product");
  std::vector<std::string> outcomes;
  std::vector<Operation> ops;
  for (std::size_t x = 0; x < i.size(); ++x)
    for (std::size_t y = 0; y < j.size(); ++y) {
      outcomes.push_back(product_label(i.outcomes()[x], j.outcomes()[y]));
      ops.push_back(compose(i.ops()[x], j.ops()[y]));
    }
  return Instrument(std::move(outcomes), std::move(ops));
}

/// (J|I)_y = Ī∘J_y
inline Instrument inst_conditioned(const Instrument& j, const Instrument& given) {
  require_same_dim(j.dim(), given.dim(), "inst_conditioned");
  const Operation channel = bar(given);
  std::vector<Operation> ops;
  for (const auto& jy : j.ops()) ops.push_back(compose(channel, jy));
  return Instrument(j.outcomes(), std::move(ops));
}

/// (A∘I)_(x,y) = a_x∘I_y
inline Instrument obs_then_inst(const Observable& a, const Instrument& inst) {
  require_same_dim(a.dim(), inst.dim(), "obs_then_inst");
  std::vector<std::string> outcomes;
  std::vector<Operation> ops;
  for (std::size_t x = 0; x < a.size(); ++x)
    for (std::size_t y = 0; y < inst.size(); ++y) {
      outcomes.push_back(product_label(a.outcomes()[x], inst.outcomes()[y]));
      ops.push_back(effect_then_op(a.effects()[x], inst.ops()[y]));
    }
  return Instrument(std::move(outcomes), std::move(ops));
}

/// (I∘A)_(x,y) = I_x∘a_y
inline Observable inst_then_obs(const Instrument& inst, const Observable& a) {
  require_same_dim(a.dim(), inst.dim(), "inst_then_obs");
  std::vector<std::string> outcomes;
  std::vector<Effect> effects;
  for (std::size_t x = 0; x < inst.size(); ++x)
    for (std::size_t y = 0; y < a.size(); ++y) {
      outcomes.push_back(product_label(inst.outcomes()[x], a.outcomes()[y]));
      effects.push_back(op_then_effect(inst.ops()[x], a.effects()[y]));
    }
  return Observable(std::move(outcomes), std::move(effects));
}

/// (I|A)_y = bar(L^A)∘I_y
inline Instrument inst_conditioned_on_obs(const Instrument& inst, const Observable& given) {
  require_same_dim(inst.dim(), given.dim(), "inst_conditioned_on_obs");
  return inst_conditioned(inst, luders_instrument(given));
}

/// (A|I)_y = Ī∘a_y
inline Observable obs_conditioned_on_inst(const Observable& a, const Instrument& given) {
  require_same_dim(a.dim(), given.dim(), "obs_conditioned_on_inst");
  const Operation channel = bar(given);
  std::vector<Effect> effects;
  for (const auto& ay : a.effects()) effects.push_back(op_then_effect(channel, ay));
  return Observable(a.outcomes(), std::move(effects));
}

/// f(I)_y = sum {I_x : f(x) = y}, by Kraus-list concatenation.
inline Instrument inst_part(const Instrument& inst, const OutcomeMap& f,
                            const std::optional<std::vector<std::string>>& codomain = std::nullopt) {
  std::vector<std::string> outcomes;
  std::vector<Operation> ops;
  for (const auto& [y, members] : detail::group_by_image(inst.outcomes(), f, codomain)) {
    std::vector<const Operation*> parts;
    for (std::size_t i : members) parts.push_back(&inst.ops()[i]);
    outcomes.push_back(y);
    ops.push_back(detail::concat_kraus(parts));
  }
  return Instrument(std::move(outcomes), std::move(ops));
}

/// Largest per-outcome action distance; infinite when the outcome sets differ.
inline double instrument_distance(const Instrument& a, const Instrument& b) {
  if (a.size() != b.size() || a.dim() != b.dim()) return std::numeric_limits<double>::infinity();
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto j = b.index_of(a.outcomes()[i]);
    if (!j) return std::numeric_limits<double>::infinity();
    d = std::max(d, action_distance(a.ops()[i], b.ops()[*j]));
  }
  return d;
}

/// Per-outcome equality of action (Kraus lists may differ).
inline bool instruments_equal(const Instrument& a, const Instrument& b) { return instrument_distance(a, b) <= eq_tol(); }

/// Checks that I witnesses coexistence of J and K: J = f(I) and K = g(I).
inline bool verify_inst_coexistence_witness(const Instrument& j, const Instrument& k, const Instrument& i,
                                            const OutcomeMap& f, const OutcomeMap& g) {
  return instruments_equal(inst_part(i, f), j) && instruments_equal(inst_part(i, g), k);
}

}  // namespace seqmeas
