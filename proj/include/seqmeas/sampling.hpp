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
#include <cstddef>
#include <vector>

#include "seqmeas/effects.hpp"
#include "seqmeas/instruments.hpp"
#include "seqmeas/observables.hpp"
#include "seqmeas/operations.hpp"
#include "seqmeas/random.hpp"

namespace seqmeas {

namespace detail {

/// s^{-1/2} for positive definite s.
inline ComplexMatrix inverse_sqrt(const ComplexMatrix& s) {
  const Spectrum spec = eig_hermitian(HermitianMatrix(s));
  if (spec.min() <= kCondFloor) fail(ErrorKind::kNotPositive, "matrix is singular");
  return spec.apply([](double x) { return 1.0 / std::sqrt(x); }).matrix();
}

}  // namespace detail

/// Operation with Kraus operators G_i S^{-1/2} W^{1/2}, where G_i are Ginibre,
/// S = sum G_i^* G_i and W is a random effect; hat equals W.
inline Operation random_operation(std::size_t dim, Rng& rng, std::size_t max_kraus = 3) {
  detail::check_random_dim(dim);
  const std::size_t n = 1 + uniform_index(rng, max_kraus);
  std::vector<ComplexMatrix> g;
  ComplexMatrix s(dim);
  for (std::size_t i = 0; i < n; ++i) {
    g.push_back(ginibre(dim, rng));
    s += g.back().adjoint() * g.back();
  }
  const ComplexMatrix right = detail::inverse_sqrt(s) * Effect(random_effect(dim, rng)).sqrt().matrix();
  for (auto& k : g) k = k * right;
  return Operation(std::move(g), "random");
}

/// Random channel: G_i S^{-1/2}.
inline Operation random_channel(std::size_t dim, Rng& rng, std::size_t max_kraus = 3) {
  detail::check_random_dim(dim);
  const std::size_t n = 1 + uniform_index(rng, max_kraus);
  std::vector<ComplexMatrix> g;
  ComplexMatrix s(dim);
  for (std::size_t i = 0; i < n; ++i) {
    g.push_back(ginibre(dim, rng));
    s += g.back().adjoint() * g.back();
  }
  const ComplexMatrix right = detail::inverse_sqrt(s);
  for (auto& k : g) k = k * right;
  return Operation(std::move(g), "random");
}

/// Observable with effects S^{-1/2} P_x S^{-1/2}, P_x = G_x^* G_x.
inline Observable random_observable(std::size_t dim, std::size_t outcomes, Rng& rng) {
  detail::check_random_dim(dim);
  if (outcomes == 0) fail(ErrorKind::kInvalidArgument, "an observable needs at least one outcome");
  std::vector<ComplexMatrix> p;
  ComplexMatrix s(dim);
  for (std::size_t x = 0; x < outcomes; ++x) {
    const ComplexMatrix g = ginibre(dim, rng);
    p.push_back(g.adjoint() * g);
    s += p.back();
  }
  const ComplexMatrix r = detail::inverse_sqrt(s);
  std::vector<Effect> effects;
  for (const auto& px : p) effects.emplace_back(HermitianMatrix(r * px * r));
  return Observable(detail::default_labels(outcomes), std::move(effects));
}

/// Observable of rank-one projections onto the columns of a Haar unitary.
inline Observable random_sharp_observable(std::size_t dim, Rng& rng) {
  const ComplexMatrix u = random_unitary(dim, rng);
  std::vector<Effect> effects;
  for (std::size_t k = 0; k < dim; ++k) effects.push_back(Effect::projector(u.column(k)));
  return Observable(detail::default_labels(dim), std::move(effects));
}

/// Instrument whose outcome x has Kraus operators G_{x,i} S^{-1/2}, S summing
/// G^* G over every outcome and index.
inline Instrument random_instrument(std::size_t dim, std::size_t outcomes, Rng& rng, std::size_t max_kraus = 2) {
  detail::check_random_dim(dim);
  if (outcomes == 0) fail(ErrorKind::kInvalidArgument, "an instrument needs at least one outcome");
  std::vector<std::vector<ComplexMatrix>> g(outcomes);
  ComplexMatrix s(dim);
  for (auto& family : g) {
    const std::size_t n = 1 + uniform_index(rng, max_kraus);
    for (std::size_t i = 0; i < n; ++i) {
      family.push_back(ginibre(dim, rng));
      s += family.back().adjoint() * family.back();
    }
  }
  const ComplexMatrix r = detail::inverse_sqrt(s);
  std::vector<Operation> ops;
  for (auto& family : g) {
    for (auto& k : family) k = k * r;
    ops.emplace_back(std::move(family));
  }
  return Instrument(detail::default_labels(outcomes), std::move(ops));
}

/// Kraus instrument I_x(rho) = S_x rho S_x^* with one operator per outcome.
inline Instrument random_kraus_instrument(std::size_t dim, std::size_t outcomes, Rng& rng) {
  detail::check_random_dim(dim);
  std::vector<ComplexMatrix> g;
  ComplexMatrix s(dim);
  for (std::size_t x = 0; x < outcomes; ++x) {
    g.push_back(ginibre(dim, rng));
    s += g.back().adjoint() * g.back();
  }
  const ComplexMatrix r = detail::inverse_sqrt(s);
  for (auto& k : g) k = k * r;
  return kraus_instrument(g);
}

/// Mutually orthogonal projections summing to I: the columns of a Haar
/// unitary split into `blocks` nonempty consecutive groups.
inline std::vector<Effect> random_sharp_partition(std::size_t dim, std::size_t blocks, Rng& rng) {
  if (blocks == 0 || blocks > dim) fail(ErrorKind::kInvalidArgument, "need 1 <= blocks <= dim");
  const ComplexMatrix u = random_unitary(dim, rng);
  // Sizes: one column each, the rest spread at random.
  std::vector<std::size_t> sizes(blocks, 1);
  for (std::size_t k = blocks; k < dim; ++k) ++sizes[uniform_index(rng, blocks)];
  std::vector<Effect> out;
  std::size_t col = 0;
  for (std::size_t size : sizes) {
    ComplexMatrix p(dim);
    for (std::size_t k = 0; k < size; ++k, ++col) p += ComplexMatrix::outer(u.column(col), u.column(col));
    out.emplace_back(HermitianMatrix(p));
  }
  return out;
}

/// n effects with sum_i a_i <= I (the first n of a random (n+1)-outcome observable).
inline std::vector<Effect> random_subunital_effects(std::size_t dim, std::size_t n, Rng& rng) {
  Observable a = random_observable(dim, n + 1, rng);
  return std::vector<Effect>(a.effects().begin(), a.effects().begin() + static_cast<std::ptrdiff_t>(n));
}

/// A random surjection from `domain` onto labels "0".."k-1" with 1 <= k <= |domain|.
inline OutcomeMap random_surjection(std::span<const std::string> domain, std::size_t k, Rng& rng) {
  if (k == 0 || k > domain.size()) fail(ErrorKind::kInvalidArgument, "need 1 <= k <= |domain|");
  std::vector<std::size_t> image(domain.size());
  for (std::size_t i = 0; i < domain.size(); ++i) image[i] = i < k ? i : uniform_index(rng, k);
  std::shuffle(image.begin(), image.end(), rng);
  OutcomeMap f;
  for (std::size_t i = 0; i < domain.size(); ++i) f[domain[i]] = std::to_string(image[i]);
  return f;
}

/// Random states alpha_1..alpha_n.
inline std::vector<State> random_states(std::size_t dim, std::size_t n, Rng& rng) {
  std::vector<State> out;
  for (std::size_t i = 0; i < n; ++i) out.emplace_back(random_state(dim, rng));
  return out;
}

}  // namespace seqmeas
