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

#include <cstdint>
#include <random>
#include <string_view>

#include "seqmeas/spectral.hpp"

namespace seqmeas {

using Rng = std::mt19937_64;

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Independent stream seed for (seed, tag); tag is hashed with FNV-1a.
inline std::uint64_t derive_seed(std::uint64_t seed, std::string_view tag) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : tag) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return splitmix64(splitmix64(seed) ^ h);
}

inline double uniform01(Rng& rng) { return std::uniform_real_distribution<double>(0.0, 1.0)(rng); }

inline double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline std::size_t uniform_index(Rng& rng, std::size_t n) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

inline Complex complex_normal(Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  const double re = normal(rng);
  const double im = normal(rng);
  return {re, im};
}

/// Matrix with i.i.d. standard complex Gaussian entries.
inline ComplexMatrix ginibre(std::size_t dim, Rng& rng) {
  ComplexMatrix g(dim);
  for (std::size_t r = 0; r < dim; ++r)
    for (std::size_t c = 0; c < dim; ++c) g(r, c) = complex_normal(rng);
  return g;
}

inline Vector random_unit_vector(std::size_t dim, Rng& rng) {
  Vector v(dim);
  for (auto& z : v) z = complex_normal(rng);
  return normalized(std::move(v));
}

namespace detail {

inline void check_random_dim(std::size_t dim) {
  if (dim < kMinDim || dim > kMaxDim) {
    fail(ErrorKind::kDimension, "random generation supports dims 2..8, got " + std::to_string(dim));
  }
}

/// Haar unitary of any size: Gram-Schmidt QR of a Ginibre matrix. Gram-Schmidt
/// yields a positive diagonal in R, which is the phase fix.
inline ComplexMatrix haar_unitary(std::size_t n, Rng& rng) {
  const ComplexMatrix g = ginibre(n, rng);
  std::vector<Vector> q;
  q.reserve(n);
  for (std::size_t c = 0; c < n; ++c) {
    Vector v = g.column(c);
    for (int pass = 0; pass < 2; ++pass) {
      for (const Vector& u : q) {
        const Complex proj = inner(u, v);
        for (std::size_t i = 0; i < n; ++i) v[i] -= proj * u[i];
      }
    }
    q.push_back(normalized(std::move(v)));
  }
  ComplexMatrix u(n);
  for (std::size_t c = 0; c < n; ++c)
    for (std::size_t r = 0; r < n; ++r) u(r, c) = q[c][r];
  return u;
}

}  // namespace detail

inline ComplexMatrix random_unitary(std::size_t dim, Rng& rng) {
  detail::check_random_dim(dim);
  return detail::haar_unitary(dim, rng);
}

/// Ginibre state G G^* / tr(G G^*).
inline HermitianMatrix random_state(std::size_t dim, Rng& rng) {
  detail::check_random_dim(dim);
  const ComplexMatrix g = ginibre(dim, rng);
  ComplexMatrix rho = g * g.adjoint();
  rho *= 1.0 / std::real(rho.trace());
  return HermitianMatrix(rho);
}

/// U diag(u_1..u_n) U^* with u_i uniform on [0,1] and U Haar.
inline HermitianMatrix random_effect(std::size_t dim, Rng& rng) {
  detail::check_random_dim(dim);
  const ComplexMatrix u = detail::haar_unitary(dim, rng);
  std::vector<double> diag(dim);
  for (auto& x : diag) x = uniform01(rng);
  return congruence(u, HermitianMatrix(ComplexMatrix::diagonal(diag)));
}

inline HermitianMatrix random_pure_state(std::size_t dim, Rng& rng) {
  detail::check_random_dim(dim);
  return HermitianMatrix::projector(random_unit_vector(dim, rng));
}

/// Hermitian with Gaussian entries (GUE up to scale).
inline HermitianMatrix random_hermitian(std::size_t dim, Rng& rng) {
  const ComplexMatrix g = ginibre(dim, rng);
  return HermitianMatrix(0.5 * (g + g.adjoint()));
}

}  // namespace seqmeas
