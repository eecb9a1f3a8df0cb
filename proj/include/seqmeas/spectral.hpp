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
#include <functional>
#include <numeric>
#include <vector>

#include "seqmeas/matrix.hpp"

namespace seqmeas {

/// Eigenpairs of a Hermitian matrix, eigenvalues ascending, eigenvectors
/// orthonormal.
struct Spectrum {
  std::vector<double> eigenvalues;
  std::vector<Vector> eigenvectors;

  std::size_t dim() const noexcept { return eigenvalues.size(); }
  double min() const { return eigenvalues.front(); }
  double max() const { return eigenvalues.back(); }

  /// sum_k f(lambda_k) |v_k><v_k|
  HermitianMatrix apply(const std::function<double(double)>& f) const {
    ComplexMatrix m(dim());
    for (std::size_t k = 0; k < dim(); ++k) {
      const double fk = f(eigenvalues[k]);
      if (fk == 0.0) continue;
      const Vector& v = eigenvectors[k];
      for (std::size_t r = 0; r < dim(); ++r)
        for (std::size_t c = 0; c < dim(); ++c) m(r, c) += fk * v[r] * std::conj(v[c]);
    }
    return HermitianMatrix(m);
  }

  HermitianMatrix reconstruct() const {
    return apply([](double x) { return x; });
  }
};

namespace detail {

inline constexpr int kJacobiMaxSweeps = 100;
inline constexpr double kJacobiOffThreshold = 1e-13;

inline double off_diagonal_frobenius(const ComplexMatrix& a) {
  double s = 0.0;
  for (std::size_t r = 0; r < a.dim(); ++r)
    for (std::size_t c = 0; c < a.dim(); ++c)
      if (r != c) s += std::norm(a(r, c));
  return std::sqrt(s);
}

}  // namespace detail

/// Cyclic Jacobi eigendecomposition. Each rotation J = [[c, s e], [-s e^*, c]]
/// with e = a_pq/|a_pq| zeroes the (p,q) entry of J^* A J.
inline Spectrum eig_hermitian(const HermitianMatrix& m) {
  const std::size_t n = m.dim();
  ComplexMatrix a = m.matrix();
  ComplexMatrix v = ComplexMatrix::identity(n);
  const double scale = std::max(1.0, a.frobenius());

  bool converged = false;
  for (int sweep = 0; sweep < detail::kJacobiMaxSweeps; ++sweep) {
    if (detail::off_diagonal_frobenius(a) <= detail::kJacobiOffThreshold * scale) {
      converged = true;
      break;
    }
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex apq = a(p, q);
        const double mag = std::abs(apq);
        if (mag == 0.0) continue;
        const Complex e = apq / mag;
        const double app = std::real(a(p, p));
        const double aqq = std::real(a(q, q));
        const double theta = (aqq - app) / (2.0 * mag);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const Complex jpq = s * e;             // J(p,q)
        const Complex jqp = -s * std::conj(e);  // J(q,p)

        // A <- A J
        for (std::size_t k = 0; k < n; ++k) {
          const Complex akp = a(k, p);
          const Complex akq = a(k, q);
          a(k, p) = c * akp + jqp * akq;
          a(k, q) = jpq * akp + c * akq;
        }
        // A <- J^* A
        for (std::size_t k = 0; k < n; ++k) {
          const Complex apk = a(p, k);
          const Complex aqk = a(q, k);
          a(p, k) = c * apk + std::conj(jqp) * aqk;
          a(q, k) = std::conj(jpq) * apk + c * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = std::real(a(p, p));
        a(q, q) = std::real(a(q, q));
        // V <- V J
        for (std::size_t k = 0; k < n; ++k) {
          const Complex vkp = v(k, p);
          const Complex vkq = v(k, q);
          v(k, p) = c * vkp + jqp * vkq;
          v(k, q) = jpq * vkp + c * vkq;
        }
      }
    }
  }
  if (!converged && detail::off_diagonal_frobenius(a) > detail::kJacobiOffThreshold * scale) {
    fail(ErrorKind::kConvergence, "Jacobi iteration did not converge in " +
                                      std::to_string(detail::kJacobiMaxSweeps) + " sweeps");
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t i, std::size_t j) { return std::real(a(i, i)) < std::real(a(j, j)); });
  Spectrum out;
  out.eigenvalues.reserve(n);
  out.eigenvectors.reserve(n);
  for (std::size_t k : order) {
    out.eigenvalues.push_back(std::real(a(k, k)));
    out.eigenvectors.push_back(v.column(k));
  }
  return out;
}

inline double min_eigenvalue(const HermitianMatrix& m) { return eig_hermitian(m).min(); }
inline double max_eigenvalue(const HermitianMatrix& m) { return eig_hermitian(m).max(); }

/// Largest |lambda|; the operator norm of a Hermitian matrix.
inline double spectral_norm(const HermitianMatrix& m) {
  const Spectrum s = eig_hermitian(m);
  return std::max(std::abs(s.min()), std::abs(s.max()));
}

inline bool is_psd(const HermitianMatrix& m) { return min_eigenvalue(m) >= -psd_tol(); }

/// Unique positive square root. Eigenvalues in [-psd_tol, 0) are treated as 0.
inline HermitianMatrix sqrt_psd(const Spectrum& s) {
  if (s.min() < -psd_tol()) {
    fail(ErrorKind::kNotPositive, "minimum eigenvalue " + std::to_string(s.min()) + " is negative");
  }
  return s.apply([](double x) { return x > kSqrtFloor ? std::sqrt(x) : 0.0; });
}

inline HermitianMatrix sqrt_psd(const HermitianMatrix& m) { return sqrt_psd(eig_hermitian(m)); }

/// a <= b in the Loewner order, within psd_tol.
inline bool loewner_leq(const HermitianMatrix& a, const HermitianMatrix& b) {
  require_same_dim(a.dim(), b.dim(), "loewner_leq");
  return min_eigenvalue(b - a) >= -psd_tol();
}

/// Spectral projections of m, grouping eigenvalues closer than `gap`.
inline std::vector<HermitianMatrix> eigenprojections(const HermitianMatrix& m, double gap = 1e-8) {
  const Spectrum s = eig_hermitian(m);
  std::vector<HermitianMatrix> out;
  std::size_t k = 0;
  while (k < s.dim()) {
    ComplexMatrix p(s.dim());
    const double start = s.eigenvalues[k];
    while (k < s.dim() && s.eigenvalues[k] - start <= gap) {
      p += ComplexMatrix::outer(s.eigenvectors[k], s.eigenvectors[k]);
      ++k;
    }
    out.emplace_back(p);
  }
  return out;
}

}  // namespace seqmeas
