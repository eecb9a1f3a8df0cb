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
#include <span>
#include <string>
#include <vector>

#include "seqmeas/spectral.hpp"

namespace seqmeas {

namespace detail {

inline double clamp01(double x) { return std::clamp(x, 0.0, 1.0); }

}  // namespace detail

/// An effect: 0 <= a <= I. Spectra outside [0,1] by at most psd_tol are
/// clamped into it; anything further out is rejected.
class Effect {
 public:
  Effect() = default;

  explicit Effect(const HermitianMatrix& op) : op_(op), spectrum_(eig_hermitian(op)) {
    const double lo = spectrum_.min();
    const double hi = spectrum_.max();
    if (lo < -psd_tol() || hi > 1.0 + psd_tol()) {
      fail(ErrorKind::kNotEffect,
           "spectrum [" + std::to_string(lo) + ", " + std::to_string(hi) + "] is not inside [0,1]");
    }
    if (lo < 0.0 || hi > 1.0) {
      for (auto& x : spectrum_.eigenvalues) x = detail::clamp01(x);
      op_ = spectrum_.reconstruct();
    }
    sqrt_ = spectrum_.apply([](double x) { return x > kSqrtFloor ? std::sqrt(x) : 0.0; });
  }

  explicit Effect(const ComplexMatrix& m) : Effect(HermitianMatrix(m)) {}

  static Effect zero(std::size_t dim) { return Effect(HermitianMatrix::zero(dim)); }
  static Effect identity(std::size_t dim) { return Effect(HermitianMatrix::identity(dim)); }
  static Effect projector(const Vector& unit) { return Effect(HermitianMatrix::projector(normalized(unit))); }

  const HermitianMatrix& op() const noexcept { return op_; }
  const ComplexMatrix& matrix() const noexcept { return op_.matrix(); }
  std::size_t dim() const noexcept { return op_.dim(); }
  const Spectrum& spectrum() const noexcept { return spectrum_; }
  /// a^{1/2}
  const HermitianMatrix& sqrt() const noexcept { return sqrt_; }

 private:
  HermitianMatrix op_;
  Spectrum spectrum_;
  HermitianMatrix sqrt_;
};

/// A density operator: rho >= 0, tr(rho) = 1.
class State {
 public:
  State() = default;

  explicit State(const HermitianMatrix& op) : op_(op) {
    Spectrum s = eig_hermitian(op);
    if (s.min() < -psd_tol()) {
      fail(ErrorKind::kNotState, "minimum eigenvalue " + std::to_string(s.min()) + " is negative");
    }
    const double tr = op.trace();
    if (std::abs(tr - 1.0) > kTraceTol) fail(ErrorKind::kNotState, "trace " + std::to_string(tr) + " is not 1");
    if (s.min() < 0.0) {
      for (auto& x : s.eigenvalues) x = std::max(x, 0.0);
      op_ = s.reconstruct();
    }
  }

  explicit State(const ComplexMatrix& m) : State(HermitianMatrix(m)) {}

  static State maximally_mixed(std::size_t dim) {
    return State(HermitianMatrix((1.0 / static_cast<double>(dim)) * ComplexMatrix::identity(dim)));
  }
  static State pure(const Vector& v) { return State(HermitianMatrix::projector(normalized(v))); }

  const HermitianMatrix& op() const noexcept { return op_; }
  const ComplexMatrix& matrix() const noexcept { return op_.matrix(); }
  std::size_t dim() const noexcept { return op_.dim(); }

 private:
  HermitianMatrix op_;
};

inline double distance(const Effect& a, const Effect& b) { return max_distance(a.matrix(), b.matrix()); }

/// a' = I - a
inline Effect complement(const Effect& a) { return Effect(HermitianMatrix::identity(a.dim()) - a.op()); }

/// a + b <= I
inline bool perp(const Effect& a, const Effect& b) {
  require_same_dim(a.dim(), b.dim(), "perp");
  return loewner_leq(a.op() + b.op(), HermitianMatrix::identity(a.dim()));
}

/// Orthosum a + b; throws NotPerp unless a ⊥ b.
inline Effect orthosum(const Effect& a, const Effect& b) {
  if (!perp(a, b)) fail(ErrorKind::kNotPerp, "a + b is not below I");
  return Effect(a.op() + b.op());
}

/// a∘b = a^{1/2} b a^{1/2}
inline Effect seq_product(const Effect& a, const Effect& b) {
  require_same_dim(a.dim(), b.dim(), "seq_product");
  return Effect(congruence(a.sqrt().matrix(), b.op()));
}

inline Effect scale(const Effect& a, double lambda) {
  if (lambda < 0.0 || lambda > 1.0) fail(ErrorKind::kWeight, "scale factor must lie in [0,1]");
  return Effect(lambda * a.op());
}

inline Effect convex_combine(std::span<const Effect> effects, std::span<const double> weights) {
  if (effects.empty() || effects.size() != weights.size()) {
    fail(ErrorKind::kWeight, "need one weight per effect and at least one effect");
  }
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0)) fail(ErrorKind::kWeight, "weights must be nonnegative");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-12) fail(ErrorKind::kWeight, "weights sum to " + std::to_string(total));
  ComplexMatrix sum(effects.front().dim());
  for (std::size_t i = 0; i < effects.size(); ++i) {
    require_same_dim(effects[i].dim(), sum.dim(), "convex_combine");
    sum += weights[i] * effects[i].matrix();
  }
  return Effect(HermitianMatrix(sum));
}

/// a is a projection.
inline bool is_sharp(const Effect& a) { return max_distance(a.matrix() * a.matrix(), a.matrix()) <= eq_tol(); }

/// a is a one-dimensional projection.
inline bool is_atomic(const Effect& a) { return is_sharp(a) && std::abs(a.op().trace() - 1.0) <= 1e-9; }

/// P_rho(a) = tr(rho a), clamped to [0,1].
inline double prob(const State& rho, const Effect& a) {
  require_same_dim(rho.dim(), a.dim(), "prob");
  return detail::clamp01(real_trace_of_product(rho.op(), a.op()));
}

/// P_rho(b | a) = P_rho(a∘b) / P_rho(a)
inline double cond_prob(const State& rho, const Effect& b, const Effect& given) {
  const double pa = prob(rho, given);
  if (pa <= kCondFloor) fail(ErrorKind::kConditioningOnNull, "P(a) = " + std::to_string(pa));
  return prob(rho, seq_product(given, b)) / pa;
}

}  // namespace seqmeas
