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
#include <string>
#include <utility>
#include <vector>

#include "seqmeas/effects.hpp"
#include "seqmeas/random.hpp"

namespace seqmeas {

/// A completely positive trace-nonincreasing map, held as a Kraus list
/// {A_i} with sum A_i^* A_i <= I. The induced effect is computed once.
class Operation {
 public:
  Operation() = default;

  explicit Operation(std::vector<ComplexMatrix> kraus, std::string label = {})
      : kraus_(std::move(kraus)), label_(std::move(label)) {
    if (kraus_.empty()) fail(ErrorKind::kInvalidArgument, "an operation needs at least one Kraus operator");
    const std::size_t n = kraus_.front().dim();
    ComplexMatrix sum(n);
    for (const auto& k : kraus_) {
      require_same_dim(k.dim(), n, "Operation");
      sum += k.adjoint() * k;
    }
    try {
      hat_ = Effect(HermitianMatrix(sum));
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::kNotEffect) throw;
      fail(ErrorKind::kNotSubunital, "sum of A_i^* A_i is not below I");
    }
  }

  static Operation zero(std::size_t dim) { return Operation({ComplexMatrix(dim)}, "zero"); }
  static Operation identity(std::size_t dim) { return Operation({ComplexMatrix::identity(dim)}, "identity"); }

  std::span<const ComplexMatrix> kraus() const noexcept { return kraus_; }
  std::size_t dim() const noexcept { return kraus_.front().dim(); }
  const std::string& label() const noexcept { return label_; }
  const Effect& induced_effect() const noexcept { return hat_; }

 private:
  std::vector<ComplexMatrix> kraus_;
  std::string label_;
  Effect hat_;
};

/// The effect an operation measures: sum A_i^* A_i.
using InducedEffect = Effect;

/// sum A_i x A_i^* for an arbitrary matrix x.
inline ComplexMatrix apply_map(const Operation& op, const ComplexMatrix& x) {
  require_same_dim(op.dim(), x.dim(), "apply");
  ComplexMatrix out(x.dim());
  for (const auto& k : op.kraus()) out += k * x * k.adjoint();
  return out;
}

/// I(rho); a subnormalized state.
inline HermitianMatrix apply(const Operation& op, const State& rho) {
  return HermitianMatrix(apply_map(op, rho.matrix()));
}

inline const InducedEffect& hat(const Operation& op) { return op.induced_effect(); }

inline bool is_channel(const Operation& op) {
  return max_distance(hat(op).matrix(), ComplexMatrix::identity(op.dim())) <= eq_tol();
}

/// P_rho(I) = tr[I(rho)]
inline double op_prob(const State& rho, const Operation& op) {
  return detail::clamp01(std::real(apply_map(op, rho.matrix()).trace()));
}

/// I∘J: rho -> J(I(rho)), Kraus operators B_j A_i.
inline Operation compose(const Operation& first, const Operation& second) {
  require_same_dim(first.dim(), second.dim(), "compose");
  std::vector<ComplexMatrix> kraus;
  kraus.reserve(first.kraus().size() * second.kraus().size());
  for (const auto& a : first.kraus())
    for (const auto& b : second.kraus()) kraus.push_back(b * a);
  return Operation(std::move(kraus));
}

/// P_rho(J | I) = tr[J(I(rho))] / tr[I(rho)]
inline double op_cond_prob(const State& rho, const Operation& j, const Operation& given) {
  const double p = op_prob(rho, given);
  if (p <= kCondFloor) fail(ErrorKind::kConditioningOnNull, "P(I) = " + std::to_string(p));
  return std::real(apply_map(j, apply_map(given, rho.matrix())).trace()) / p;
}

/// I + J by Kraus-list concatenation; requires hat(I) + hat(J) <= I.
inline Operation add(const Operation& i, const Operation& j) {
  require_same_dim(i.dim(), j.dim(), "add");
  if (!perp(hat(i), hat(j))) fail(ErrorKind::kNotPerp, "hat(I) + hat(J) is not below I");
  std::vector<ComplexMatrix> kraus(i.kraus().begin(), i.kraus().end());
  kraus.insert(kraus.end(), j.kraus().begin(), j.kraus().end());
  return Operation(std::move(kraus));
}

/// lambda I, realized as sqrt(lambda) A_i.
inline Operation scale(const Operation& op, double lambda) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) fail(ErrorKind::kWeight, "scale factor must lie in [0,1]");
  if (lambda == 0.0) return Operation::zero(op.dim());
  std::vector<ComplexMatrix> kraus;
  for (const auto& k : op.kraus()) kraus.push_back(std::sqrt(lambda) * k);
  return Operation(std::move(kraus));
}

/// I ≈ J iff hat(I) = hat(J).
inline bool equiv(const Operation& i, const Operation& j) { return distance(hat(i), hat(j)) <= eq_tol(); }

/// Max over matrix units E_kl of |I(E_kl) - J(E_kl)|; zero iff the maps agree.
inline double action_distance(const Operation& i, const Operation& j) {
  require_same_dim(i.dim(), j.dim(), "action_distance");
  double d = 0.0;
  for (std::size_t r = 0; r < i.dim(); ++r)
    for (std::size_t c = 0; c < i.dim(); ++c) {
      const ComplexMatrix e = ComplexMatrix::unit(i.dim(), r, c);
      d = std::max(d, max_distance(apply_map(i, e), apply_map(j, e)));
    }
  return d;
}

inline bool same_action(const Operation& i, const Operation& j) { return action_distance(i, j) <= eq_tol(); }

namespace detail {

inline constexpr std::size_t kOrderSampleCount = 32;
inline constexpr std::uint64_t kOrderSampleSeed = 0x5eed0fde7e11ULL;

/// Pure states |e_k>, |e_k + e_l>, |e_k + i e_l>; their projectors span the
/// Hermitian matrices.
inline std::vector<State> hermitian_spanning_states(std::size_t dim) {
  std::vector<State> out;
  for (std::size_t k = 0; k < dim; ++k) out.push_back(State::pure(basis_vector(dim, k)));
  for (std::size_t k = 0; k < dim; ++k)
    for (std::size_t l = k + 1; l < dim; ++l) {
      Vector plus = basis_vector(dim, k);
      plus[l] = 1.0;
      Vector iplus = basis_vector(dim, k);
      iplus[l] = Complex(0.0, 1.0);
      out.push_back(State::pure(plus));
      out.push_back(State::pure(iplus));
    }
  return out;
}

}  // namespace detail

/// I <= J: J(rho) - I(rho) >= 0, tested on a fixed sample of 32 seeded random
/// states plus a set of pure states spanning the Hermitian matrices.
inline bool op_leq(const Operation& i, const Operation& j) {
  require_same_dim(i.dim(), j.dim(), "op_leq");
  std::vector<State> probes = detail::hermitian_spanning_states(i.dim());
  Rng rng(detail::kOrderSampleSeed);
  for (std::size_t s = 0; s < detail::kOrderSampleCount; ++s) probes.emplace_back(random_state(i.dim(), rng));
  for (const auto& rho : probes) {
    if (!is_psd(HermitianMatrix(apply_map(j, rho.matrix()) - apply_map(i, rho.matrix())))) return false;
  }
  return true;
}

/// L^a(rho) = a^{1/2} rho a^{1/2}
inline Operation luders(const Effect& a) { return Operation({a.sqrt().matrix()}, "luders"); }

/// rho -> A rho A^*; requires A^* A <= I.
inline Operation kraus_single(const ComplexMatrix& a) { return Operation({a}, "kraus"); }

struct EffectStatePair {
  Effect effect;
  State state;
};

namespace detail {

inline constexpr double kSpectralDropFloor = 1e-14;

inline void check_subunital(std::span<const Effect> effects, std::string_view where) {
  ComplexMatrix sum(effects.front().dim());
  for (const auto& a : effects) {
    require_same_dim(a.dim(), sum.dim(), where);
    sum += a.matrix();
  }
  if (!loewner_leq(HermitianMatrix(sum), HermitianMatrix::identity(sum.dim()))) {
    fail(ErrorKind::kNotSubunital, std::string(where) + ": sum of effects is not below I");
  }
}

}  // namespace detail

/// rho -> sum_i tr(rho a_i) alpha_i, with Kraus operators
/// A_ijk = lambda_ij^{1/2} |phi_ij><a_i^{1/2} phi_ik| built from the spectral
/// representation alpha_i = sum_j lambda_ij |phi_ij><phi_ij|.
inline Operation semi_trivial(std::span<const EffectStatePair> pairs) {
  if (pairs.empty()) fail(ErrorKind::kInvalidArgument, "semi_trivial needs at least one (effect, state) pair");
  std::vector<Effect> effects;
  for (const auto& p : pairs) {
    require_same_dim(p.effect.dim(), p.state.dim(), "semi_trivial");
    effects.push_back(p.effect);
  }
  detail::check_subunital(effects, "semi_trivial");

  std::vector<ComplexMatrix> kraus;
  for (const auto& [a, alpha] : pairs) {
    const Spectrum spec = eig_hermitian(alpha.op());
    const ComplexMatrix& root = a.sqrt().matrix();
    for (std::size_t j = 0; j < spec.dim(); ++j) {
      const double lambda = spec.eigenvalues[j];
      if (lambda < detail::kSpectralDropFloor) continue;
      for (std::size_t k = 0; k < spec.dim(); ++k) {
        const Vector bra = root * spec.eigenvectors[k];
        kraus.push_back(std::sqrt(lambda) * ComplexMatrix::outer(spec.eigenvectors[j], bra));
      }
    }
  }
  return Operation(std::move(kraus), "semi_trivial");
}

inline Operation semi_trivial(std::initializer_list<EffectStatePair> pairs) {
  return semi_trivial(std::span<const EffectStatePair>(pairs.begin(), pairs.size()));
}

/// rho -> tr(rho a) alpha
inline Operation trivial(const Effect& a, const State& alpha) {
  const EffectStatePair pair{a, alpha};
  Operation op = semi_trivial(std::span<const EffectStatePair>(&pair, 1));
  return Operation(std::vector<ComplexMatrix>(op.kraus().begin(), op.kraus().end()), "trivial");
}

/// rho -> sum a_i rho a_i for mutually orthogonal projections a_i.
inline Operation sharp_operation(std::span<const Effect> projections) {
  if (projections.empty()) fail(ErrorKind::kInvalidArgument, "sharp_operation needs at least one projection");
  for (std::size_t i = 0; i < projections.size(); ++i) {
    require_same_dim(projections[i].dim(), projections.front().dim(), "sharp_operation");
    if (!is_sharp(projections[i])) fail(ErrorKind::kNotProjection, "element " + std::to_string(i));
  }
  for (std::size_t i = 0; i < projections.size(); ++i)
    for (std::size_t j = i + 1; j < projections.size(); ++j) {
      if ((projections[i].matrix() * projections[j].matrix()).max_norm() > 1e-9) {
        fail(ErrorKind::kNotOrthogonal, "elements " + std::to_string(i) + " and " + std::to_string(j));
      }
    }
  std::vector<ComplexMatrix> kraus;
  for (const auto& p : projections) kraus.push_back(p.matrix());
  return Operation(std::move(kraus), "sharp");
}

/// Sharp operation with the one-dimensional projections onto `vectors`.
inline Operation atomic_operation(std::span<const Vector> vectors) {
  std::vector<Effect> projections;
  for (const auto& v : vectors) projections.push_back(Effect::projector(v));
  Operation op = sharp_operation(projections);
  return Operation(std::vector<ComplexMatrix>(op.kraus().begin(), op.kraus().end()), "atomic");
}

/// The Lüders complement rho -> (I - b)^{1/2} rho (I - b)^{1/2}, b = hat(I).
inline Operation complement_luders(const Operation& op) { return luders(complement(hat(op))); }

/// J is a complement of I iff hat(J) = I - hat(I).
inline bool is_complement(const Operation& j, const Operation& i) {
  require_same_dim(i.dim(), j.dim(), "is_complement");
  return max_distance(hat(j).matrix(), ComplexMatrix::identity(i.dim()) - hat(i).matrix()) <= eq_tol();
}

/// a∘I = L^a∘I: rho -> I(a^{1/2} rho a^{1/2}).
inline Operation effect_then_op(const Effect& a, const Operation& op) { return compose(luders(a), op); }

/// I∘a = sum B_i^* a B_i
inline Effect op_then_effect(const Operation& op, const Effect& a) {
  require_same_dim(op.dim(), a.dim(), "op_then_effect");
  ComplexMatrix sum(a.dim());
  for (const auto& b : op.kraus()) sum += b.adjoint() * a.matrix() * b;
  return Effect(HermitianMatrix(sum));
}

/// Kraus list B_j = sum_i U_ji A_i after zero-padding {A_i} to U's size.
/// Any unitary U yields another Kraus decomposition of the same map.
inline Operation kraus_remix(const Operation& op, const ComplexMatrix& unitary) {
  const std::size_t m = unitary.dim();
  if (m < op.kraus().size()) {
    fail(ErrorKind::kDimension, "remixing unitary is smaller than the Kraus list");
  }
  std::vector<ComplexMatrix> out;
  out.reserve(m);
  for (std::size_t j = 0; j < m; ++j) {
    ComplexMatrix b(op.dim());
    for (std::size_t i = 0; i < op.kraus().size(); ++i) b += unitary(j, i) * op.kraus()[i];
    out.push_back(std::move(b));
  }
  return Operation(std::move(out), op.label());
}

}  // namespace seqmeas
