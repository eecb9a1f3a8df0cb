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

#include <vector>

#include "seqmeas/laws/common.hpp"

namespace seqmeas::laws {

namespace detail {

/// An operation J with hat(J) <= I - hat(I): J = L^{hat(I)'}∘K.
inline Operation fitting_below_complement(const Operation& i, Rng& rng) {
  return compose(luders(complement(hat(i))), random_operation(i.dim(), rng));
}

/// max over pure states of |tr[(I + J)(rho)] - 1|
inline double channel_defect(const Operation& i, const Operation& j) {
  return spectral_norm(HermitianMatrix(hat(i).matrix() + hat(j).matrix() - ComplexMatrix::identity(i.dim())));
}

}  // namespace detail

inline void register_operation_laws(std::vector<LawCheck>& out) {
  out.push_back(make_check(
      "eq-1.1", LawKind::kIdentity,
      "tr(rho sum A_i^* A_i) = sum tr(A_i rho A_i^*) = tr I(rho) <= tr(rho), so sum A_i^* A_i <= I",
      [](LawRun& run, std::size_t dim) {
        Rng& rng = run.rng();
        const Operation op = random_operation(dim, rng);
        const State rho(random_state(dim, rng));
        ComplexMatrix sum(dim);
        double traced = 0.0;
        for (const auto& k : op.kraus()) {
          sum += k.adjoint() * k;
          traced += std::real((k * rho.matrix() * k.adjoint()).trace());
        }
        run.check(max_distance(sum, hat(op).matrix()));
        run.check(std::abs(prob(rho, hat(op)) - traced));
        run.check(std::abs(op_prob(rho, op) - traced));
        run.expect(traced <= 1.0 + eq_tol());
        run.check(std::max(0.0, max_eigenvalue(hat(op).op()) - 1.0));
        // Another Kraus decomposition of the same map induces the same effect.
        const Operation remixed = kraus_remix(op, random_unitary(std::max<std::size_t>(op.kraus().size(), 2), rng));
        run.check(action_distance(op, remixed));
        run.check(distance(hat(op), hat(remixed)));
      }));

  out.push_back(make_check(
      "thm-1.1", LawKind::kIdentity,
      "hat: O(H)/≈ -> E(H) is additive, convex-linear, order preserving, surjective and injective on classes, "
      "with hat(0) = 0 and hat(C) = I for channels",
      [](LawRun& run, std::size_t dim) {
        Rng& rng = run.rng();
        const Operation i = random_operation(dim, rng);
        const Operation j = detail::fitting_below_complement(i, rng);
        const Operation sum = add(i, j);
        run.check(max_distance(hat(sum).matrix(), hat(i).matrix() + hat(j).matrix()));

        std::vector<Operation> members;
        std::vector<double> weights;
        double total = 0.0;
        for (int k = 0; k < 3; ++k) {
          members.push_back(random_operation(dim, rng));
          weights.push_back(uniform01(rng) + 0.05);
          total += weights.back();
        }
        Operation mix = scale(members[0], weights[0] / total);
        ComplexMatrix expected = (weights[0] / total) * hat(members[0]).matrix();
        for (std::size_t k = 1; k < members.size(); ++k) {
          mix = add(mix, scale(members[k], weights[k] / total));
          expected += (weights[k] / total) * hat(members[k]).matrix();
        }
        run.check(max_distance(hat(mix).matrix(), expected));

        const Effect a(random_effect(dim, rng));
        run.check(distance(hat(luders(a)), a));

        // Operations with the same hat are probabilistically indistinguishable.
        const Operation same = trivial(hat(i), State(random_state(dim, rng)));
        run.expect(equiv(same, i));
        const State rho(random_state(dim, rng));
        run.check(std::abs(op_prob(rho, same) - op_prob(rho, i)));

        run.check(distance(hat(random_channel(dim, rng)), Effect::identity(dim)));
        run.check(max_distance(hat(Operation::zero(dim)).matrix(), ComplexMatrix::zero(dim)));
        run.expect(op_leq(i, sum));
        run.expect(loewner_leq(hat(i).op(), hat(sum).op()));
      }));

  out.push_back(make_check(
      "kraus-freedom", LawKind::kIdentity,
      "hat(I), I∘a and I itself are unchanged when the Kraus list is remixed by a unitary",
      [](LawRun& run, std::size_t dim) {
        Rng& rng = run.rng();
        const Operation op = random_operation(dim, rng);
        const std::size_t width = op.kraus().size() + 1 + uniform_index(rng, 2);
        const Operation remixed = kraus_remix(op, seqmeas::detail::haar_unitary(width, rng));
        const Effect a(random_effect(dim, rng));
        run.check(distance(hat(op), hat(remixed)));
        run.check(distance(op_then_effect(op, a), op_then_effect(remixed, a)));
        run.check(action_distance(op, remixed));
      }));

  out.push_back(make_search(
      "eq-2.3/2.4", "Bayes' first rule for operations tr J(rho) = sum_i P(I_i)P(J|I_i) fails when sum I_i = C is a channel",
      [](Rng& rng, std::size_t dim) {
        return json{{"rho", to_json(State(random_state(dim, rng)))},
                    {"decomposition", to_json(random_instrument(dim, detail::small_outcome_count(rng), rng))},
                    {"J", to_json(random_operation(dim, rng))}};
      },
      [](const json& w) {
        const State rho = state_from_json(w.at("rho"));
        const Instrument parts = instrument_from_json(w.at("decomposition"));
        const Operation j = operation_from_json(w.at("J"));
        double rule = 0.0;
        for (const auto& op : parts.ops()) {
          const double p = op_prob(rho, op);
          if (p > kCondFloor) rule += p * op_cond_prob(rho, j, op);
        }
        const Operation c = bar(parts);
        const double through_channel = std::real(apply_map(j, apply_map(c, rho.matrix())).trace());
        return Measurement{std::abs(op_prob(rho, j) - rule), std::abs(rule - through_channel), detail::kSideTol};
      }));

  out.push_back(make_search(
      "ex-1",
      "I_1 = tr(rho a)alpha and I_2 = tr(rho a')alpha sum to the constant channel alpha, and "
      "tr I_1(rho) = tr(rho a) differs from tr I_1(alpha) = tr(alpha a)",
      [](Rng& rng, std::size_t dim) {
        return json{{"rho", to_json(State(random_pure_state(dim, rng)))},
                    {"alpha", to_json(State(random_state(dim, rng)))},
                    {"a", to_json(Effect(random_effect(dim, rng)))}};
      },
      [](const json& w) {
        const State rho = state_from_json(w.at("rho"));
        const State alpha = state_from_json(w.at("alpha"));
        const Effect a = effect_from_json(w.at("a"));
        const Operation i1 = trivial(a, alpha);
        const Operation i2 = trivial(complement(a), alpha);
        const Operation c = add(i1, i2);
        double side = max_distance(apply(c, rho).matrix(), alpha.matrix());
        side = std::max(side, max_distance(apply(i2, rho).matrix(), (1.0 - prob(rho, a)) * alpha.matrix()));
        side = std::max(side, std::abs(std::real(apply_map(i1, apply(c, rho).matrix()).trace()) - prob(alpha, a)));
        return Measurement{std::abs(op_prob(rho, i1) - prob(alpha, a)), side, detail::kSideTol};
      },
      0.1));

  out.push_back(make_search(
      "ex-2",
      "for a projection a and C = L^a + L^{a'}: tr[L^b(C(rho))] = tr[rho(aba + a'ba')], which differs from "
      "tr(rho b) unless ab = ba",
      [](Rng& rng, std::size_t dim) {
        const std::vector<Effect> split = random_sharp_partition(dim, 2, rng);
        return json{{"rho", to_json(State(random_state(dim, rng)))},
                    {"a", to_json(split.front())},
                    {"b", to_json(Effect(random_effect(dim, rng)))}};
      },
      [](const json& w) {
        const State rho = state_from_json(w.at("rho"));
        const Effect a = effect_from_json(w.at("a"));
        const Effect b = effect_from_json(w.at("b"));
        const Effect ac = complement(a);
        const ComplexMatrix sandwich =
            a.matrix() * b.matrix() * a.matrix() + ac.matrix() * b.matrix() * ac.matrix();
        const Operation c = add(luders(a), luders(ac));
        const Operation j = luders(b);
        const double through_channel = std::real(apply_map(j, apply(c, rho).matrix()).trace());
        double side = std::abs(through_channel - std::real(trace_of_product(rho.matrix(), sandwich)));
        side = std::max(side, std::abs(op_prob(rho, j) - prob(rho, b)));
        return Measurement{(b.matrix() - sandwich).frobenius(), side, detail::kSideTol};
      }));

  out.push_back(make_search(
      "ex-3",
      "Bayes' second rule for operations tr J(I(rho)) = tr I(J(rho)) fails for trivial pairs "
      "(tr(rho a)tr(alpha a) vs tr(rho a)tr(beta a)) and Lüders pairs (tr(rho a∘b) vs tr(rho b∘a))",
      [](Rng& rng, std::size_t dim) {
        return json{{"rho", to_json(State(random_state(dim, rng)))},
                    {"a", to_json(Effect(random_effect(dim, rng)))},
                    {"b", to_json(Effect(random_effect(dim, rng)))},
                    {"alpha", to_json(State(random_state(dim, rng)))},
                    {"beta", to_json(State(random_state(dim, rng)))}};
      },
      [](const json& w) {
        const State rho = state_from_json(w.at("rho"));
        const Effect a = effect_from_json(w.at("a"));
        const Effect b = effect_from_json(w.at("b"));
        const State alpha = state_from_json(w.at("alpha"));
        const State beta = state_from_json(w.at("beta"));
        const auto p_then = [&](const Operation& first, const Operation& second) {
          return op_prob(rho, compose(first, second));
        };
        const Operation ti = trivial(a, alpha);
        const Operation tj = trivial(a, beta);
        const Operation li = luders(a);
        const Operation lj = luders(b);
        double side = std::abs(p_then(ti, tj) - prob(rho, a) * prob(alpha, a));
        side = std::max(side, std::abs(p_then(tj, ti) - prob(rho, a) * prob(beta, a)));
        side = std::max(side, std::abs(p_then(li, lj) - prob(rho, seq_product(a, b))));
        side = std::max(side, std::abs(p_then(lj, li) - prob(rho, seq_product(b, a))));
        const double violation =
            std::max(std::abs(p_then(ti, tj) - p_then(tj, ti)), std::abs(p_then(li, lj) - p_then(lj, li)));
        return Measurement{violation, side, detail::kSideTol};
      }));

  out.push_back(make_check(
      "lemma-2.1", LawKind::kIdentity,
      "sum P_psi_i rho P_psi_i = sum tr(rho P_psi_i) P_psi_i for an orthonormal family psi_i",
      [](LawRun& run, std::size_t dim) {
        Rng& rng = run.rng();
        const ComplexMatrix u = random_unitary(dim, rng);
        const std::size_t count = 1 + uniform_index(rng, dim);
        std::vector<Vector> vectors;
        std::vector<EffectStatePair> pairs;
        for (std::size_t k = 0; k < count; ++k) {
          vectors.push_back(u.column(k));
          pairs.push_back({Effect::projector(vectors.back()), State::pure(vectors.back())});
        }
        const Operation atomic = atomic_operation(vectors);
        const Operation st = semi_trivial(pairs);
        run.check(action_distance(atomic, st));
        run.check(detail::matrix_unit_deviation(atomic, [&](const ComplexMatrix& e) {
          ComplexMatrix expected(dim);
          for (const auto& p : pairs) expected += trace_of_product(e, p.effect.matrix()) * p.state.matrix();
          return expected;
        }));
      }));

  out.push_back(make_check(
      "thm-2.2", LawKind::kIdentity,
      "A_ijk = λ_ij^{1/2}|φ_ij><a_i^{1/2}φ_ik| are Kraus operators of rho -> sum tr(rho a_i)alpha_i, "
      "and the induced effect is sum a_i",
      [](LawRun& run, std::size_t dim) {
        Rng& rng = run.rng();
        const std::size_t n = 1 + uniform_index(rng, 3);
        const std::vector<Effect> effects = random_subunital_effects(dim, n, rng);
        std::vector<EffectStatePair> pairs;
        for (const auto& a : effects) pairs.push_back({a, detail::random_mixed_or_pure(dim, rng)});
        const Operation op = semi_trivial(pairs);
        run.expect(op.kraus().size() <= n * dim * dim);
        run.check(detail::matrix_unit_deviation(op, [&](const ComplexMatrix& e) {
          ComplexMatrix expected(dim);
          for (const auto& p : pairs) expected += trace_of_product(e, p.effect.matrix()) * p.state.matrix();
          return expected;
        }));
        ComplexMatrix total(dim);
        for (const auto& a : effects) total += a.matrix();
        run.check(max_distance(hat(op).matrix(), total));
      }));

  out.push_back(make_check(
      "cor-2.3", LawKind::kIdentity,
      "A_ij = λ_i^{1/2}|φ_i><a^{1/2}φ_j| are Kraus operators of rho -> tr(rho a)alpha, which measures a",
      [](LawRun& run, std::size_t dim) {
        Rng& rng = run.rng();
        const Effect a(random_effect(dim, rng));
        const State alpha = detail::random_mixed_or_pure(dim, rng);
        const Operation op = trivial(a, alpha);
        run.expect(op.kraus().size() <= dim * dim);
        run.check(detail::matrix_unit_deviation(
            op, [&](const ComplexMatrix& e) { return trace_of_product(e, a.matrix()) * alpha.matrix(); }));
        run.check(distance(hat(op), a));
        // Different alpha give different operations measuring the same a.
        const Operation other = trivial(a, State(random_state(dim, rng)));
        run.expect(equiv(op, other));
      }));

  out.push_back(make_check(
      "ex-4", LawKind::kIdentity,
      "J(rho) = (I - b)^{1/2} rho (I - b)^{1/2} with b = sum A_i^* A_i is the unique Lüders complement of I",
      [](LawRun& run, std::size_t dim) {
        Rng& rng = run.rng();
        const Operation i = random_operation(dim, rng);
        const Operation j = complement_luders(i);
        const Effect expected_root(sqrt_psd(complement(hat(i)).op()));
        run.check(max_distance(j.kraus().front(), expected_root.matrix()));
        run.expect(is_channel(add(i, j)));
        run.expect(is_complement(j, i));
        // Any other Lüders operation is not a complement.
        const Effect c(random_effect(dim, rng));
        if (distance(c, complement(hat(i))) > detail::kGenericFloor) run.expect(!is_complement(luders(c), i));
      }));

  out.push_back(make_check(
      "ex-5", LawKind::kIdentity,
      "a∘rho + a'∘rho is a channel, and tr(rho a)alpha + tr(rho a')alpha = alpha is a constant channel",
      [](LawRun& run, std::size_t dim) {
        Rng& rng = run.rng();
        const Effect a(random_effect(dim, rng));
        const State alpha(random_state(dim, rng));
        run.expect(is_channel(add(luders(a), luders(complement(a)))));
        run.expect(is_complement(luders(complement(a)), luders(a)));
        const Operation constant = add(trivial(a, alpha), trivial(complement(a), alpha));
        run.expect(is_channel(constant));
        run.expect(is_complement(trivial(complement(a), alpha), trivial(a, alpha)));
        const State rho(random_state(dim, rng));
        run.check(max_distance(apply(constant, rho).matrix(), alpha.matrix()));
      }));

  out.push_back(make_check(
      "thm-2.4i", LawKind::kIff, "J is a complement of I iff hat(J) = I - hat(I)",
      [](LawRun& run, std::size_t dim) {
        Rng& rng = run.rng();
        const Operation i = random_operation(dim, rng);
        const Effect target = complement(hat(i));
        const State alpha(random_state(dim, rng));
        for (const Operation& j : {complement_luders(i), trivial(target, alpha),
                                   compose(luders(target), random_channel(dim, rng))}) {
          run.check(distance(hat(j), target));
          run.expect(is_complement(j, i));
          run.check(detail::channel_defect(i, j));
        }
        for (int attempt = 0; attempt < detail::kMaxRedraws; ++attempt) {
          const Operation j = random_operation(dim, rng);
          if ((hat(j).matrix() - target.matrix()).frobenius() <= detail::kGenericFloor) continue;
          run.expect(!is_complement(j, i));
          run.negative(detail::channel_defect(i, j), {{"I", to_json(i)}, {"J", to_json(j)}});
          break;
        }
      }));

  out.push_back(make_check(
      "thm-2.4ii", LawKind::kIdentity,
      "for sharp I = sum a_i rho a_i and J = b' rho b' with b = sum a_i, I + J is a channel and every "
      "K <= I, J has hat(K) = 0",
      [](LawRun& run, std::size_t dim) {
        Rng& rng = run.rng();
        const std::size_t blocks = std::min(dim, 2 + uniform_index(rng, dim - 1));
        const std::vector<Effect> partition = random_sharp_partition(dim, blocks, rng);
        const std::size_t used = 1 + uniform_index(rng, blocks - 1);
        const std::vector<Effect> projections(partition.begin(), partition.begin() + used);
        const Operation i = sharp_operation(projections);
        const Effect b = hat(i);
        const Operation j = luders(complement(b));
        run.expect(is_sharp(b));
        run.expect(is_channel(add(i, j)));
        run.expect(is_complement(j, i));
        // Effect-level meet witness over scaled candidates.
        const double lambda = 0.05 + 0.95 * uniform01(rng);
        for (const Effect& c : {scale(hat(i), lambda), scale(hat(j), lambda), seq_product(hat(i), hat(j))}) {
          if (loewner_leq(c.op(), hat(i).op()) && loewner_leq(c.op(), hat(j).op())) run.check(c.matrix().max_norm());
        }
        // Operation-level candidates.
        for (const Operation& k : {scale(i, lambda), scale(j, lambda), compose(i, j), compose(j, i)}) {
          if (op_leq(k, i) && op_leq(k, j)) run.check(hat(k).matrix().max_norm());
        }
        run.expect(!op_leq(scale(i, lambda), j));
        run.expect(!op_leq(scale(j, lambda), i));
      }));
}

}  // namespace seqmeas::laws
