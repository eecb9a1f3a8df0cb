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

#include <string>
#include <vector>

#include "seqmeas/laws/common.hpp"

namespace seqmeas::laws {

namespace detail {

/// A random surjection from the outcomes of an instrument with 3 or 4
/// outcomes onto 2 or 3 labels.
inline OutcomeMap random_part_map(std::span<const std::string> outcomes, Rng& rng) {
  const std::size_t k = 2 + uniform_index(rng, std::min<std::size_t>(2, outcomes.size() - 1));
  return random_surjection(outcomes, std::min(k, outcomes.size()), rng);
}

/// max_x of the action distance between I_x and sum_y I_x∘J_y = J̄∘I_x.
inline double first_marginal_defect(const Instrument& i, const Instrument& j) {
  const Operation jbar = bar(j);
  double d = 0.0;
  for (const auto& ix : i.ops()) d = std::max(d, action_distance(ix, compose(ix, jbar)));
  return d;
}

}  // namespace detail

inline void register_mixed_laws(std::vector<LawCheck>& out) {
  out.push_back(make_check(
      "thm-4.1i", LawKind::kIdentity, "(a∘I)^ = a∘Î, with (a∘I)(rho) = I(a^{1/2} rho a^{1/2})",
      [](LawRun& run, std::size_t dim) {
        Rng& rng = run.rng();
        const Effect a(random_effect(dim, rng));
        const Operation i = random_operation(dim, rng);
        const Operation ai = effect_then_op(a, i);
        run.check(distance(hat(ai), seq_product(a, hat(i))));
        const State rho(random_state(dim, rng));
        const ComplexMatrix inner = a.sqrt().matrix() * rho.matrix() * a.sqrt().matrix();
        run.check(max_distance(apply(ai, rho).matrix(), apply_map(i, inner)));
        // The identity operation gives L^a, and the unit effect leaves I unchanged.
        run.check(action_distance(effect_then_op(a, Operation::identity(dim)), luders(a)));
        run.check(action_distance(effect_then_op(Effect::identity(dim), i), i));
      }));

  out.push_back(make_check(
      "thm-4.1ii", LawKind::kIdentity, "(A∘I)^_(x,y) = a_x∘Î_y, and L^A∘B = A∘B",
      [](LawRun& run, std::size_t dim) {
        Rng& rng = run.rng();
        const Observable a = random_observable(dim, detail::small_outcome_count(rng), rng);
        const Instrument i = random_instrument(dim, detail::small_outcome_count(rng), rng);
        run.check(observable_distance(measured_observable(obs_then_inst(a, i)),
                                      obs_seq_product(a, measured_observable(i))));
        const Observable b = random_observable(dim, detail::small_outcome_count(rng), rng);
        run.check(observable_distance(inst_then_obs(luders_instrument(a), b), obs_seq_product(a, b)));
        run.check(instrument_distance(obs_then_inst(a, luders_instrument(b)),
                                      inst_seq_product(luders_instrument(a), luders_instrument(b))));
      }));

  out.push_back(make_check(
      "thm-4.1iii", LawKind::kIdentity, "(I|A)^ = (Î|A), and (A|I)_y = Ī∘a_y",
      [](LawRun& run, std::size_t dim) {
        Rng& rng = run.rng();
        const Observable a = random_observable(dim, detail::small_outcome_count(rng), rng);
        const Instrument i = random_instrument(dim, detail::small_outcome_count(rng), rng);
        run.check(observable_distance(measured_observable(inst_conditioned_on_obs(i, a)),
                                      obs_conditioned(measured_observable(i), a)));
        // (A|I) is the y-marginal of I∘A.
        const Observable marginal = obs_part(inst_then_obs(i, a), second_projection(i.outcomes(), a.outcomes()));
        run.check(observable_distance(obs_conditioned_on_inst(a, i), marginal));
      }));

  out.push_back(make_check(
      "thm-4.2", LawKind::kIdentity,
      "trivial I = tr(rho b)alpha: I∘a = tr(alpha a)b and a∘I = tr(rho a∘b)alpha; semi-trivial I (alpha_x, B): "
      "(I∘A)_(x,y) = tr(alpha_x a_y)b_x and A∘I is semi-trivial with states alpha_y and observable A∘B; "
      "Kraus I_x = S_x rho S_x^*: (I∘A)_(x,y) = S_x^* a_y S_x and A∘I has Kraus operators S_y a_x^{1/2}",
      [](LawRun& run, std::size_t dim) {
        Rng& rng = run.rng();
        {
          const Effect a(random_effect(dim, rng));
          const Effect b(random_effect(dim, rng));
          const State alpha(random_state(dim, rng));
          const Operation i = trivial(b, alpha);
          run.check(max_distance(op_then_effect(i, a).matrix(), prob(alpha, a) * b.matrix()));
          run.check(action_distance(effect_then_op(a, i), trivial(seq_product(a, b), alpha)));
        }
        const Observable a = random_observable(dim, detail::small_outcome_count(rng), rng);
        {
          const Observable b = random_observable(dim, detail::small_outcome_count(rng), rng);
          const bool trivial_case = run.trial_index() % 2 == 1;
          std::vector<State> alphas;
          for (std::size_t x = 0; x < b.size(); ++x)
            alphas.push_back(trivial_case && x > 0 ? alphas.front() : State(random_state(dim, rng)));
          const Instrument i = semi_trivial_instrument(b, alphas);
          const Observable ia = inst_then_obs(i, a);
          const Instrument ai = obs_then_inst(a, i);
          const Observable ab = obs_seq_product(a, b);
          for (std::size_t x = 0; x < b.size(); ++x)
            for (std::size_t y = 0; y < a.size(); ++y) {
              const Effect& entry = ia.effect(product_label(b.outcomes()[x], a.outcomes()[y]));
              run.check(max_distance(entry.matrix(), prob(alphas[x], a.effects()[y]) * b.effects()[x].matrix()));
            }
          for (std::size_t x = 0; x < a.size(); ++x)
            for (std::size_t y = 0; y < b.size(); ++y) {
              const std::string label = product_label(a.outcomes()[x], b.outcomes()[y]);
              run.check(action_distance(ai.op(label), trivial(ab.effect(label), alphas[y])));
            }
          if (trivial_case) {
            // (A|I)_y = tr(alpha a_y) I for the constant channel Ī = alpha.
            const Observable cond = obs_conditioned_on_inst(a, i);
            for (std::size_t y = 0; y < a.size(); ++y)
              run.check(max_distance(cond.effects()[y].matrix(),
                                     prob(alphas.front(), a.effects()[y]) * ComplexMatrix::identity(dim)));
          }
        }
        {
          const Instrument k = random_kraus_instrument(dim, detail::small_outcome_count(rng), rng);
          const Observable ka = inst_then_obs(k, a);
          const Instrument ak = obs_then_inst(a, k);
          for (std::size_t x = 0; x < k.size(); ++x) {
            const ComplexMatrix& s = k.ops()[x].kraus().front();
            for (std::size_t y = 0; y < a.size(); ++y) {
              run.check(max_distance(ka.effect(product_label(k.outcomes()[x], a.outcomes()[y])).matrix(),
                                     s.adjoint() * a.effects()[y].matrix() * s));
              run.check(action_distance(ak.op(product_label(a.outcomes()[y], k.outcomes()[x])),
                                        kraus_single(s * a.effects()[y].sqrt().matrix())));
            }
          }
        }
      }));

  {
    LawCheck ex10 = make_check(
        "ex-10", LawKind::kIdentity,
        "for the dephasing channel I = sum |psi_i><psi_i| . |psi_i><psi_i| on C^2 and a = b = d/2, "
        "d = |psi_1 + psi_2><psi_1 + psi_2|: a, b are not orthogonal yet I∘a + I∘b = I",
        [](LawRun& run, std::size_t dim) {
          const ComplexMatrix u =
              run.trial_index() == 0 ? ComplexMatrix::identity(dim) : random_unitary(dim, run.rng());
          const Vector psi1 = u.column(0);
          const Vector psi2 = u.column(1);
          const std::vector<Vector> basis{psi1, psi2};
          const Operation dephasing = atomic_operation(basis);
          Vector sum(dim);
          for (std::size_t k = 0; k < dim; ++k) sum[k] = psi1[k] + psi2[k];
          const Effect a(HermitianMatrix(0.5 * ComplexMatrix::outer(sum, sum)));
          const Effect& b = a;
          run.expect(is_channel(dephasing));
          run.expect(!perp(a, b));
          const Effect ja = op_then_effect(dephasing, a);
          const Effect jb = op_then_effect(dephasing, b);
          run.check(max_distance(ja.matrix() + jb.matrix(), ComplexMatrix::identity(dim)), 1e-12);
          run.expect(perp(ja, jb));
          // J = I∘(.) is a morphism: J(I) = I and J is additive on orthogonal pairs.
          run.check(distance(op_then_effect(dephasing, Effect::identity(dim)), Effect::identity(dim)));
          const Effect c(random_effect(dim, run.rng()));
          run.check(max_distance(op_then_effect(dephasing, c).matrix() + op_then_effect(dephasing, complement(c)).matrix(),
                                 ComplexMatrix::identity(dim)));
        });
    ex10.fixed_dims = {2};
    out.push_back(std::move(ex10));
  }

  out.push_back(make_check(
      "lemma-4.3", LawKind::kIdentity,
      "f(I)^ = f(Î), so a coexistence witness for instruments J, K yields one for Ĵ, K̂",
      [](LawRun& run, std::size_t dim) {
        Rng& rng = run.rng();
        const Instrument i = random_instrument(dim, 3 + uniform_index(rng, 2), rng);
        const OutcomeMap f = detail::random_part_map(i.outcomes(), rng);
        const OutcomeMap g = detail::random_part_map(i.outcomes(), rng);
        const Instrument j = inst_part(i, f);
        const Instrument k = inst_part(i, g);
        run.check(observable_distance(measured_observable(j), obs_part(measured_observable(i), f)));
        run.expect(verify_inst_coexistence_witness(j, k, i, f, g));
        run.expect(verify_coexistence_witness(measured_observable(j), measured_observable(k), measured_observable(i), f, g));
      }));

  out.push_back(make_check(
      "lemma-4.4", LawKind::kIdentity,
      "a part of a trivial instrument (alpha, A) is trivial with state alpha and observable f(A); trivial J, K "
      "with one state coexist when Ĵ, K̂ do",
      [](LawRun& run, std::size_t dim) {
        Rng& rng = run.rng();
        const Observable a = random_observable(dim, 3 + uniform_index(rng, 2), rng);
        const State alpha(random_state(dim, rng));
        const Instrument i = trivial_instrument(a, alpha);
        const OutcomeMap f = detail::random_part_map(a.outcomes(), rng);
        const OutcomeMap g = detail::random_part_map(a.outcomes(), rng);
        run.check(instrument_distance(inst_part(i, f), trivial_instrument(obs_part(a, f), alpha)));
        // Coexisting observables B = f(A), C = g(A) lift to coexisting trivial instruments.
        const Observable b = obs_part(a, f);
        const Observable c = obs_part(a, g);
        run.expect(verify_coexistence_witness(b, c, a, f, g));
        run.expect(verify_inst_coexistence_witness(trivial_instrument(b, alpha), trivial_instrument(c, alpha),
                                                   trivial_instrument(a, alpha), f, g));
      }));

  out.push_back(make_check(
      "seq-coexist", LawKind::kIdentity,
      "(B|A) and A are parts of A∘B, so they coexist; (J|I) is a part of I∘J",
      [](LawRun& run, std::size_t dim) {
        Rng& rng = run.rng();
        const Observable a = random_observable(dim, detail::small_outcome_count(rng), rng);
        const Observable b = random_observable(dim, detail::small_outcome_count(rng), rng);
        const Observable ab = obs_seq_product(a, b);
        const OutcomeMap first = first_projection(a.outcomes(), b.outcomes());
        const OutcomeMap second = second_projection(a.outcomes(), b.outcomes());
        run.check(observable_distance(obs_part(ab, second), obs_conditioned(b, a)));
        run.check(observable_distance(obs_part(ab, first), a));
        run.expect(verify_coexistence_witness(obs_conditioned(b, a), a, ab, second, first));
        const Instrument i = random_instrument(dim, detail::small_outcome_count(rng), rng);
        const Instrument j = random_instrument(dim, detail::small_outcome_count(rng), rng);
        const Instrument ij = inst_seq_product(i, j);
        run.check(instrument_distance(inst_part(ij, second_projection(i.outcomes(), j.outcomes())),
                                      inst_conditioned(j, i)));
      }));

  {
    LawCheck c = make_search(
        "cond-inst-coexist",
        "I_x differs from sum_y I_x∘J_y, so I∘J with the first projection does not witness coexistence of (J|I) and I",
        [](Rng& rng, std::size_t dim) {
          return json{{"I", to_json(random_instrument(dim, detail::small_outcome_count(rng), rng))},
                      {"J", to_json(random_instrument(dim, detail::small_outcome_count(rng), rng))}};
        },
        [](const json& w) {
          const Instrument i = instrument_from_json(w.at("I"));
          const Instrument j = instrument_from_json(w.at("J"));
          const Instrument ij = inst_seq_product(i, j);
          // The second projection of I∘J always recovers (J|I).
          const double side = instrument_distance(inst_part(ij, second_projection(i.outcomes(), j.outcomes())),
                                                  inst_conditioned(j, i));
          return Measurement{detail::first_marginal_defect(i, j), side, std::nullopt};
        });
    c.note = "heuristic: only the witness I∘J is ruled out, other witnesses are not searched";
    out.push_back(std::move(c));
  }
}

}  // namespace seqmeas::laws
