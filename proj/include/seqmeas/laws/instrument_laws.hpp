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

inline Observable random_atomic_observable(std::size_t dim, Rng& rng) {
  const ComplexMatrix u = random_unitary(dim, rng);
  std::vector<Effect> effects;
  for (std::size_t k = 0; k < dim; ++k) effects.push_back(Effect::projector(u.column(k)));
  return Observable(seqmeas::detail::default_labels(dim), std::move(effects));
}

}  // namespace detail

inline void register_instrument_laws(std::vector<LawCheck>& out) {
  out.push_back(make_check(
      "thm-3.1i", LawKind::kIdentity, "bar(I∘J) = bar((J|I)) = bar(I)∘bar(J)",
      [](LawRun& run, std::size_t dim) {
        Rng& rng = run.rng();
        const Instrument i = random_instrument(dim, detail::small_outcome_count(rng), rng);
        const Instrument j = random_instrument(dim, detail::small_outcome_count(rng), rng);
        const Operation channel = compose(bar(i), bar(j));
        run.check(action_distance(bar(inst_seq_product(i, j)), channel));
        run.check(action_distance(bar(inst_conditioned(j, i)), channel));
        run.expect(is_channel(channel));
      }));

  out.push_back(make_check(
      "thm-3.1ii", LawKind::kIdentity, "(L^A∘I)^ = A∘Î",
      [](LawRun& run, std::size_t dim) {
        Rng& rng = run.rng();
        const Observable a = random_observable(dim, detail::small_outcome_count(rng), rng);
        const Instrument i = random_instrument(dim, detail::small_outcome_count(rng), rng);
        run.check(observable_distance(measured_observable(inst_seq_product(luders_instrument(a), i)),
                                      obs_seq_product(a, measured_observable(i))));
        run.check(observable_distance(measured_observable(luders_instrument(a)), a));
      }));

  out.push_back(make_check(
      "thm-3.1iii", LawKind::kIdentity, "(L^A∘L^B)^ = A∘B",
      [](LawRun& run, std::size_t dim) {
        Rng& rng = run.rng();
        const Observable a = random_observable(dim, detail::small_outcome_count(rng), rng);
        const Observable b = random_observable(dim, detail::small_outcome_count(rng), rng);
        run.check(observable_distance(measured_observable(inst_seq_product(luders_instrument(a), luders_instrument(b))),
                                      obs_seq_product(a, b)));
      }));

  out.push_back(make_search(
      "ex-6", "for trivial I_x = tr(rho b_x)alpha: (I∘L^A)^_(x,y) = tr(alpha a_y)b_x differs from b_x∘a_y",
      [](Rng& rng, std::size_t dim) {
        return json{{"alpha", to_json(State(random_state(dim, rng)))},
                    {"B", to_json(random_observable(dim, detail::small_outcome_count(rng), rng))},
                    {"A", to_json(random_observable(dim, detail::small_outcome_count(rng), rng))}};
      },
      [](const json& w) {
        const State alpha = state_from_json(w.at("alpha"));
        const Observable b = observable_from_json(w.at("B"));
        const Observable a = observable_from_json(w.at("A"));
        const Instrument i = trivial_instrument(b, alpha);
        const Observable lhs = measured_observable(inst_seq_product(i, luders_instrument(a)));
        double side = 0.0;
        for (std::size_t x = 0; x < b.size(); ++x)
          for (std::size_t y = 0; y < a.size(); ++y) {
            const Effect& entry = lhs.effect(product_label(b.outcomes()[x], a.outcomes()[y]));
            side = std::max(side, max_distance(entry.matrix(), prob(alpha, a.effects()[y]) * b.effects()[x].matrix()));
          }
        return Measurement{observable_distance(lhs, obs_seq_product(measured_observable(i), a)), side,
                           detail::kSideTol};
      }));

  out.push_back(make_search(
      "ex-7",
      "for trivial I_x = tr(rho a_x)alpha, J_y = tr(rho b_y)beta with atomic a_x = |φ><φ|, b_y = |ψ><ψ|: "
      "(I∘J)^_(x,y) = <ψ,alpha ψ>a_x differs from a_x∘b_y = |<φ,ψ>|^2 a_x",
      [](Rng& rng, std::size_t dim) {
        return json{{"alpha", to_json(State(random_state(dim, rng)))},
                    {"beta", to_json(State(random_state(dim, rng)))},
                    {"A", to_json(detail::random_atomic_observable(dim, rng))},
                    {"B", to_json(detail::random_atomic_observable(dim, rng))}};
      },
      [](const json& w) {
        const State alpha = state_from_json(w.at("alpha"));
        const State beta = state_from_json(w.at("beta"));
        const Observable a = observable_from_json(w.at("A"));
        const Observable b = observable_from_json(w.at("B"));
        const Observable lhs =
            measured_observable(inst_seq_product(trivial_instrument(a, alpha), trivial_instrument(b, beta)));
        const Observable rhs = obs_seq_product(a, b);
        double violation = 0.0;
        double side = 0.0;
        for (std::size_t x = 0; x < a.size(); ++x)
          for (std::size_t y = 0; y < b.size(); ++y) {
            const std::string label = product_label(a.outcomes()[x], b.outcomes()[y]);
            const double gap = spectral_norm(HermitianMatrix(lhs.effect(label).matrix() - rhs.effect(label).matrix()));
            // Both sides are multiples of a_x, so the gap is the scalar difference.
            const double overlap = real_trace_of_product(a.effects()[x].op(), b.effects()[y].op());
            side = std::max(side, std::abs(gap - std::abs(prob(alpha, b.effects()[y]) - overlap)));
            violation = std::max(violation, gap);
          }
        return Measurement{violation, side, detail::kSideTol};
      }));

  out.push_back(make_search(
      "ex-8", "for Kraus instruments I_x = A_x rho A_x^*, J_y = B_y rho B_y^*: (I∘J)^_(x,y) = A_x^* B_y^* B_y A_x "
              "differs from (A_x^* A_x)∘(B_y^* B_y)",
      [](Rng& rng, std::size_t dim) {
        return json{{"I", to_json(random_kraus_instrument(dim, detail::small_outcome_count(rng), rng))},
                    {"J", to_json(random_kraus_instrument(dim, detail::small_outcome_count(rng), rng))}};
      },
      [](const json& w) {
        const Instrument i = instrument_from_json(w.at("I"));
        const Instrument j = instrument_from_json(w.at("J"));
        const Observable lhs = measured_observable(inst_seq_product(i, j));
        double side = 0.0;
        for (std::size_t x = 0; x < i.size(); ++x)
          for (std::size_t y = 0; y < j.size(); ++y) {
            const ComplexMatrix ax = i.ops()[x].kraus().front();
            const ComplexMatrix by = j.ops()[y].kraus().front();
            const ComplexMatrix direct = ax.adjoint() * by.adjoint() * by * ax;
            side = std::max(side, max_distance(lhs.effect(product_label(i.outcomes()[x], j.outcomes()[y])).matrix(), direct));
          }
        return Measurement{observable_distance(lhs, obs_seq_product(measured_observable(i), measured_observable(j))),
                           side, detail::kSideTol};
      }));

  out.push_back(make_check(
      "lemma-3.2", LawKind::kIdentity,
      "semi-trivial I (alpha_x, {a_x}) and J (beta_y, {b_y}): I∘J is semi-trivial with states beta_y and effects "
      "tr(alpha_x b_y)a_x, and (J|I) with states beta_y and effects sum_x tr(alpha_x b_y)a_x",
      [](LawRun& run, std::size_t dim) {
        Rng& rng = run.rng();
        const Observable a = random_observable(dim, detail::small_outcome_count(rng), rng);
        const Observable b = random_observable(dim, detail::small_outcome_count(rng), rng);
        const bool trivial_case = run.trial_index() % 2 == 1;
        std::vector<State> alphas;
        std::vector<State> betas;
        for (std::size_t x = 0; x < a.size(); ++x)
          alphas.push_back(trivial_case && x > 0 ? alphas.front() : State(random_state(dim, rng)));
        for (std::size_t y = 0; y < b.size(); ++y)
          betas.push_back(trivial_case && y > 0 ? betas.front() : State(random_state(dim, rng)));
        const Instrument i = semi_trivial_instrument(a, alphas);
        const Instrument j = semi_trivial_instrument(b, betas);
        const Instrument product = inst_seq_product(i, j);
        const Instrument conditioned = inst_conditioned(j, i);
        for (std::size_t y = 0; y < b.size(); ++y) {
          ComplexMatrix marginal(dim);
          for (std::size_t x = 0; x < a.size(); ++x) {
            const double w = prob(alphas[x], b.effects()[y]);
            marginal += w * a.effects()[x].matrix();
            const Operation expected = trivial(scale(a.effects()[x], w), betas[y]);
            run.check(action_distance(product.op(product_label(a.outcomes()[x], b.outcomes()[y])), expected));
          }
          run.check(action_distance(conditioned.op(b.outcomes()[y]), trivial(Effect(HermitianMatrix(marginal)), betas[y])));
          if (trivial_case) {
            // The conditioned effect collapses to tr(alpha b_y) I.
            run.check(max_distance(marginal, prob(alphas.front(), b.effects()[y]) * ComplexMatrix::identity(dim)));
          }
        }
      }));

  out.push_back(make_check(
      "lemma-3.3", LawKind::kIdentity, "(L^B|L^A)^ = (B|A)",
      [](LawRun& run, std::size_t dim) {
        Rng& rng = run.rng();
        const Observable a = random_observable(dim, detail::small_outcome_count(rng), rng);
        const Observable b = random_observable(dim, detail::small_outcome_count(rng), rng);
        run.check(observable_distance(measured_observable(inst_conditioned(luders_instrument(b), luders_instrument(a))),
                                      obs_conditioned(b, a)));
      }));

  out.push_back(make_search(
      "ex-9",
      "for trivial I with one outcome and state alpha and trivial J (beta, {b_y}): (J|I)^_y = tr(alpha b_y)I "
      "differs from (Ĵ|Î)_y = b_y",
      [](Rng& rng, std::size_t dim) {
        return json{{"alpha", to_json(State(random_state(dim, rng)))},
                    {"beta", to_json(State(random_state(dim, rng)))},
                    {"B", to_json(random_observable(dim, detail::small_outcome_count(rng), rng))}};
      },
      [](const json& w) {
        const State alpha = state_from_json(w.at("alpha"));
        const State beta = state_from_json(w.at("beta"));
        const Observable b = observable_from_json(w.at("B"));
        const Instrument i = trivial_instrument(Observable::trivial(alpha.dim()), alpha);
        const Instrument j = trivial_instrument(b, beta);
        const Observable lhs = measured_observable(inst_conditioned(j, i));
        double side = 0.0;
        for (std::size_t y = 0; y < b.size(); ++y)
          side = std::max(side, max_distance(lhs.effects()[y].matrix(),
                                             prob(alpha, b.effects()[y]) * ComplexMatrix::identity(alpha.dim())));
        return Measurement{
            observable_distance(lhs, obs_conditioned(measured_observable(j), measured_observable(i))), side,
            detail::kSideTol};
      }));

  out.push_back(make_search(
      "bayes-obs", "P(b_y) = sum_x P(a_x)P(b_y|a_x) fails for observables, while P[(B|A)_y] equals the sum",
      [](Rng& rng, std::size_t dim) {
        return json{{"rho", to_json(State(random_state(dim, rng)))},
                    {"A", to_json(random_observable(dim, detail::small_outcome_count(rng), rng))},
                    {"B", to_json(random_observable(dim, detail::small_outcome_count(rng), rng))}};
      },
      [](const json& w) {
        const State rho = state_from_json(w.at("rho"));
        const Observable a = observable_from_json(w.at("A"));
        const Observable b = observable_from_json(w.at("B"));
        const Observable conditioned = obs_conditioned(b, a);
        double violation = 0.0;
        double side = 0.0;
        for (std::size_t y = 0; y < b.size(); ++y) {
          double rule = 0.0;
          for (const auto& ax : a.effects())
            if (prob(rho, ax) > kCondFloor) rule += prob(rho, ax) * cond_prob(rho, b.effects()[y], ax);
          violation = std::max(violation, std::abs(prob(rho, b.effects()[y]) - rule));
          side = std::max(side, std::abs(prob(rho, conditioned.effects()[y]) - rule));
        }
        return Measurement{violation, side, detail::kSideTol};
      }));

  out.push_back(make_check(
      "cond-prob-measure", LawKind::kIdentity,
      "P[(J|I)_y] = sum_x P(I_x)P(J_y|I_x), and y -> P(J_y|I_x), y -> P(b_y|a_x) are probability measures",
      [](LawRun& run, std::size_t dim) {
        Rng& rng = run.rng();
        const Instrument i = random_instrument(dim, detail::small_outcome_count(rng), rng);
        const Instrument j = random_instrument(dim, detail::small_outcome_count(rng), rng);
        const State rho(random_state(dim, rng));
        const Instrument conditioned = inst_conditioned(j, i);
        for (std::size_t y = 0; y < j.size(); ++y) {
          double rule = 0.0;
          for (const auto& ix : i.ops())
            if (op_prob(rho, ix) > kCondFloor) rule += op_prob(rho, ix) * op_cond_prob(rho, j.ops()[y], ix);
          run.check(std::abs(op_prob(rho, conditioned.ops()[y]) - rule), detail::kSideTol);
        }
        for (const auto& ix : i.ops()) {
          if (op_prob(rho, ix) <= kCondFloor) continue;
          double total = 0.0;
          for (const auto& jy : j.ops()) total += op_cond_prob(rho, jy, ix);
          run.check(std::abs(total - 1.0), detail::kSideTol);
        }
        const Observable a = measured_observable(i);
        const Observable b = measured_observable(j);
        for (const auto& ax : a.effects()) {
          if (prob(rho, ax) <= kCondFloor) continue;
          double total = 0.0;
          for (const auto& by : b.effects()) total += cond_prob(rho, by, ax);
          run.check(std::abs(total - 1.0), detail::kSideTol);
        }
      }));
}

}  // namespace seqmeas::laws
