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

inline void register_effect_laws(std::vector<LawCheck>& out) {
  out.push_back(make_check(
      "axioms-1", LawKind::kIdentity, "x ⊥ y implies y ⊥ x and x + y = y + x on E(H)",
      [](LawRun& run, std::size_t dim) {
        Rng& rng = run.rng();
        const Effect x(random_effect(dim, rng));
        const Effect y = seq_product(complement(x), Effect(random_effect(dim, rng)));
        run.expect(perp(x, y));
        run.expect(perp(y, x));
        run.check(distance(orthosum(x, y), orthosum(y, x)));
      }));

  out.push_back(make_check(
      "axioms-2", LawKind::kIdentity,
      "y ⊥ z and x ⊥ (y + z) imply x ⊥ y, z ⊥ (x + y) and x + (y + z) = (x + y) + z",
      [](LawRun& run, std::size_t dim) {
        Rng& rng = run.rng();
        const Effect x(random_effect(dim, rng));
        const auto [y, z] = detail::split_below(seq_product(complement(x), Effect(random_effect(dim, rng))), rng);
        run.expect(perp(y, z));
        const Effect yz = orthosum(y, z);
        run.expect(perp(x, yz));
        run.expect(perp(x, y));
        const Effect xy = orthosum(x, y);
        run.expect(perp(z, xy));
        run.check(distance(orthosum(x, yz), orthosum(xy, z)));
      }));

  out.push_back(make_check(
      "axioms-3", LawKind::kIdentity, "x' = I - x is the unique effect with x ⊥ x' and x + x' = I",
      [](LawRun& run, std::size_t dim) {
        Rng& rng = run.rng();
        const Effect x(random_effect(dim, rng));
        const Effect xc = complement(x);
        run.expect(perp(x, xc));
        run.check(max_distance(orthosum(x, xc).matrix(), ComplexMatrix::identity(dim)));
        // Any y with x + y = I equals x'.
        const Effect y(HermitianMatrix::identity(dim) - x.op());
        run.check(distance(y, xc));
        // A different effect does not sum with x to I.
        const Effect other = seq_product(xc, Effect(random_effect(dim, rng)));
        if (distance(other, xc) > detail::kGenericFloor) {
          run.expect(max_distance((x.op() + other.op()).matrix(), ComplexMatrix::identity(dim)) > eq_tol());
        }
      }));

  out.push_back(make_check(
      "axioms-4", LawKind::kIdentity, "x ⊥ I implies x = 0; convex combinations of effects are effects",
      [](LawRun& run, std::size_t dim) {
        Rng& rng = run.rng();
        const Effect x(random_effect(dim, rng));
        run.expect(perp(x, Effect::identity(dim)) == (x.spectrum().max() <= psd_tol()));
        run.expect(perp(Effect::zero(dim), Effect::identity(dim)));
        // Smallest nonzero effect still fails to be orthogonal to I.
        const Effect tiny = scale(Effect::projector(random_unit_vector(dim, rng)), 1e-6);
        run.expect(!perp(tiny, Effect::identity(dim)));
        std::vector<Effect> members;
        std::vector<double> weights;
        for (int k = 0; k < 3; ++k) {
          members.emplace_back(random_effect(dim, rng));
          weights.push_back(uniform01(rng) + 0.1);
        }
        double total = 0.0;
        for (double w : weights) total += w;
        for (double& w : weights) w /= total;
        const Effect mix = convex_combine(members, weights);
        run.check(std::max(0.0, -mix.spectrum().min()) + std::max(0.0, mix.spectrum().max() - 1.0));
      }));

  out.push_back(make_check(
      "thm-1.2i", LawKind::kIff,
      "for projections a_i summing to I: b = sum a_i∘b iff b commutes with every a_i",
      [](LawRun& run, std::size_t dim) {
        Rng& rng = run.rng();
        const std::size_t blocks = 2 + uniform_index(rng, dim - 1);
        // Constructed instance: b = sum a_i c a_i commutes with the partition.
        {
          const std::vector<Effect> a = random_sharp_partition(dim, std::min(blocks, dim), rng);
          const Effect c(random_effect(dim, rng));
          const Effect b(HermitianMatrix(detail::pinch(a, c)));
          double comm = 0.0;
          for (const auto& ai : a) comm = std::max(comm, commutator(b.matrix(), ai.matrix()).max_norm());
          run.check(comm);
          run.check(max_distance(b.matrix(), detail::pinch(a, b)));
        }
        // Generic instance: redraw b until some commutator is large.
        {
          const std::vector<Effect> a = random_sharp_partition(dim, std::min(blocks, dim), rng);
          for (int attempt = 0; attempt < detail::kMaxRedraws; ++attempt) {
            const Effect b(random_effect(dim, rng));
            double comm = 0.0;
            for (const auto& ai : a) comm = std::max(comm, commutator(b.matrix(), ai.matrix()).frobenius());
            if (comm <= detail::kGenericFloor) continue;
            const double violation = (b.matrix() - detail::pinch(a, b)).frobenius();
            run.negative(violation, {{"partition", detail::effects_json(a)}, {"b", to_json(b)}});
            break;
          }
        }
      }));

  out.push_back(make_check(
      "thm-1.2ii", LawKind::kIff,
      "for atomic a = |φ><φ|, b = |ψ><ψ|: P(a∘b) = P(b∘a) iff <φ,ρφ> = <ψ,ρψ> or ab = 0",
      [](LawRun& run, std::size_t dim) {
        Rng& rng = run.rng();
        const auto gap = [](const State& rho, const Effect& a, const Effect& b) {
          return std::abs(prob(rho, seq_product(a, b)) - prob(rho, seq_product(b, a)));
        };
        // Constructed: orthogonal vectors, or a state symmetric under a
        // reflection exchanging φ and ψ.
        {
          const Vector phi = random_unit_vector(dim, rng);
          const State sigma(random_state(dim, rng));
          Vector orth = random_unit_vector(dim, rng);
          const Complex overlap = inner(phi, orth);
          for (std::size_t k = 0; k < dim; ++k) orth[k] -= overlap * phi[k];
          orth = normalized(orth);
          run.check(gap(sigma, Effect::projector(phi), Effect::projector(orth)));

          Vector psi = random_unit_vector(dim, rng);
          const Complex ov = inner(psi, phi);
          const Complex phase = std::abs(ov) > 0 ? ov / std::abs(ov) : Complex(1.0);
          for (auto& v : psi) v *= phase;  // now <psi, phi> is real
          Vector w(dim);
          for (std::size_t k = 0; k < dim; ++k) w[k] = phi[k] - psi[k];
          ComplexMatrix reflection = ComplexMatrix::identity(dim);
          if (norm(w) > 1e-12) reflection = reflection - 2.0 * ComplexMatrix::outer(normalized(w), normalized(w));
          const State rho(HermitianMatrix(0.5 * (sigma.matrix() + reflection * sigma.matrix() * reflection.adjoint())));
          const Effect a = Effect::projector(phi);
          const Effect b = Effect::projector(psi);
          run.check(std::abs(prob(rho, a) - prob(rho, b)));
          run.check(gap(rho, a, b));
        }
        // Generic: overlap and expectation gap both bounded away from zero.
        for (int attempt = 0; attempt < detail::kMaxRedraws; ++attempt) {
          const Vector phi = random_unit_vector(dim, rng);
          const Vector psi = random_unit_vector(dim, rng);
          const State rho(random_pure_state(dim, rng));
          const Effect a = Effect::projector(phi);
          const Effect b = Effect::projector(psi);
          const double overlap = std::norm(inner(phi, psi));
          const double delta = std::abs(prob(rho, a) - prob(rho, b));
          if (overlap <= 0.2 || delta <= 0.2) continue;
          run.negative(gap(rho, a, b), {{"rho", to_json(rho)}, {"a", to_json(a)}, {"b", to_json(b)}});
          break;
        }
      }));

  {
    LawCheck c = make_check(
        "seq-commute", LawKind::kIff, "a∘b = b∘a iff ab = ba",
        [](LawRun& run, std::size_t dim) {
          Rng& rng = run.rng();
          {
            // Commuting pair: functions of one Hermitian matrix.
            const Spectrum s = eig_hermitian(HermitianMatrix(random_hermitian(dim, rng)));
            std::vector<double> d1, d2;
            for (std::size_t k = 0; k < dim; ++k) {
              d1.push_back(uniform01(rng));
              d2.push_back(uniform01(rng));
            }
            Spectrum s1 = s, s2 = s;
            s1.eigenvalues = d1;
            s2.eigenvalues = d2;
            const Effect a(s1.reconstruct());
            const Effect b(s2.reconstruct());
            run.check(commutator(a.matrix(), b.matrix()).max_norm());
            run.check(distance(seq_product(a, b), seq_product(b, a)));
          }
          for (int attempt = 0; attempt < detail::kMaxRedraws; ++attempt) {
            const Effect a(random_effect(dim, rng));
            const Effect b(random_effect(dim, rng));
            if (commutator(a.matrix(), b.matrix()).frobenius() <= detail::kGenericFloor) continue;
            run.negative((seq_product(a, b).matrix() - seq_product(b, a).matrix()).frobenius(),
                         {{"a", to_json(a)}, {"b", to_json(b)}});
            break;
          }
        });
    c.gap = 1e-3;
    out.push_back(std::move(c));
  }

  out.push_back(make_search(
      "eq-2.1", "first Bayes rule P(b) = sum_i P(a_i) P(b|a_i) fails for a projection partition",
      [](Rng& rng, std::size_t dim) {
        const std::vector<Effect> a = random_sharp_partition(dim, 2, rng);
        return json{{"rho", to_json(State(random_state(dim, rng)))},
                    {"partition", detail::effects_json(a)},
                    {"b", to_json(Effect(random_effect(dim, rng)))}};
      },
      [](const json& w) {
        const State rho = state_from_json(w.at("rho"));
        const Effect b = effect_from_json(w.at("b"));
        double total = 0.0;
        double direct = 0.0;
        for (const auto& aj : w.at("partition")) {
          const Effect a = effect_from_json(aj);
          const double pa = prob(rho, a);
          if (pa > kCondFloor) total += pa * cond_prob(rho, b, a);
          direct += prob(rho, seq_product(a, b));
        }
        // sum_i P(a_i)P(b|a_i) = tr(rho sum_i a_i∘b)
        return Measurement{std::abs(prob(rho, b) - total), std::abs(total - direct), detail::kSideTol};
      }));

  out.push_back(make_search(
      "eq-2.2", "second Bayes rule P(b)P(a|b) = P(a)P(b|a) fails, i.e. P(a∘b) != P(b∘a)",
      [](Rng& rng, std::size_t dim) {
        return json{{"rho", to_json(State(random_state(dim, rng)))},
                    {"a", to_json(Effect(random_effect(dim, rng)))},
                    {"b", to_json(Effect(random_effect(dim, rng)))}};
      },
      [](const json& w) {
        const State rho = state_from_json(w.at("rho"));
        const Effect a = effect_from_json(w.at("a"));
        const Effect b = effect_from_json(w.at("b"));
        const double lhs = prob(rho, b) * cond_prob(rho, a, b);
        const double rhs = prob(rho, a) * cond_prob(rho, b, a);
        const double side = std::max(std::abs(lhs - prob(rho, seq_product(b, a))),
                                     std::abs(rhs - prob(rho, seq_product(a, b))));
        return Measurement{std::abs(lhs - rhs), side, detail::kSideTol};
      }));
}

}  // namespace seqmeas::laws
