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

#include "seqmeas/operations.hpp"

#include "gtest/gtest.h"
#include "seqmeas/random.hpp"
#include "seqmeas/sampling.hpp"

using namespace seqmeas;

namespace {

const Effect kP = Effect(HermitianMatrix::diagonal({1.0, 0.0}));
const Effect kQ = Effect(HermitianMatrix::diagonal({0.0, 1.0}));
const ComplexMatrix kPlusMatrix{{0.5, 0.5}, {0.5, 0.5}};

Operation dephasing() {
  const std::vector<Effect> p{kP, kQ};
  return sharp_operation(p);
}

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "expected an Error";
  return ErrorKind::kInvalidArgument;
}

Operation sample_operation(std::size_t dim, Rng& rng) { return random_operation(dim, rng); }

// sum_i tr(rho a_i) alpha_i
ComplexMatrix direct_semi_trivial(const std::vector<EffectStatePair>& pairs, const State& rho) {
  ComplexMatrix out(rho.dim());
  for (const auto& [a, alpha] : pairs) out += prob(rho, a) * alpha.matrix();
  return out;
}

}  // namespace

TEST(Operation, rejects_bad_kraus_lists) {
  EXPECT_THROW(Operation(std::vector<ComplexMatrix>{}), Error);
  EXPECT_EQ(kind_of([] { Operation({ComplexMatrix::identity(2), ComplexMatrix::identity(3)}); }),
            ErrorKind::kDimension);
  EXPECT_EQ(kind_of([] { Operation({ComplexMatrix::identity(2), ComplexMatrix::identity(2)}); }),
            ErrorKind::kNotSubunital);
  EXPECT_EQ(kind_of([] { kraus_single(1.1 * ComplexMatrix::identity(2)); }), ErrorKind::kNotSubunital);
}

TEST(Apply, examples) {
  Rng rng(1);
  const State rho(random_state(3, rng));
  EXPECT_LE(max_distance(apply(Operation::identity(3), rho).matrix(), rho.matrix()), 1e-15);
  EXPECT_LE(max_distance(apply(luders(kP), State::maximally_mixed(2)).matrix(), ComplexMatrix::diagonal({0.5, 0.0})),
            1e-15);
  EXPECT_LE(max_distance(apply(dephasing(), State(kPlusMatrix)).matrix(), ComplexMatrix::diagonal({0.5, 0.5})),
            1e-15);
  EXPECT_THROW(apply(Operation::identity(2), rho), Error);
}

TEST(Apply, subnormalized_output_property) {
  Rng rng(2);
  for (int t = 0; t < 50; ++t) {
    const std::size_t dim = 2 + t % 4;
    const Operation op = sample_operation(dim, rng);
    const State rho(random_state(dim, rng));
    const HermitianMatrix out = apply(op, rho);
    EXPECT_GE(min_eigenvalue(out), -1e-12);
    EXPECT_LE(out.trace(), 1.0 + 1e-10);
    EXPECT_NEAR(real_trace_of_product(rho.op(), hat(op).op()), out.trace(), 1e-10);
  }
}

TEST(Hat, examples) {
  Rng rng(3);
  EXPECT_LE(max_distance(hat(dephasing()).matrix(), ComplexMatrix::identity(2)), 1e-15);
  const Effect a(random_effect(3, rng));
  EXPECT_LE(distance(hat(luders(a)), a), 1e-10);
  const State alpha(random_state(3, rng));
  EXPECT_LE(distance(hat(trivial(a, alpha)), a), 1e-10);
}

TEST(Hat, surjective_on_effects_property) {
  Rng rng(4);
  for (int t = 0; t < 50; ++t) {
    const Effect a(random_effect(2 + t % 7, rng));
    EXPECT_LE(distance(hat(luders(a)), a), 1e-10);
  }
}

TEST(Hat, additive_homogeneous_and_monotone_property) {
  Rng rng(5);
  for (int t = 0; t < 30; ++t) {
    const std::size_t dim = 2 + t % 3;
    const Operation i = sample_operation(dim, rng);
    const Operation half = scale(i, 0.5);
    EXPECT_LE(max_distance(hat(half).matrix(), 0.5 * hat(i).matrix()), 1e-12);
    const Operation j = scale(sample_operation(dim, rng), 0.5);
    const Operation sum = add(half, j);
    EXPECT_LE(max_distance(hat(sum).matrix(), hat(half).matrix() + hat(j).matrix()), 1e-12);
    EXPECT_TRUE(op_leq(half, sum));
    EXPECT_TRUE(loewner_leq(hat(half).op(), hat(sum).op()));
  }
}

TEST(IsChannel, examples) {
  EXPECT_TRUE(is_channel(Operation::identity(2)));
  EXPECT_FALSE(is_channel(luders(Effect(0.5 * HermitianMatrix::identity(2)))));
  Rng rng(6);
  const Effect a(random_effect(2, rng));
  std::vector<ComplexMatrix> joint{a.sqrt().matrix(), complement(a).sqrt().matrix()};
  EXPECT_TRUE(is_channel(Operation(joint)));
}

TEST(Compose, examples) {
  Rng rng(7);
  const Operation op = sample_operation(3, rng);
  EXPECT_LE(action_distance(compose(op, Operation::identity(3)), op), 1e-15);

  const ComplexMatrix a = 0.6 * random_unitary(2, rng);
  const ComplexMatrix b = 0.7 * random_unitary(2, rng);
  const Operation ab = compose(kraus_single(a), kraus_single(b));
  ASSERT_EQ(ab.kraus().size(), 1u);
  EXPECT_LE(max_distance(ab.kraus()[0], b * a), 1e-15);

  const Effect e(random_effect(2, rng));
  const State alpha(random_state(2, rng));
  const State beta(random_state(2, rng));
  const Operation chained = compose(trivial(e, alpha), trivial(e, beta));
  const Effect expected_effect = scale(e, prob(alpha, e));
  EXPECT_LE(action_distance(chained, trivial(expected_effect, beta)), 1e-9);
}

TEST(Compose, is_sequential_application_property) {
  Rng rng(8);
  for (int t = 0; t < 30; ++t) {
    const std::size_t dim = 2 + t % 3;
    const Operation i = sample_operation(dim, rng);
    const Operation j = sample_operation(dim, rng);
    const State rho(random_state(dim, rng));
    EXPECT_LE(max_distance(apply_map(compose(i, j), rho.matrix()), apply_map(j, apply_map(i, rho.matrix()))),
              1e-10);
  }
}

TEST(AddScale, examples) {
  Rng rng(9);
  const Operation op = sample_operation(2, rng);
  EXPECT_LE(action_distance(add(op, Operation::zero(2)), op), 1e-15);
  EXPECT_LE(action_distance(scale(op, 0.0), Operation::zero(2)), 0.0);
  const Effect a(random_effect(2, rng));
  EXPECT_TRUE(is_channel(add(luders(a), luders(complement(a)))));
  EXPECT_EQ(kind_of([] { add(Operation::identity(2), Operation::identity(2)); }), ErrorKind::kNotPerp);
  EXPECT_EQ(kind_of([&] { scale(op, 1.5); }), ErrorKind::kWeight);
}

TEST(Equiv, examples) {
  Rng rng(10);
  const Operation op = sample_operation(2, rng);
  EXPECT_TRUE(equiv(op, op));
  const Effect a(random_effect(2, rng));
  const Effect b(random_effect(2, rng));
  EXPECT_TRUE(equiv(luders(a), trivial(a, State(random_state(2, rng)))));
  EXPECT_FALSE(equiv(luders(a), luders(b)));
  // Equivalent but with different action.
  EXPECT_FALSE(same_action(luders(a), trivial(a, State::maximally_mixed(2))));
}

TEST(Luders, examples) {
  EXPECT_LE(action_distance(luders(Effect::identity(3)), Operation::identity(3)), 1e-15);
  EXPECT_LE(max_distance(apply(luders(kP), State(kPlusMatrix)).matrix(), ComplexMatrix::diagonal({0.5, 0.0})),
            1e-15);
  Rng rng(11);
  const ComplexMatrix a = 0.9 * random_unitary(3, rng) * ComplexMatrix::diagonal({1.0, 0.5, 0.2});
  EXPECT_LE(max_distance(hat(kraus_single(a)).matrix(), a.adjoint() * a), 1e-15);
}

TEST(SemiTrivial, single_pair_example) {
  const Operation op = semi_trivial({{kP, State(kP.op())}});
  ASSERT_EQ(op.kraus().size(), 2u);  // k runs over the 2-dim eigenbasis; one term vanishes
  Rng rng(12);
  const State rho(random_state(2, rng));
  const ComplexMatrix expected = ComplexMatrix::diagonal({std::real(rho.matrix()(0, 0)), 0.0});
  EXPECT_LE(max_distance(apply(op, rho).matrix(), expected), 1e-14);
  double nonzero = 0;
  for (const auto& k : op.kraus()) nonzero += k.max_norm() > 1e-14 ? 1 : 0;
  EXPECT_EQ(nonzero, 1);
}

TEST(SemiTrivial, onb_projectors_give_atomic_operation) {
  Rng rng(13);
  const ComplexMatrix u = random_unitary(3, rng);
  std::vector<EffectStatePair> pairs;
  std::vector<Vector> columns;
  for (std::size_t k = 0; k < 3; ++k) {
    columns.push_back(u.column(k));
    pairs.push_back({Effect::projector(columns.back()), State::pure(columns.back())});
  }
  EXPECT_LE(action_distance(semi_trivial(pairs), atomic_operation(columns)), 1e-9);
}

TEST(SemiTrivial, matches_direct_formula_property) {
  Rng rng(14);
  for (int t = 0; t < 30; ++t) {
    const std::size_t dim = 2 + t % 4;
    const std::size_t n = 1 + uniform_index(rng, 3);
    // a_i = w∘e_i with e_i a random partition of I keeps sum a_i <= I.
    std::vector<EffectStatePair> pairs;
    ComplexMatrix remaining = ComplexMatrix::identity(dim);
    const Effect w(random_effect(dim, rng));
    ComplexMatrix sum(dim);
    for (std::size_t i = 0; i < n; ++i) {
      const Effect e = seq_product(Effect(remaining), Effect(random_effect(dim, rng)));
      remaining = remaining - e.matrix();
      const Effect a = seq_product(w, e);
      sum += a.matrix();
      pairs.push_back({a, State(random_state(dim, rng))});
    }
    const Operation op = semi_trivial(pairs);
    EXPECT_LE(max_distance(hat(op).matrix(), sum), 1e-9);
    for (int s = 0; s < 5; ++s) {
      const State rho(random_state(dim, rng));
      EXPECT_LE(max_distance(apply(op, rho).matrix(), direct_semi_trivial(pairs, rho)), 1e-9);
    }
  }
}

TEST(SemiTrivial, rejects_superunital_effects) {
  EXPECT_EQ(kind_of([] { semi_trivial({{kP, State::maximally_mixed(2)}, {kP, State::maximally_mixed(2)}}); }),
            ErrorKind::kNotSubunital);
}

TEST(Trivial, examples) {
  Rng rng(15);
  const State alpha(random_state(2, rng));
  const Operation constant = trivial(Effect::identity(2), alpha);
  const State rho(random_state(2, rng));
  EXPECT_LE(max_distance(apply(constant, rho).matrix(), alpha.matrix()), 1e-12);
  const Effect a(random_effect(2, rng));
  EXPECT_LE(distance(hat(trivial(a, alpha)), a), 1e-10);
  EXPECT_LE(max_distance(apply(trivial(kP, State::maximally_mixed(2)), State(HermitianMatrix::diagonal({0.3, 0.7})))
                             .matrix(),
                         ComplexMatrix::diagonal({0.15, 0.15})),
            1e-14);
}

TEST(Sharp, examples) {
  const std::vector<Effect> one{Effect::identity(2)};
  EXPECT_LE(action_distance(sharp_operation(one), Operation::identity(2)), 1e-15);
  EXPECT_TRUE(is_channel(dephasing()));
  const std::vector<Effect> half{kP};
  EXPECT_EQ(hat(sharp_operation(half)).matrix(), kP.matrix());
  EXPECT_FALSE(is_channel(sharp_operation(half)));
  const std::vector<Effect> not_projection{Effect(0.5 * HermitianMatrix::identity(2))};
  EXPECT_EQ(kind_of([&] { sharp_operation(not_projection); }), ErrorKind::kNotProjection);
  const std::vector<Effect> overlapping{kP, Effect(kPlusMatrix)};
  EXPECT_EQ(kind_of([&] { sharp_operation(overlapping); }), ErrorKind::kNotOrthogonal);
  const std::vector<Vector> basis{basis_vector(2, 0), basis_vector(2, 1)};
  EXPECT_LE(action_distance(atomic_operation(basis), dephasing()), 1e-15);
}

TEST(Complement, examples) {
  Rng rng(16);
  EXPECT_LE(action_distance(complement_luders(dephasing()), Operation::zero(2)), 1e-10);
  const Effect a(random_effect(2, rng));
  EXPECT_LE(action_distance(complement_luders(luders(a)), luders(complement(a))), 1e-9);
  const Operation t = trivial(a, State(random_state(2, rng)));
  EXPECT_LE(action_distance(complement_luders(t), luders(complement(a))), 1e-9);
  EXPECT_TRUE(is_channel(add(t, complement_luders(t))));
}

TEST(IsComplement, examples) {
  Rng rng(17);
  const Operation i = sample_operation(3, rng);
  EXPECT_TRUE(is_complement(complement_luders(i), i));
  const Effect a(random_effect(2, rng));
  const State alpha(random_state(2, rng));
  EXPECT_TRUE(is_complement(trivial(complement(a), alpha), trivial(a, alpha)));
  const Operation half = luders(Effect(0.5 * HermitianMatrix::identity(2)));
  EXPECT_TRUE(is_complement(half, half));
  EXPECT_FALSE(is_complement(luders(a), luders(a)) && distance(a, complement(a)) > 1e-6);
}

TEST(EffectThenOp, examples) {
  Rng rng(18);
  const Operation i = sample_operation(2, rng);
  EXPECT_LE(action_distance(effect_then_op(Effect::identity(2), i), i), 1e-12);
  const Effect a(random_effect(2, rng));
  EXPECT_LE(action_distance(effect_then_op(a, Operation::identity(2)), luders(a)), 1e-12);
  const Effect b(random_effect(2, rng));
  const State alpha(random_state(2, rng));
  EXPECT_LE(action_distance(effect_then_op(a, trivial(b, alpha)), trivial(seq_product(a, b), alpha)), 1e-9);
}

TEST(EffectThenOp, hat_is_sequential_product_property) {
  Rng rng(19);
  for (int t = 0; t < 30; ++t) {
    const std::size_t dim = 2 + t % 3;
    const Effect a(random_effect(dim, rng));
    const Operation i = sample_operation(dim, rng);
    EXPECT_LE(distance(hat(effect_then_op(a, i)), seq_product(a, hat(i))), 1e-9);
  }
}

TEST(OpThenEffect, examples) {
  Rng rng(20);
  const Effect a(random_effect(2, rng));
  EXPECT_LE(distance(op_then_effect(Operation::identity(2), a), a), 1e-15);
  const Effect b(random_effect(2, rng));
  const State alpha(random_state(2, rng));
  EXPECT_LE(distance(op_then_effect(trivial(b, alpha), a), scale(b, prob(alpha, a))), 1e-9);
  const Effect d_half(ComplexMatrix{{0.5, 0.5}, {0.5, 0.5}});
  const Effect image = op_then_effect(dephasing(), d_half);
  EXPECT_LE(max_distance(image.matrix() + image.matrix(), ComplexMatrix::identity(2)), 1e-15);
  EXPECT_FALSE(perp(d_half, d_half));
}

TEST(OpThenEffect, duality_and_kraus_independence_property) {
  Rng rng(21);
  for (int t = 0; t < 30; ++t) {
    const std::size_t dim = 2 + t % 3;
    const Operation i = sample_operation(dim, rng);
    const Effect a(random_effect(dim, rng));
    const State rho(random_state(dim, rng));
    const Effect ia = op_then_effect(i, a);
    EXPECT_NEAR(prob(rho, ia), real_trace_of_product(apply(i, rho), a.op()), 1e-10);

    const std::size_t m = i.kraus().size() + 2;
    const Operation remixed = kraus_remix(i, random_unitary(m, rng));
    EXPECT_EQ(remixed.kraus().size(), m);
    EXPECT_LE(distance(hat(remixed), hat(i)), 1e-9);
    EXPECT_LE(distance(op_then_effect(remixed, a), ia), 1e-9);
    EXPECT_LE(action_distance(remixed, i), 1e-9);
  }
}

TEST(OpOrder, examples) {
  Rng rng(22);
  const Operation i = sample_operation(2, rng);
  EXPECT_TRUE(op_leq(Operation::zero(2), i));
  EXPECT_TRUE(op_leq(scale(i, 0.3), i));
  EXPECT_FALSE(op_leq(i, scale(i, 0.3)) && hat(i).spectrum().max() > 1e-3);
  // Same hat, incomparable action.
  const Effect half(0.5 * HermitianMatrix::identity(2));
  EXPECT_FALSE(op_leq(trivial(half, State::pure(basis_vector(2, 0))), luders(half)));
}

TEST(OpCondProb, matches_trace_ratio) {
  Rng rng(23);
  const State rho(random_state(2, rng));
  const Effect a(random_effect(2, rng));
  const Effect b(random_effect(2, rng));
  EXPECT_NEAR(op_cond_prob(rho, luders(b), luders(a)), cond_prob(rho, b, a), 1e-10);
  EXPECT_EQ(kind_of([&] { op_cond_prob(rho, luders(b), Operation::zero(2)); }), ErrorKind::kConditioningOnNull);
}
