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

#include "seqmeas/random.hpp"

#include "gtest/gtest.h"

using namespace seqmeas;

namespace {

const HermitianMatrix kPlus = HermitianMatrix(ComplexMatrix{{0.5, 0.5}, {0.5, 0.5}});

double gram_deviation(const Spectrum& s) {
  double d = 0.0;
  for (std::size_t j = 0; j < s.dim(); ++j)
    for (std::size_t k = 0; k < s.dim(); ++k) {
      const Complex ip = inner(s.eigenvectors[j], s.eigenvectors[k]);
      d = std::max(d, std::abs(ip - Complex(j == k ? 1.0 : 0.0)));
    }
  return d;
}

double residual(const HermitianMatrix& m, const Spectrum& s) {
  double d = 0.0;
  for (std::size_t k = 0; k < s.dim(); ++k) {
    const Vector mv = m.matrix() * s.eigenvectors[k];
    for (std::size_t i = 0; i < mv.size(); ++i) {
      d = std::max(d, std::abs(mv[i] - s.eigenvalues[k] * s.eigenvectors[k][i]));
    }
  }
  return d;
}

}  // namespace

TEST(EigHermitian, diagonal_input) {
  const Spectrum s = eig_hermitian(HermitianMatrix::diagonal({0.0, 1.0}));
  ASSERT_EQ(s.eigenvalues.size(), 2u);
  EXPECT_DOUBLE_EQ(s.eigenvalues[0], 0.0);
  EXPECT_DOUBLE_EQ(s.eigenvalues[1], 1.0);
  EXPECT_NEAR(std::abs(s.eigenvectors[0][0]), 1.0, 1e-15);
  EXPECT_NEAR(std::abs(s.eigenvectors[1][1]), 1.0, 1e-15);
}

TEST(EigHermitian, rank_one_projection) {
  // Characteristic polynomial lambda (lambda - 1).
  const Spectrum s = eig_hermitian(kPlus);
  EXPECT_NEAR(s.eigenvalues[0], 0.0, 1e-14);
  EXPECT_NEAR(s.eigenvalues[1], 1.0, 1e-14);
}

TEST(EigHermitian, complex_entries) {
  // [[2, i], [-i, 2]] has eigenvalues 1 and 3.
  const HermitianMatrix m(ComplexMatrix{{2.0, Complex(0, 1)}, {Complex(0, -1), 2.0}});
  const Spectrum s = eig_hermitian(m);
  EXPECT_NEAR(s.eigenvalues[0], 1.0, 1e-13);
  EXPECT_NEAR(s.eigenvalues[1], 3.0, 1e-13);
  EXPECT_LE(residual(m, s), 1e-12);
}

TEST(EigHermitian, reconstruction_property) {
  Rng rng(20261015);
  for (std::size_t dim = 2; dim <= kMaxDim; ++dim) {
    for (int trial = 0; trial < 40; ++trial) {
      const HermitianMatrix m = random_hermitian(dim, rng);
      const Spectrum s = eig_hermitian(m);
      EXPECT_LE(max_distance(s.reconstruct().matrix(), m.matrix()), 1e-9) << "dim " << dim;
      EXPECT_LE(gram_deviation(s), 1e-10);
      EXPECT_LE(residual(m, s), 1e-9);
      EXPECT_TRUE(std::is_sorted(s.eigenvalues.begin(), s.eigenvalues.end()));
    }
  }
}

TEST(EigHermitian, degenerate_spectrum) {
  Rng rng(3);
  const ComplexMatrix u = random_unitary(5, rng);
  const HermitianMatrix m = congruence(u, HermitianMatrix(ComplexMatrix::diagonal({0.2, 0.2, 0.2, 0.7, 0.7})));
  const Spectrum s = eig_hermitian(m);
  EXPECT_LE(max_distance(s.reconstruct().matrix(), m.matrix()), 1e-12);
  EXPECT_LE(gram_deviation(s), 1e-12);
  EXPECT_EQ(eigenprojections(m).size(), 2u);
}

TEST(SqrtPsd, examples) {
  EXPECT_LE(max_distance(sqrt_psd(HermitianMatrix::diagonal({1.0, 0.25})).matrix(),
                         ComplexMatrix::diagonal({1.0, 0.5})),
            1e-15);
  EXPECT_LE(max_distance(sqrt_psd(HermitianMatrix::identity(3)).matrix(), ComplexMatrix::identity(3)), 1e-15);
  // A projection is its own square root.
  EXPECT_LE(max_distance(sqrt_psd(kPlus).matrix(), kPlus.matrix()), 1e-14);
}

TEST(SqrtPsd, rejects_negative_and_clamps_roundoff) {
  try {
    sqrt_psd(HermitianMatrix::diagonal({1.0, -0.1}));
    FAIL() << "expected NotPositive";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kNotPositive);
  }
  const HermitianMatrix r = sqrt_psd(HermitianMatrix::diagonal({1.0, -5e-11}));
  EXPECT_EQ(r(1, 1), Complex(0.0));
}

TEST(SqrtPsd, square_property) {
  Rng rng(11);
  for (std::size_t dim = 2; dim <= kMaxDim; ++dim) {
    for (int trial = 0; trial < 20; ++trial) {
      const ComplexMatrix g = ginibre(dim, rng);
      const HermitianMatrix m(g * g.adjoint());
      const HermitianMatrix r = sqrt_psd(m);
      EXPECT_LE(max_distance(r.matrix() * r.matrix(), m.matrix()), 1e-9);
      EXPECT_TRUE(is_psd(r));
    }
  }
}

TEST(LoewnerLeq, examples) {
  EXPECT_TRUE(loewner_leq(HermitianMatrix::diagonal({0.3, 0.3}), HermitianMatrix::identity(2)));
  EXPECT_FALSE(loewner_leq(HermitianMatrix::diagonal({1.0, 0.0}), HermitianMatrix::diagonal({0.0, 1.0})));
  EXPECT_TRUE(loewner_leq(kPlus, HermitianMatrix::identity(2)));
  EXPECT_THROW(loewner_leq(HermitianMatrix::identity(2), HermitianMatrix::identity(3)), Error);
}

TEST(LoewnerLeq, order_properties) {
  Rng rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t dim = 2 + trial % 3;
    const HermitianMatrix a = random_effect(dim, rng);
    EXPECT_TRUE(loewner_leq(a, a));
    // b = a + p, c = b + q with p, q >= 0 gives a chain.
    const HermitianMatrix b = a + 0.5 * random_state(dim, rng);
    const HermitianMatrix c = b + 0.5 * random_state(dim, rng);
    EXPECT_TRUE(loewner_leq(a, b));
    EXPECT_TRUE(loewner_leq(b, c));
    EXPECT_TRUE(loewner_leq(a, c));
    const HermitianMatrix near = a + 1e-12 * random_hermitian(dim, rng);
    if (loewner_leq(a, near) && loewner_leq(near, a)) {
      EXPECT_LE(max_distance(a.matrix(), near.matrix()), 1e-8);
    }
  }
}

TEST(Random, generators) {
  Rng rng1(1);
  EXPECT_NEAR(random_state(2, rng1).trace(), 1.0, 1e-12);

  Rng rng7(7);
  const HermitianMatrix e = random_effect(3, rng7);
  EXPECT_TRUE(loewner_leq(HermitianMatrix::zero(3), e));
  EXPECT_TRUE(loewner_leq(e, HermitianMatrix::identity(3)));

  Rng rng3(3);
  const ComplexMatrix u = random_unitary(4, rng3);
  EXPECT_LE(max_distance(u.adjoint() * u, ComplexMatrix::identity(4)), 1e-10);

  EXPECT_THROW(random_state(1, rng1), Error);
  EXPECT_THROW(random_state(9, rng1), Error);
}

TEST(Random, seeded_streams_are_reproducible) {
  Rng a(derive_seed(42, "thm-2.2"));
  Rng b(derive_seed(42, "thm-2.2"));
  Rng c(derive_seed(42, "thm-2.4i"));
  const HermitianMatrix x = random_state(3, a);
  EXPECT_EQ(x, random_state(3, b));
  EXPECT_NE(x, random_state(3, c));
}

TEST(HermitianMatrix, rejects_asymmetric_input) {
  EXPECT_THROW(HermitianMatrix(ComplexMatrix{{0.0, 1.0}, {0.0, 0.0}}), Error);
  const HermitianMatrix h(ComplexMatrix{{1.0, Complex(0.5, 1e-13)}, {Complex(0.5, 0.0), 1.0}});
  EXPECT_EQ(h(0, 1), std::conj(h(1, 0)));
}
