// Copyright 2026 The qwpk Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "qwpk/security.hpp"
#include "support/oracles.hpp"

namespace qwpk {
namespace {

WalkConfig make_config(unsigned n, std::size_t d, std::uint64_t t_min, std::uint64_t t_max) {
  return WalkConfig{n, std::size_t{1} << n, d, t_min, t_max};
}

// ------------------------------------------------------------------ DensityMatrix

TEST(DensityMatrixTest, RejectsBrokenMatrices) {
  ComplexMatrix m = ComplexMatrix::Identity(4, 4) / 4.0;
  m(0, 1) = {0.1, 0.0};
  EXPECT_THROW(DensityMatrix::from_matrix(m), NumericalError);  // not Hermitian

  EXPECT_THROW(DensityMatrix::from_matrix(ComplexMatrix::Identity(4, 4) / 3.0), NumericalError);  // trace

  ComplexMatrix neg = ComplexMatrix::Zero(4, 4);
  neg.diagonal() << 0.6, 0.6, -0.2, 0.0;
  EXPECT_THROW(DensityMatrix::from_matrix(neg), NumericalError);  // indefinite

  EXPECT_THROW(DensityMatrix::from_matrix(ComplexMatrix::Identity(3, 3) / 3.0), DimensionMismatch);
}

TEST(DensityMatrixTest, PureStateIsValid) {
  std::mt19937_64 gen(61);
  const auto rho = DensityMatrix::pure(testing::random_state(6, gen));
  EXPECT_EQ(rho.dimension(), 12u);
}

// ------------------------------------------------------------ public_key_density

TEST(PublicKeyDensity, SmallestConfigIsMaximallyMixed) {
  const auto c = make_config(2, 4, 1, 4);
  for (std::size_t k = 1; k <= 4; ++k) {
    for (std::uint64_t t = 0; t <= 6; ++t) {
      EXPECT_LE(public_key_density(c, k, t).max_deviation_from_maximally_mixed(), 1e-12);
    }
  }
}

TEST(PublicKeyDensity, ZeroStepsAveragesBasisProjectors) {
  const auto c = make_config(3, 4, 1, 4);
  const auto rho = public_key_density(c, 2, 0);
  EXPECT_EQ(rho.max_deviation_from_maximally_mixed(), 0.0);
}

TEST(PublicKeyDensity, MatchesBruteForceEnsembleSum) {
  // Independent route: dense U^t applied to each basis vector, outer products summed.
  const auto c = make_config(3, 4, 1, 8);
  const testing::Dense u = testing::dense_walk_power(8, testing::coin_long_double(1, 4), 5);
  testing::Dense acc = testing::Dense::Zero(16, 16);
  for (Eigen::Index col = 0; col < 16; ++col) acc += u.col(col) * u.col(col).adjoint() / 16.0;
  const auto rho = public_key_density(c, 1, 5);
  EXPECT_LE((rho.matrix() - acc).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_LE(rho.max_deviation_from_maximally_mixed(), 1e-12);
}

TEST(PublicKeyDensity, FullKeySpaceAgrees) {
  const auto c = make_config(3, 4, 2, 5);
  const auto full = public_key_density_full_key_space(c);
  EXPECT_LE(full.max_deviation(public_key_density(c, 3, 4)), 1e-12);
  EXPECT_LE(full.max_deviation_from_maximally_mixed(), 1e-12);
}

TEST(PublicKeyDensity, RejectsLargeConfig) {
  EXPECT_THROW(public_key_density(make_config(7, 2, 1, 2), 1, 1), ValidationError);
  EXPECT_THROW(public_key_density(make_config(3, 2, 1, 2), 3, 1), ValidationError);
}

TEST(PublicKeyDensity, GridIsMaximallyMixed) {
  for (unsigned n = 1; n <= 4; ++n) {
    for (std::size_t d = 1; d <= 4; ++d) {
      const auto c = make_config(n, d, 1, 8);
      for (std::size_t k = 1; k <= d; ++k) {
        for (std::uint64_t t = 0; t <= 8; ++t) {
          EXPECT_LE(public_key_density(c, k, t).max_deviation_from_maximally_mixed(), 1e-12);
          for (std::size_t m = 0; m < c.message_space(); m += 3) {
            EXPECT_LE(cipher_density(c, m, k, t).max_deviation_from_maximally_mixed(), 1e-12);
          }
        }
      }
    }
  }
}

// --------------------------------------------------------------- cipher_density

TEST(CipherDensity, MessageIndependent) {
  const auto c = make_config(2, 4, 1, 4);
  const auto base = public_key_density(c, 3, 3);
  EXPECT_EQ(cipher_density(c, 0, 3, 3).max_deviation(base), 0.0);
  for (std::size_t m = 0; m < 4; ++m) {
    const auto rho = cipher_density(c, m, 3, 3);
    EXPECT_LE(rho.max_deviation_from_maximally_mixed(), 1e-12);
    EXPECT_LE(rho.max_deviation(cipher_density(c, (m + 1) % 4, 3, 3)), 1e-12);
  }
  EXPECT_THROW(cipher_density(c, 4, 3, 3), ValidationError);
}

// ----------------------------------------------------------- von_neumann_entropy

TEST(VonNeumannEntropy, PureStateIsZero) {
  std::mt19937_64 gen(67);
  EXPECT_NEAR(von_neumann_entropy(DensityMatrix::pure(testing::random_state(8, gen))), 0.0, 1e-9);
}

TEST(VonNeumannEntropy, MaximallyMixedIsNPlusOne) {
  EXPECT_NEAR(von_neumann_entropy(DensityMatrix::maximally_mixed(16)), 4.0, 1e-9);
  EXPECT_NEAR(von_neumann_entropy(public_key_density(make_config(3, 4, 1, 5), 1, 5)), 4.0, 1e-9);
}

TEST(VonNeumannEntropy, TwoOutcomeMixture) {
  ComplexMatrix m = ComplexMatrix::Zero(6, 6);
  m(0, 0) = 0.5;
  m(1, 1) = 0.5;
  EXPECT_NEAR(von_neumann_entropy(DensityMatrix::from_matrix(m)), 1.0, 1e-12);
}

TEST(VonNeumannEntropy, InvariantUnderUnitaryConjugation) {
  // Mixture of two orthogonal walk states: entropy of {p, 1-p} regardless of the basis.
  const double p = 0.3;
  const auto coin = build_coin(2, 7);
  const auto a = walk_evolve(QuantumState::basis(5, 0, Coin::R), coin, 6);
  const auto b = walk_evolve(QuantumState::basis(5, 2, Coin::L), coin, 6);
  const ComplexMatrix m = p * DensityMatrix::pure(a).matrix() + (1 - p) * DensityMatrix::pure(b).matrix();
  const double want = -p * std::log2(p) - (1 - p) * std::log2(1 - p);
  EXPECT_NEAR(von_neumann_entropy(DensityMatrix::from_matrix(m)), want, 1e-12);
}

// --------------------------------------------------- shannon_entropy_secret_key

TEST(ShannonEntropy, ClosedFormValues) {
  EXPECT_EQ(shannon_entropy_secret_key(WalkConfig{0, 2, 1, 1, 1}), 1.0);
  EXPECT_EQ(shannon_entropy_secret_key(make_config(3, 4, 2, 5)), 8.0);
}

TEST(ShannonEntropy, EnumeratedDistributionAgrees) {
  for (unsigned n = 0; n <= 4; ++n) {
    for (std::size_t d : {1u, 2u, 3u, 5u, 8u}) {
      for (std::uint64_t width : {1u, 2u, 3u, 7u}) {
        const WalkConfig c{n, std::max<std::size_t>(2, std::size_t{1} << n), d, 1, width};
        const auto dist = KeyDistribution::uniform(c);
        const double closed = shannon_entropy_secret_key(c);
        EXPECT_EQ(closed, std::log2(static_cast<double>(d * width)) + (n + 1));
        EXPECT_NEAR(dist.shannon_entropy_bits(), closed, 1e-9);
        EXPECT_DOUBLE_EQ(dist.p_sk(0, 0, 0), 1.0 / (static_cast<double>(d * width) * std::pow(2.0, n + 1)));
      }
    }
  }
}

TEST(KeyDistributionTest, FamiliesSumToOne) {
  const auto dist = KeyDistribution::uniform(make_config(3, 5, 2, 8));
  for (const auto* family : {&dist.p_k, &dist.p_t, &dist.p_ls}) {
    double s = 0.0;
    for (double p : *family) s += p;
    EXPECT_NEAR(s, 1.0, 1e-12);
  }
  EXPECT_EQ(dist.p_k.size(), 5u);
  EXPECT_EQ(dist.p_t.size(), 7u);
  EXPECT_EQ(dist.p_ls.size(), 16u);
}

// ---------------------------------------------------------------- holevo_report

TEST(HolevoReport, WorkedExample) {
  const auto r = holevo_report(make_config(3, 4, 2, 5), 1, 2);
  EXPECT_NEAR(r.holevo_bound_bits, 4.0, 1e-9);
  EXPECT_NEAR(r.von_neumann_entropy_bits, 4.0, 1e-9);
  EXPECT_EQ(r.shannon_entropy_bits, 8.0);
  EXPECT_NEAR(r.holevo_gap_bits, 4.0, 1e-9);
  EXPECT_EQ(r.consistent_key_count, 16u);
}

TEST(HolevoReport, DegenerateKeySpaceHasNoGap) {
  const auto r = holevo_report(make_config(2, 1, 3, 3), 1, 3);
  EXPECT_NEAR(r.holevo_gap_bits, 0.0, 1e-9);
  EXPECT_EQ(r.consistent_key_count, 1u);
}

TEST(HolevoReport, GapIsLogKeyFamilyOnGrid) {
  for (unsigned n = 1; n <= 4; ++n) {
    for (std::size_t d : {1u, 2u, 3u, 4u, 16u}) {
      for (std::uint64_t width : {1u, 2u, 5u}) {
        const auto c = make_config(n, d, 1, width);
        const auto r = holevo_report(c, d, width);
        EXPECT_NEAR(r.von_neumann_entropy_bits, n + 1.0, 1e-9);
        EXPECT_NEAR(r.holevo_gap_bits, std::log2(static_cast<double>(d * width)), 1e-9);
        EXPECT_DOUBLE_EQ(r.holevo_gap_bits, r.shannon_entropy_bits - r.von_neumann_entropy_bits);
        if (d * width >= 2) {
          EXPECT_LT(r.von_neumann_entropy_bits, r.shannon_entropy_bits);
        }
      }
    }
  }
}

// ------------------------------------------------------- exhaustive_eavesdropper

TEST(ExhaustiveEavesdropper, KnownWalkGivesUniformCounts) {
  const auto c = make_config(2, 1, 2, 2);
  const SecretKey sk{1, 2, 1, Coin::L};
  for (std::uint64_t m = 0; m < 4; ++m) {
    const auto table = exhaustive_eavesdropper(encrypt(generate_public_key(sk, c), Message{m}), c);
    EXPECT_EQ(table.total_keys, 8u);
    EXPECT_EQ(table.ambiguous_keys, 0u);
    ASSERT_EQ(table.counts.size(), 4u);
    for (const auto& [msg, count] : table.counts) EXPECT_EQ(count, 2u) << "message " << msg;
    EXPECT_TRUE(table.uniform(4));
  }
}

TEST(ExhaustiveEavesdropper, CountsPartitionTheKeySpace) {
  std::mt19937_64 gen(71);
  for (int trial = 0; trial < 30; ++trial) {
    const unsigned n = 1 + gen() % 3;
    const std::size_t d = 1 + gen() % 4;
    const std::uint64_t t_min = 1 + gen() % 3;
    const auto cfg = make_config(n, d, t_min, t_min + gen() % 4);
    const auto sk = sample_secret_key(cfg, gen());
    const auto cipher = encrypt(generate_public_key(sk, cfg), Message{gen() % cfg.message_space()});
    const auto table = exhaustive_eavesdropper(cipher, cfg);
    EXPECT_EQ(table.total_keys, cfg.d * cfg.step_count() * 2 * cfg.message_space());
    EXPECT_EQ(table.consistent_keys() + table.ambiguous_keys, table.total_keys);
    EXPECT_TRUE(table.uniform(cfg.message_space()));
  }
}

TEST(ExhaustiveEavesdropper, ShiftedKeyDecodesShiftedMessage) {
  const auto c = make_config(3, 4, 1, 4);
  const SecretKey sk{2, 3, 5, Coin::R};
  const std::uint64_t m = 6;
  const auto cipher = encrypt(generate_public_key(sk, c), Message{m});
  for (std::size_t dl = 0; dl < 8; ++dl) {
    SecretKey other = sk;
    other.l = (sk.l + 8 - dl) % 8;
    EXPECT_EQ(decrypt(cipher, other, c, 0).message.value, (m + dl) % 8);
  }
}

TEST(ExhaustiveEavesdropper, ForeignStateIsAmbiguous) {
  // A random state is not an eigenstate under any candidate unwinding.
  std::mt19937_64 gen(73);
  const auto c = make_config(2, 2, 1, 2);
  const auto table = exhaustive_eavesdropper(testing::random_state(4, gen), c);
  EXPECT_EQ(table.ambiguous_keys, table.total_keys);
  EXPECT_TRUE(table.counts.empty());
  EXPECT_FALSE(table.uniform(4));
}

TEST(ExhaustiveEavesdropper, Preconditions) {
  EXPECT_THROW(exhaustive_eavesdropper(QuantumState::basis(8, 0, Coin::R), make_config(3, 5, 1, 1)),
               ValidationError);
  EXPECT_THROW(exhaustive_eavesdropper(QuantumState::basis(8, 0, Coin::R), make_config(3, 2, 1, 5)),
               ValidationError);
  EXPECT_THROW(exhaustive_eavesdropper(QuantumState::basis(32, 0, Coin::R), make_config(5, 2, 1, 2)),
               ValidationError);
  EXPECT_THROW(exhaustive_eavesdropper(QuantumState::basis(4, 0, Coin::R), make_config(3, 2, 1, 2)),
               DimensionMismatch);
}

}  // namespace
}  // namespace qwpk
