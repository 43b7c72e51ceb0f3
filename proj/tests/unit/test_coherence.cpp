#include <gtest/gtest.h>

#include <random>

#include "dense_oracle.hpp"
#include "mqc/coherence.hpp"
#include "mqc/errors.hpp"
#include "mqc/restore.hpp"

using namespace mqc;

TEST(Coherence, MaximallyMixedHasOnlyZeroOrder) {
  const auto parts = decompose(DensityMatrix::maximally_mixed(3));
  EXPECT_NEAR(parts.intensity(0), 1.0 / 8.0, 1e-15);
  for (int n = 1; n <= 3; ++n) {
    EXPECT_EQ(parts.intensity(n), 0.0);
    EXPECT_EQ(parts.intensity(-n), 0.0);
  }
}

TEST(Coherence, DecompositionResumsAndMatchesOracle) {
  std::mt19937_64 rng(7);
  for (int nq = 1; nq <= 5; ++nq) {
    const CMatrix rho = oracle::random_state(nq, rng);
    const auto parts = decompose(rho, nq);
    EXPECT_LT((parts.resum() - rho).cwiseAbs().maxCoeff(), 1e-15);
    double total = 0.0;
    for (int n = -nq; n <= nq; ++n) {
      EXPECT_NEAR(parts.intensity(n), oracle::intensity(rho, nq, n), 1e-14);
      EXPECT_NEAR(intensity(rho, nq, n), oracle::intensity(rho, nq, n), 1e-14);
      total += parts.intensity(n);
    }
    // Σ_n I_n = Tr ρ².
    EXPECT_NEAR(total, (rho * rho).trace().real(), 1e-13);
  }
}

TEST(Coherence, IntensitiesAreSymmetric) {
  std::mt19937_64 rng(11);
  const CMatrix rho = oracle::random_state(4, rng);
  const auto all = intensities(rho, 4);
  ASSERT_EQ(all.size(), 9U);
  for (int n = 1; n <= 4; ++n) EXPECT_NEAR(all[4 + n], all[4 - n], 1e-15);
}

TEST(Coherence, SingleQuantumSenderIntensity) {
  // Three order +1 entries of modulus 0.1: I_1 = 0.03 and I_1 + I_{-1} = 0.06.
  CMatrix s = CMatrix::Identity(4, 4) / 4.0 + single_quantum_pattern(0.1);
  const DensityMatrix rho(2, s);
  EXPECT_NEAR(intensity(rho, 1), 0.03, 1e-15);
  EXPECT_NEAR(intensity(rho, 1) + intensity(rho, -1), 0.06, 1e-15);
}

TEST(Coherence, OrderPartAndOutsideOrders) {
  std::mt19937_64 rng(3);
  const CMatrix rho = oracle::random_state(3, rng);
  const CMatrix p1 = order_part(rho, 3, 1);
  const int allowed[] = {1};
  EXPECT_EQ(max_outside_orders(p1, 3, allowed), 0.0);
  EXPECT_GT(max_outside_orders(rho, 3, allowed), 0.0);
  EXPECT_EQ((decompose(rho, 3).component_matrix(1) - p1).cwiseAbs().maxCoeff(), 0.0);
  // Position (1,2) in 1-based labels, |000> -> |001>, raises one excitation.
  EXPECT_EQ(p1(0, 1), rho(0, 1));
  EXPECT_EQ(p1(1, 0), Complex{});
}

TEST(Coherence, Errors) {
  EXPECT_THROW(decompose(CMatrix::Zero(3, 3), 2), DimensionError);
  EXPECT_THROW(intensity(CMatrix::Zero(4, 4), 2, 3), RangeError);
}
