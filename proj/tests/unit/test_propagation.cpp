#include <gtest/gtest.h>

#include <random>

#include "dense_oracle.hpp"
#include "mqc/coherence.hpp"
#include "mqc/errors.hpp"
#include "mqc/linalg.hpp"
#include "mqc/propagation.hpp"
#include "mqc/state_ops.hpp"

using namespace mqc;

namespace {

double dev(const CMatrix& a, const CMatrix& b) { return (a - b).cwiseAbs().maxCoeff(); }

CMatrix random_matrix(Index d, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  CMatrix m(d, d);
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j) m(i, j) = Complex(g(rng), g(rng));
  return m;
}

}  // namespace

TEST(Propagation, PropagatorsAreUnitaryAndMatchOracle) {
  const auto sys = build_sectors(5, 1.0);
  const auto props = propagators(sys, 2.3);
  for (int l = 0; l <= 5; ++l) EXPECT_LT(unitarity_error(props.block(l)), 1e-13);
  const CMatrix u = oracle::propagator(oracle::xx_hamiltonian(5, 1.0), 2.3);
  std::mt19937_64 rng(1);
  const CMatrix rho = oracle::random_state(5, rng);
  EXPECT_LT(dev(evolve(rho, props), u * rho * u.adjoint()), 1e-12);
}

TEST(Propagation, EvolveMatchesOracleOnArbitraryMatrices) {
  std::mt19937_64 rng(2);
  for (int nq = 2; nq <= 6; ++nq) {
    const auto sys = build_sectors(nq, 0.8);
    const double t = 5.0 * nq;
    const CMatrix u = oracle::propagator(oracle::xx_hamiltonian(nq, 0.8), t);
    const CMatrix m = random_matrix(Index{1} << nq, rng);
    EXPECT_LT(dev(evolve(m, propagators(sys, t)), u * m * u.adjoint()), 1e-11) << nq;
  }
}

TEST(Propagation, EvolveOrderSumsToEvolve) {
  std::mt19937_64 rng(3);
  const auto sys = build_sectors(4, 1.0);
  const auto props = propagators(sys, 1.7);
  const CMatrix rho = oracle::random_state(4, rng);
  const auto parts = decompose(rho, 4);
  CMatrix total = CMatrix::Zero(16, 16);
  for (int n = -4; n <= 4; ++n) {
    const CMatrix pn = evolve_order(parts, n, props);
    const int allowed[] = {n};
    EXPECT_LT(max_outside_orders(pn, 4, allowed), 1e-16);
    EXPECT_LT(dev(pn, evolve(parts.component_matrix(n), props)), 1e-13);
    total += pn;
  }
  EXPECT_LT(dev(total, evolve(rho, props)), 1e-13);
}

TEST(Propagation, DenseEvolutionNeedsCompleteSystem) {
  SectorOptions opt;
  opt.max_excitation = 2;
  const auto props = propagators(build_sectors(4, 1.0, opt), 1.0);
  EXPECT_THROW(evolve(CMatrix::Identity(16, 16), props), PreconditionError);
}

TEST(Propagation, TruncatedEvolutionWithAllSectorsIsExact) {
  std::mt19937_64 rng(4);
  const int nq = 5;
  const CMatrix s = oracle::random_state(2, rng);
  const ThermalProduct initial{s, 2, 3, 1.5};
  const auto props = propagators(build_sectors(nq, 1.0), 3.1);
  const auto out = evolve_truncated(initial, props);
  EXPECT_EQ(out.neglected_weight, 0.0);
  const CMatrix rho0 = tensor(s, oracle::thermal(1.5, 3));
  const CMatrix u = oracle::propagator(oracle::xx_hamiltonian(nq, 1.0), 3.1);
  const CMatrix ref = u * rho0 * u.adjoint();
  EXPECT_LT(dev(out.state.to_dense(), ref), 1e-13);
  EXPECT_NEAR(out.state.trace().real(), 1.0, 1e-13);
  EXPECT_LT(std::abs(out.state.element(3, 5) - ref(3, 5)), 1e-13);
}

TEST(Propagation, TruncationDropsOnlyHighSectors) {
  std::mt19937_64 rng(5);
  const int nq = 6;
  const CMatrix s = oracle::random_state(2, rng);
  const double beta = 2.0;
  const ThermalProduct initial{s, 2, 4, beta};
  SectorOptions opt;
  opt.max_excitation = 3;
  const auto props = propagators(build_sectors(nq, 1.0, opt), 0.9);
  const auto out = evolve_truncated(initial, props);

  // Oracle: project ρ0 onto sectors <= 3 on both sides, then evolve densely.
  CMatrix rho0 = tensor(s, oracle::thermal(beta, 4));
  const CMatrix iz = oracle::total_iz(nq);
  for (Index i = 0; i < rho0.rows(); ++i) {
    for (Index j = 0; j < rho0.cols(); ++j) {
      const double ei = (nq / 2.0 - iz(i, i).real());
      const double ej = (nq / 2.0 - iz(j, j).real());
      if (ei > 3.5 || ej > 3.5) rho0(i, j) = 0.0;
    }
  }
  const CMatrix u = oracle::propagator(oracle::xx_hamiltonian(nq, 1.0), 0.9);
  EXPECT_LT(dev(out.state.to_dense(), u * rho0 * u.adjoint()), 1e-13);
  EXPECT_NEAR(1.0 - out.state.trace().real(), out.neglected_weight, 1e-13);
  EXPECT_NEAR(out.neglected_weight, truncated_weight(initial, 3), 0.0);
}

TEST(Propagation, ReducedProductMatchesDensePipeline) {
  std::mt19937_64 rng(6);
  for (int nq = 4; nq <= 7; ++nq) {
    const CMatrix s = oracle::random_state(2, rng);
    const ThermalProduct initial{s, 2, nq - 2, 3.0};
    const auto props = propagators(build_sectors(nq, 1.0), 4.4);
    const CMatrix u = oracle::propagator(oracle::xx_hamiltonian(nq, 1.0), 4.4);
    const CMatrix full = u * tensor(s, oracle::thermal(3.0, nq - 2)) * u.adjoint();
    for (int r = 1; r <= nq; ++r) {
      std::vector<int> keep;
      for (int q = nq - r + 1; q <= nq; ++q) keep.push_back(q);
      EXPECT_LT(dev(reduce_evolved_product(initial, props, r), oracle::partial_trace(full, nq, keep)),
                1e-13)
          << nq << " " << r;
    }
  }
}

TEST(Propagation, SenderReach) {
  CMatrix s = CMatrix::Zero(4, 4);
  s(0, 0) = 1.0;
  EXPECT_EQ(sender_excitation_reach(s, 2), 0);
  s(0, 3) = 0.1;
  EXPECT_EQ(sender_excitation_reach(s, 2), 2);
}

TEST(Propagation, ProductShapeErrors) {
  const auto props = propagators(build_sectors(4, 1.0), 1.0);
  const ThermalProduct wrong{CMatrix::Identity(2, 2), 2, 2, 1.0};
  EXPECT_THROW(evolve_truncated(wrong, props), DimensionError);
  const ThermalProduct long_chain{CMatrix::Identity(4, 4) / 4.0, 2, 3, 1.0};
  EXPECT_THROW(reduce_evolved_product(long_chain, props, 2), DimensionError);
  const ThermalProduct ok{CMatrix::Identity(4, 4) / 4.0, 2, 2, 1.0};
  EXPECT_THROW(reduce_evolved_product(ok, props, 0), RangeError);
}
