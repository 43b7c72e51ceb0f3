#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "mqc/analysis.hpp"
#include "mqc/basis.hpp"
#include "mqc/coherence.hpp"
#include "mqc/errors.hpp"

using namespace mqc;

namespace {

struct TableEntry {
  int n_qubits, order;
  std::int64_t rank;
  std::int64_t num, den;
};

// Ranks and maximal intensities for N = 2..5 (reference table).
const TableEntry kReference[] = {
    {2, 1, 4, 1, 4},    {2, 2, 2, 1, 8},    {3, 1, 8, 1, 8},   {3, 2, 4, 1, 16},
    {3, 3, 2, 1, 32},   {4, 1, 16, 1, 16},  {4, 2, 12, 3, 64}, {4, 3, 4, 1, 64},
    {4, 4, 2, 1, 128},  {5, 1, 32, 1, 32},  {5, 2, 24, 3, 128}, {5, 3, 14, 7, 512},
    {5, 4, 4, 1, 256},  {5, 5, 2, 1, 512},
};

}  // namespace

TEST(Table1, MatchesReferenceTable) {
  const auto rows = table1();
  ASSERT_EQ(rows.size(), 14U);
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const auto& e = kReference[k];
    EXPECT_EQ(rows[k].qubits, e.n_qubits);
    EXPECT_EQ(rows[k].order, e.order);
    EXPECT_EQ(rows[k].rank_bound, e.rank);
    EXPECT_EQ(rows[k].two_max_intensity, Rational::make(e.num, e.den));
  }
}

TEST(Table1, Csv) {
  const std::string csv = table1_csv(table1());
  EXPECT_EQ(csv.rfind("N,n,N_n,two_I_max_num,two_I_max_den\n", 0), 0U);
  EXPECT_NE(csv.find("4,2,12,3,64\n"), std::string::npos);
  EXPECT_NE(csv.find("2,1,4,1,4\n"), std::string::npos);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 15);
}

TEST(Analysis, IntensityOrdering) {
  for (int nq = 2; nq <= 8; ++nq) {
    for (int n = 1; n < nq; ++n) EXPECT_TRUE(max_intensity(nq, n + 1) < max_intensity(nq, n));
    EXPECT_TRUE(max_intensity(nq, 1) < zero_order_bounds(nq).second);
  }
  EXPECT_EQ(zero_order_bounds(3).first, Rational::make(1, 8));
  EXPECT_THROW(rank_bound(3, 4), RangeError);
  EXPECT_THROW(rank_bound(3, 0), RangeError);
}

TEST(Analysis, RandomDrawsReachRankBound) {
  std::mt19937_64 rng(2024);
  for (int nq = 1; nq <= 5; ++nq) {
    for (int n = 1; n <= nq; ++n) {
      const CMatrix m = random_single_order(nq, n, rng);
      const int allowed[] = {n, -n};
      EXPECT_EQ(max_outside_orders(m, nq, allowed), 0.0);
      EXPECT_EQ(numeric_rank(m), rank_bound(nq, n)) << nq << "," << n;
    }
  }
}

TEST(Analysis, PairingAndOddTraces) {
  std::mt19937_64 rng(17);
  const CMatrix m = random_single_order(4, 2, rng);
  const auto rep = verify_eigen_pairing(m, 4, 2);
  EXPECT_LT(rep.residual, 1e-12);
  EXPECT_LT(std::abs(power_trace(m, 3)), 1e-10);
  EXPECT_LT(std::abs(power_trace(m, 5)), 1e-8);
  EXPECT_THROW(verify_eigen_pairing(CMatrix::Identity(16, 16), 4, 2), PreconditionError);
}

TEST(Analysis, ConstructiveMaximumAttainsBound) {
  // For order N there is one nonzero pair, so the maximum keeps a single order.
  std::mt19937_64 rng(4);
  for (int nq = 2; nq <= 4; ++nq) {
    const CMatrix m = random_single_order(nq, nq, rng);
    const CMatrix best = constructive_maximum(m, nq);
    EXPECT_NEAR(intensity(best, nq, nq) * 2.0, max_intensity(nq, nq).value(), 1e-14);
    const int allowed[] = {nq, -nq};
    EXPECT_LT(max_outside_orders(best, nq, allowed), 1e-14);
  }
}

TEST(Analysis, RationalReduces) {
  EXPECT_EQ(Rational::make(6, 128), Rational::make(3, 64));
  EXPECT_EQ(Rational::make(6, 128).str(), "3/64");
  EXPECT_THROW(Rational::make(1, 0), RangeError);
}
