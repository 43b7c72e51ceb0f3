#include <gtest/gtest.h>

#include <algorithm>
#include <bit>

#include "mqc/basis.hpp"
#include "mqc/errors.hpp"

using namespace mqc;

TEST(BasisLabel, QubitOneIsMostSignificant) {
  // |i1 i2 i3> = |1 0 0> sits at index 4 in Kronecker order.
  const std::vector<int> bits{1, 0, 0};
  const BasisLabel l = BasisLabel::from_bits(bits);
  EXPECT_EQ(l.index(), 4U);
  EXPECT_EQ(l.bit(1), 1);
  EXPECT_EQ(l.bit(3), 0);
  EXPECT_EQ(l.bits(), bits);
}

TEST(BasisLabel, FlippedConventionGivesDifferentIndex) {
  // Guard against silently reading qubit 1 as the least significant bit.
  const std::vector<int> bits{1, 1, 0};
  EXPECT_EQ(BasisLabel::from_bits(bits).index(), 6U);
  EXPECT_NE(BasisLabel::from_bits(bits).index(), 3U);
}

TEST(BasisLabel, IzEigenvalue) {
  EXPECT_DOUBLE_EQ(BasisLabel(0, 4).iz_eigenvalue(), 2.0);
  EXPECT_DOUBLE_EQ(BasisLabel(15, 4).iz_eigenvalue(), -2.0);
  EXPECT_DOUBLE_EQ(BasisLabel(5, 4).iz_eigenvalue(), 0.0);
}

TEST(BasisLabel, RejectsOutOfRange) {
  EXPECT_THROW(BasisLabel(8, 3), RangeError);
  EXPECT_THROW(BasisLabel(0, 0), RangeError);
  EXPECT_THROW(BasisLabel(0, 3).bit(4), RangeError);
  const std::vector<int> bad{0, 2};
  EXPECT_THROW(BasisLabel::from_bits(bad), RangeError);
}

TEST(CoherenceOrder, IsIzDifference) {
  for (StateBits i = 0; i < 16; ++i) {
    for (StateBits j = 0; j < 16; ++j) {
      const BasisLabel a(i, 4), b(j, 4);
      EXPECT_EQ(coherence_order(a, b),
                static_cast<int>(a.iz_eigenvalue() - b.iz_eigenvalue()));
    }
  }
  // |00><11| raises two excitations: order +2.
  EXPECT_EQ(coherence_order(BasisLabel(0, 2), BasisLabel(3, 2)), 2);
  EXPECT_THROW(coherence_order(BasisLabel(0, 2), BasisLabel(0, 3)), DimensionError);
}

TEST(Patterns, MatchBruteForce) {
  for (int n = 0; n <= 10; ++n) {
    for (int k = 0; k <= n; ++k) {
      std::vector<StateBits> expect;
      for (StateBits v = 0; v < (StateBits{1} << n); ++v) {
        if (std::popcount(v) == k) expect.push_back(v);
      }
      const auto got = patterns_with_excitations(n, k);
      ASSERT_EQ(got, expect) << n << " " << k;
      ASSERT_EQ(got.size(), binomial(n, k));
      for (std::size_t r = 0; r < got.size(); ++r) {
        ASSERT_EQ(rank_in_sector(got[r]), static_cast<Index>(r));
      }
    }
  }
  EXPECT_TRUE(patterns_with_excitations(3, 4).empty());
  EXPECT_TRUE(patterns_with_excitations(3, -1).empty());
}

TEST(Binomial, Values) {
  EXPECT_EQ(binomial(20, 4), 4845U);
  EXPECT_EQ(binomial(8, 0), 1U);
  EXPECT_EQ(binomial(5, 6), 0U);
  EXPECT_EQ(binomial(5, -1), 0U);
}
