#include "osclab/alpha_family.hpp"

#include <gtest/gtest.h>

#include <algorithm>

using namespace osc;

TEST(AlphaFamily, ZeroKappaGivesOnlyVacuum) {
  std::mt19937_64 rng(1);
  const auto family = sup_alpha_strategy(0, 10, 6, {0, 1, 2}, AlphaFamilyConfig{}, rng);
  ASSERT_EQ(family.size(), 1u);
  EXPECT_EQ(family[0], OccupationVector::zeros(10));
}

TEST(AlphaFamily, OrderSupportAndCap) {
  std::mt19937_64 rng(2);
  AlphaFamilyConfig cfg;
  cfg.random_count = 20;
  cfg.cap = 7;
  const auto family = sup_alpha_strategy(2, 12, 5, {1, 3, 8}, cfg, rng);
  ASSERT_LE(family.size(), 7u);
  EXPECT_EQ(family[0], OccupationVector::zeros(12));
  // Saturated vector: kappa on displaced localized modes only.
  EXPECT_EQ(family[1], OccupationVector({0, 2, 0, 2, 0, 0, 0, 0, 0, 0, 0, 0}));
  for (const auto& a : family) {
    EXPECT_TRUE(a.supported_in_prefix(5));
    EXPECT_LE(a.max_occupation(), 2u);
  }
  for (std::size_t i = 0; i < family.size(); ++i) {
    for (std::size_t j = i + 1; j < family.size(); ++j) EXPECT_NE(family[i], family[j]);
  }
}

TEST(AlphaFamily, LargerFamiliesExtendSmallerOnes) {
  AlphaFamilyConfig small, big;
  small.random_count = 2;
  big.random_count = 6;
  std::mt19937_64 r1(3), r2(3);
  const auto a = sup_alpha_strategy(1, 8, 8, {0, 4}, small, r1);
  const auto b = sup_alpha_strategy(1, 8, 8, {0, 4}, big, r2);
  ASSERT_LE(a.size(), b.size());
  EXPECT_TRUE(std::equal(a.begin(), a.end(), b.begin()));
}
