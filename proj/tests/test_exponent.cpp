#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "sqfree/error.hpp"
#include "sqfree/exponent.hpp"

using namespace sqfree;

namespace {

// Oracle: the bound written directly from its definition.
long double reference_bound(long double psi) {
  return 0.5L * std::min(psi, 2 - 2 * psi) + std::max(9 * psi * (1 - psi) / 8, 0.25L);
}

}  // namespace

TEST(ExponentBound, Examples) {
  EXPECT_NEAR(static_cast<double>(exponent_bound(2.0L / 3).bound), 7.0 / 12, 1e-15);
  EXPECT_NEAR(static_cast<double>(exponent_bound(0.5L).bound), 17.0 / 32, 1e-15);
  EXPECT_NEAR(static_cast<double>(exponent_bound(0.75L).bound), 0.5, 1e-15);
}

TEST(ExponentBound, OutOfRange) {
  for (long double psi : {0.49L, 0.76L, -1.0L}) {
    try {
      exponent_bound(psi);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::OutOfRange);
    }
    EXPECT_THROW(exponent_bound_v7(psi), Error);
  }
}

TEST(ExponentBound, MatchesDefinitionOnRandomPoints) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> d(0.5, 0.75);
  for (int i = 0; i < 5000; ++i) {
    const long double psi = d(rng);
    EXPECT_NEAR(static_cast<double>(exponent_bound(psi).bound), static_cast<double>(reference_bound(psi)), 1e-15);
    const long double v7 = std::min(reference_bound(psi), 1 - 2 * psi / 3);
    EXPECT_NEAR(static_cast<double>(exponent_bound_v7(psi).bound), static_cast<double>(v7), 1e-15);
    EXPECT_LE(exponent_bound_v7(psi).bound, exponent_bound(psi).bound);
  }
}

TEST(ExponentOptimum, Unrefined) {
  const auto opt = exponent_optimum();
  EXPECT_NEAR(static_cast<double>(opt.psi), 2.0 / 3, 1e-12);
  EXPECT_NEAR(static_cast<double>(opt.bound), 7.0 / 12, 1e-12);
}

TEST(ExponentOptimum, Refined) {
  const auto opt = exponent_optimum_v7();
  const double root = std::sqrt(433.0);
  EXPECT_NEAR(static_cast<double>(opt.psi), (55 - root) / 54, 1e-6);
  EXPECT_NEAR(static_cast<double>(opt.bound), (26 + root) / 81, 1e-9);
  EXPECT_NEAR(static_cast<double>(opt.bound), 0.57788, 5e-6);
}

TEST(ExponentOptimum, GridSearchAgrees) {
  const auto g = maximize_on_grid([](long double p) { return exponent_bound(p).bound; }, kPsiMin, kPsiMax);
  EXPECT_NEAR(static_cast<double>(g.bound), static_cast<double>(exponent_optimum().bound), 1e-9);
  const auto g7 = maximize_on_grid([](long double p) { return exponent_bound_v7(p).bound; }, kPsiMin, kPsiMax);
  EXPECT_NEAR(static_cast<double>(g7.bound), static_cast<double>(exponent_optimum_v7().bound), 1e-9);
  EXPECT_NEAR(static_cast<double>(g7.psi), static_cast<double>(exponent_optimum_v7().psi), 1e-6);
}

TEST(ExponentOptimum, NoGridPointExceedsOptimum) {
  const auto opt = exponent_optimum();
  const auto opt7 = exponent_optimum_v7();
  for (int i = 0; i <= 100000; ++i) {
    const long double psi = kPsiMin + (kPsiMax - kPsiMin) * i / 100000;
    ASSERT_LE(exponent_bound(psi).bound, opt.bound + 1e-15L);
    ASSERT_LE(exponent_bound_v7(psi).bound, opt7.bound + 1e-15L);
  }
}
