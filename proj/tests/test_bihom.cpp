#include <gtest/gtest.h>

#include <random>

#include "sqfree/bihom.hpp"
#include "sqfree/error.hpp"

using namespace sqfree;

namespace {

BihomForm form(unsigned a, unsigned b, std::vector<long> c) {
  std::vector<mpz_class> v(c.begin(), c.end());
  return BihomForm(a, b, std::move(v));
}

// The y-box every root lies in, for the reference scan.
std::uint64_t box_for(const BihomForm& g, std::uint64_t X) {
  return bihom_count(g, X).y_search_bound.get_ui();
}

}  // namespace

TEST(BihomCount, Examples) {
  const auto det = form(1, 1, {0, 1, -1, 0});  // x1 y2 - x2 y1
  EXPECT_EQ(bihom_count(det, 1).points, 16u);
  EXPECT_EQ(bihom_count(det, 2).points, 32u);
  EXPECT_EQ(bihom_count(det, 1).x_vectors, 8u);
  EXPECT_EQ(bihom_count(det, 2).x_vectors, 16u);
}

TEST(BihomCount, NoZeros) {
  // (x1^2 + x2^2)(y1^2 + y2^2) is positive for nonzero x, y.
  const auto g = form(2, 2, {1, 0, 1, 0, 0, 0, 1, 0, 1});
  EXPECT_EQ(bihom_count(g, 5).points, 0u);
  EXPECT_EQ(bihom_count_box(g, 3, 30), 0u);
}

TEST(BihomForm, Validation) {
  EXPECT_THROW(form(1, 1, {1, 2, 3}), Error);
  EXPECT_THROW(form(1, 1, {0, 0, 0, 0}), Error);
  EXPECT_THROW(form(0, 1, {1, 1}), Error);
}

TEST(BihomForm, EvaluationMatchesExpansion) {
  // x1^2 y1 + 3 x1 x2 y2 - x2^2 y1
  const auto g = form(2, 1, {1, 0, 0, 3, -1, 0});
  for (long x1 = -3; x1 <= 3; ++x1) {
    for (long x2 = -3; x2 <= 3; ++x2) {
      for (long y1 = -3; y1 <= 3; ++y1) {
        for (long y2 = -3; y2 <= 3; ++y2) {
          const long expect = x1 * x1 * y1 + 3 * x1 * x2 * y2 - x2 * x2 * y1;
          ASSERT_EQ(g(x1, x2, y1, y2), expect);
        }
      }
    }
  }
}

TEST(BihomCount, AgreesWithBoxScanOnSampleForms) {
  const std::vector<BihomForm> forms{
      form(1, 1, {0, 1, -1, 0}),
      form(1, 1, {2, 3, -5, 7}),
      form(2, 1, {1, 0, 0, 3, -1, 0}),
      form(2, 1, {1, 2, -3, 0, 0, 5}),
      form(2, 2, {1, 0, -2, 0, 1, 0, -1, 0, 1}),
      form(1, 2, {1, 0, -1, 0, 1, -2}),
      form(1, 3, {1, 0, 0, -1, 0, 1, -1, 0}),
      form(2, 2, {0, 0, 1, 0, 0, 0, -1, 0, 0}),
  };
  for (const auto& g : forms) {
    for (std::uint64_t X : {1u, 2u, 3u}) {
      EXPECT_EQ(bihom_count(g, X).points, bihom_count_box(g, X, box_for(g, X))) << g.a() << g.b() << " X=" << X;
    }
  }
}

TEST(BihomCount, RandomFormsAgreeWithBoxScan) {
  std::mt19937_64 rng(42);
  std::uniform_int_distribution<long> coeff(-3, 3);
  for (int i = 0; i < 60; ++i) {
    const unsigned a = 1 + rng() % 2, b = 1 + rng() % 3;
    std::vector<long> c((a + 1) * (b + 1));
    for (auto& v : c) v = coeff(rng);
    if (std::all_of(c.begin(), c.end(), [](long v) { return v == 0; })) c[0] = 1;
    const auto g = form(a, b, c);
    const std::uint64_t X = 2;
    const auto fast = bihom_count(g, X);
    // Skip forms that vanish identically on some x: the box scan counts every y there.
    if (fast.degenerate_x > 0) continue;
    ASSERT_EQ(fast.points, bihom_count_box(g, X, box_for(g, X))) << i;
  }
}

TEST(BihomCount, PointsAreEven) {
  const auto g = form(2, 2, {1, 0, -2, 0, 1, 0, -1, 0, 1});
  for (std::uint64_t X : {1u, 5u, 20u}) EXPECT_EQ(bihom_count(g, X).points % 2, 0u);
}
