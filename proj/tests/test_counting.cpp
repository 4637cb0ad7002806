#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "sqfree/arith.hpp"
#include "sqfree/counting.hpp"
#include "sqfree/error.hpp"

using namespace sqfree;

namespace {

// Oracle: k^2 | n^2 + 1 for some k >= 2, by plain trial over k.
bool brute_has_square_factor(u64 n) {
  const u64 v = n * n + 1;
  for (u64 k = 2; k * k <= v; ++k) {
    if (v % (k * k) == 0) return true;
  }
  return false;
}

std::vector<u64> brute_prefix(u64 x) {
  std::vector<u64> pre(x + 1, 0);
  for (u64 n = 1; n <= x; ++n) pre[n] = pre[n - 1] + (brute_has_square_factor(n) ? 0 : 1);
  return pre;
}

}  // namespace

TEST(CountDirect, Examples) {
  EXPECT_EQ(count_direct(1).count, 1u);
  EXPECT_EQ(count_direct(10).count, 9u);
  EXPECT_EQ(count_direct(100).count, 88u);
}

TEST(CountDirect, RangeLimit) {
  EXPECT_THROW(count_direct(kDirectCountLimit + 1), Error);
  EXPECT_THROW(count_direct(0), Error);
  EXPECT_EQ(count_direct(50, 50).count, count_sieve(50).count);
  try {
    count_direct(51, 50);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::RangeTooLarge);
  }
}

TEST(CountSieve, Examples) {
  EXPECT_EQ(count_sieve(1).count, 1u);
  EXPECT_EQ(count_sieve(10).count, 9u);
  EXPECT_EQ(count_sieve(100).count, 88u);
}

TEST(CountSieve, AgreesWithOracleAndDirectUpTo3000) {
  const auto pre = brute_prefix(3000);
  for (u64 x = 1; x <= 3000; ++x) {
    ASSERT_EQ(count_sieve(x).count, pre[x]) << x;
  }
  for (u64 x : {1ull, 7ull, 100ull, 999ull, 3000ull}) EXPECT_EQ(count_direct(x).count, pre[x]);
}

TEST(CountSieve, FlagsMatchSquarefreeTest) {
  const auto flags = squarefree_flags(200000);
  for (u64 n = 1; n <= 200000; ++n) ASSERT_EQ(flags[n] == 1, is_squarefree(n * n + 1)) << n;
}

TEST(CountSieve, IndependentOfThreadCount) {
  const u64 x = 1'000'003;
  const auto one = count_sieve(x, 1).count;
  for (unsigned t : {2u, 3u, 8u, 17u}) EXPECT_EQ(count_sieve(x, t).count, one) << t;
  EXPECT_EQ(squarefree_flags(5000, 1), squarefree_flags(5000, 13));
}

TEST(CountReport, MainAndErrorFields) {
  const auto r = count_sieve(1000);
  EXPECT_NEAR(static_cast<double>(r.main), static_cast<double>(c0_reference().value) * 1000, 1e-9);
  EXPECT_NEAR(static_cast<double>(r.error), static_cast<double>(r.count - r.main), 1e-9);
  EXPECT_GT(r.main_tail, 0);
  EXPECT_LT(r.main_tail, 1e-3);
}

TEST(EstermannSplit, Examples) {
  const auto a = estermann_split(50, 7);
  EXPECT_EQ(a.exact, count_direct(100).count - count_direct(50).count);
  EXPECT_EQ(a.discrepancy(), 0);

  const auto b = estermann_split(100, 1);
  EXPECT_EQ(b.progression_total, 100);

  // d = 5 contributes n in {107, 118, 132, 143, 157, 168, 182, 193}, weighted by mu(5) = -1;
  // d = 2, 3, 4 contribute nothing.
  std::vector<u64> listed;
  for (u64 n = 101; n <= 200; ++n) {
    if ((n * n + 1) % 25 == 0) listed.push_back(n);
  }
  EXPECT_EQ(listed, (std::vector<u64>{107, 118, 132, 143, 157, 168, 182, 193}));
  EXPECT_EQ(progression_count(5, 100), 8u);
  EXPECT_EQ(estermann_split(100, 5).progression_total - b.progression_total, -8);
}

TEST(EstermannSplit, IdentityHoldsForRandomParameters) {
  std::mt19937_64 rng(99);
  for (int i = 0; i < 40; ++i) {
    const u64 x = 1 + rng() % 3000;
    const u64 D = 1 + rng() % x;
    const auto s = estermann_split(x, D);
    ASSERT_EQ(s.discrepancy(), 0) << x << " " << D;
    ASSERT_EQ(s.exact, count_sieve(2 * x).count - count_sieve(x).count);
  }
}

TEST(EstermannSplit, DefaultCutoffAndMainSum) {
  const auto s = estermann_split(10000);
  EXPECT_EQ(s.D, 100u);
  EXPECT_EQ(s.discrepancy(), 0);
  EXPECT_NEAR(static_cast<double>(s.main_sum), static_cast<double>(c0_series(100).value) * 10000, 1e-6);
  EXPECT_THROW(estermann_split(10, 11), Error);
}

TEST(ProgressionCount, MatchesListing) {
  for (u64 d = 1; d <= 40; ++d) {
    for (u64 x : {1ull, 17ull, 500ull}) {
      u64 c = 0;
      for (u64 n = x + 1; n <= 2 * x; ++n) c += (n * n + 1) % (d * d) == 0;
      ASSERT_EQ(progression_count(d, x), c) << d << " " << x;
    }
  }
}

TEST(Constant, ProductExamples) {
  EXPECT_NEAR(static_cast<double>(c0_product(5).value), 23.0 / 25, 1e-15);
  EXPECT_NEAR(static_cast<double>(c0_product(13).value), 23.0 / 25 * 167.0 / 169, 1e-15);
  EXPECT_NEAR(static_cast<double>(c0_product(16).value), 23.0 / 25 * 167.0 / 169, 1e-15);
  EXPECT_THROW(c0_product(4), Error);
}

TEST(Constant, SeriesExamples) {
  EXPECT_NEAR(static_cast<double>(c0_series(1).value), 1.0, 1e-15);
  EXPECT_NEAR(static_cast<double>(c0_series(5).value), 1 - 2.0 / 25, 1e-15);
  EXPECT_NEAR(static_cast<double>(c0_series(12).value), 1 - 2.0 / 25, 1e-15);
  EXPECT_NEAR(static_cast<double>(c0_series(13).value), 1 - 2.0 / 25 - 2.0 / 169, 1e-15);
}

TEST(Constant, IntervalsContainReferenceAndOverlap) {
  const auto& ref = c0_reference();
  EXPECT_EQ(ref.cutoff, kReferenceCutoff);
  EXPECT_LT(ref.tail_bound, 4e-8);
  for (u64 cut : {100ull, 1000ull, 10000ull, 100000ull}) {
    const auto p = c0_product(cut);
    const auto s = c0_series(cut);
    EXPECT_TRUE(p.overlaps(s)) << cut;
    EXPECT_LE(p.lo(), ref.value);
    EXPECT_GE(p.hi(), ref.value);
    EXPECT_LE(std::fabs(s.value - ref.value), s.tail_bound + ref.tail_bound) << cut;
  }
  EXPECT_NEAR(static_cast<double>(ref.value), 0.894841, 1e-6);
}

TEST(Constant, ProductMonotoneInCutoff) {
  long double prev = 2;
  for (u64 P : {5ull, 13ull, 100ull, 10000ull, 1000000ull}) {
    const auto v = c0_product(P).value;
    EXPECT_LT(v, prev);
    prev = v;
  }
}

TEST(ErrorScan, Examples) {
  const std::vector<u64> grid{10, 100};
  const auto reps = error_scan(grid, 1, c0_product(13));
  ASSERT_EQ(reps.size(), 2u);
  EXPECT_EQ(reps[0].count, 9u);
  EXPECT_EQ(reps[1].count, 88u);
  EXPECT_NEAR(static_cast<double>(reps[1].main), 100 * static_cast<double>(c0_product(13).value), 1e-9);
}

TEST(ErrorScan, MatchesIndividualCounts) {
  const auto grid = log_grid(10, 200000, 12);
  const auto reps = error_scan(grid, 4);
  ASSERT_EQ(reps.size(), grid.size());
  for (const auto& r : reps) EXPECT_EQ(r.count, count_sieve(r.x).count) << r.x;
}

TEST(ErrorScan, RejectsBadGrids) {
  const std::vector<u64> unsorted{100, 10};
  const std::vector<u64> dup{10, 10};
  const std::vector<u64> big{10, kDirectCountLimit + 1};
  EXPECT_THROW(error_scan(unsorted), Error);
  EXPECT_THROW(error_scan(dup), Error);
  EXPECT_THROW(error_scan(std::span<const u64>{}), Error);
  try {
    error_scan(big);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::RangeTooLarge);
  }
}

TEST(FitExponent, DegenerateInput) {
  std::vector<CountReport> zeros(5);
  for (std::size_t i = 0; i < zeros.size(); ++i) zeros[i].x = 10 * (i + 1);
  try {
    fit_exponent(zeros);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DegenerateFit);
  }
  std::vector<CountReport> two(2);
  two[0] = {10, 0, 0, 1, 0};
  two[1] = {100, 0, 0, 2, 0};
  EXPECT_THROW(fit_exponent(two), Error);
}

TEST(FitExponent, RecoversSyntheticPowerLaws) {
  std::mt19937_64 rng(5);
  for (double alpha : {0.25, 0.5, 7.0 / 12, 0.9}) {
    std::vector<CountReport> reps;
    for (u64 x : log_grid(1000, 10'000'000, 9)) {
      CountReport r;
      r.x = x;
      r.error = ((rng() & 1) ? -3.0L : 3.0L) * std::pow(static_cast<long double>(x), alpha);
      reps.push_back(r);
    }
    EXPECT_NEAR(fit_exponent(reps), alpha, 1e-9);
  }
}

TEST(LogGrid, Shape) {
  const auto g = log_grid(1000, 10'000'000, 9);
  ASSERT_EQ(g.size(), 9u);
  EXPECT_EQ(g.front(), 1000u);
  EXPECT_EQ(g.back(), 10'000'000u);
  EXPECT_EQ(g[4], 100000u);
  EXPECT_TRUE(std::is_sorted(g.begin(), g.end()));
  EXPECT_EQ(log_grid(1, 3, 10).size(), 3u);
}
