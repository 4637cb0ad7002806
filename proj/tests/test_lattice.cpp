#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "sqfree/error.hpp"
#include "sqfree/lattice.hpp"

using namespace sqfree;

namespace {

using i128 = __int128;

// Oracle: shortest nonzero vector of the lattice by enumerating small combinations.
i128 brute_min_norm(const Vec2& a, const Vec2& b, int range) {
  i128 best = -1;
  for (int i = -range; i <= range; ++i) {
    for (int j = -range; j <= range; ++j) {
      if (i == 0 && j == 0) continue;
      const Vec2 v{i * a.x + j * b.x, i * a.y + j * b.y};
      if (best < 0 || v.norm2() < best) best = v.norm2();
    }
  }
  return best;
}

// (u, v) expressed over (a, b) with integer coefficients, via Cramer's rule.
bool in_lattice(const Vec2& v, const Vec2& a, const Vec2& b) {
  const i128 d = det(a, b);
  return det(v, b) % d == 0 && det(a, v) % d == 0;
}

bool same_lattice(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d) {
  return in_lattice(c, a, b) && in_lattice(d, a, b) && in_lattice(a, c, d) && in_lattice(b, c, d);
}

}  // namespace

TEST(GaussReduce, Examples) {
  const auto a = gauss_reduce({1, 0}, {0, 1});
  EXPECT_EQ(a.g1, (Vec2{1, 0}));
  EXPECT_EQ(a.g2, (Vec2{0, 1}));

  const auto b = gauss_reduce({5, 3}, {3, 2});
  EXPECT_EQ(b.g1.norm2(), 1);
  EXPECT_EQ(b.g2.norm2(), 1);
  EXPECT_EQ(dot(b.g1, b.g2), 0);

  const auto c = gauss_reduce({2, 0}, {1, 3});
  EXPECT_EQ(c.g1, (Vec2{2, 0}));
  EXPECT_EQ(c.g2, (Vec2{1, 3}));

  try {
    gauss_reduce({2, 4}, {1, 2});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DegenerateLattice);
  }
}

TEST(GaussReduce, TieRoundsTowardZero) {
  // mu = dot / |b1|^2 = 1/2 exactly: ties toward zero keep b2.
  const auto r = gauss_reduce({2, 0}, {1, 5});
  EXPECT_EQ(r.g2, (Vec2{1, 5}));
  const auto s = gauss_reduce({2, 0}, {-1, 5});
  EXPECT_EQ(s.g2, (Vec2{-1, 5}));
}

TEST(GaussReduce, RandomBasesReduceToMinimum) {
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<std::int64_t> d(-100000, 100000);
  for (int i = 0; i < 3000; ++i) {
    const Vec2 a{d(rng), d(rng)}, b{d(rng), d(rng)};
    if (det(a, b) == 0) continue;
    const auto r = gauss_reduce(a, b);
    ASSERT_LE(r.g1.norm2(), r.g2.norm2());
    const i128 g = dot(r.g1, r.g2);
    ASSERT_LE(2 * (g < 0 ? -g : g), r.g1.norm2());
    ASSERT_TRUE(same_lattice(a, b, r.g1, r.g2));
    const i128 da = det(a, b), dr = det(r.g1, r.g2);
    ASSERT_EQ(da < 0 ? -da : da, dr < 0 ? -dr : dr);
    ASSERT_EQ(brute_min_norm(r.g1, r.g2, 3), r.g1.norm2());
  }
}

TEST(IntervalLattice, Examples) {
  const auto a = interval_lattice(0, 50, 10000.0);
  EXPECT_EQ(a.reduced.g1, (Vec2{0, 1}));
  EXPECT_EQ(a.reduced.g2, (Vec2{50, 0}));
  EXPECT_DOUBLE_EQ(a.reduced.L1, 100.0);
  EXPECT_DOUBLE_EQ(a.reduced.L2, 2.0);

  const auto b = interval_lattice(3, 10, 100.0);
  EXPECT_EQ(b.reduced.g1.norm2(), 10);
  EXPECT_EQ(b.reduced.g2.norm2(), 10);

  for (std::int64_t x3 = 0; x3 < 30; ++x3) {
    const auto l = interval_lattice(x3, 30, 900.0);
    const i128 d = det(l.lattice.b1, l.lattice.b2);
    EXPECT_EQ(d, 30);
    const i128 dr = det(l.reduced.g1, l.reduced.g2);
    EXPECT_EQ(dr < 0 ? -dr : dr, 30);
  }
}

TEST(IntervalLattice, OrthogonalCaseGivesFullL1) {
  const std::uint64_t M = 100;
  const double E = static_cast<double>(M * M);
  EXPECT_DOUBLE_EQ(interval_lattice(0, M, E).reduced.L1, std::sqrt(E));
}

TEST(HBasis, Examples) {
  const auto a = interval_lattice(0, 7, 49.0);
  const auto h = h_basis(a.reduced, 0, 7);
  EXPECT_EQ(h.h1, (Vec2{0, 1}));
  EXPECT_EQ(h.h2, (Vec2{1, 0}));

  ReducedBasis rb;
  rb.g1 = {-3, 1};
  rb.g2 = {1, 3};
  const auto hb = h_basis(rb, 3, 10);
  EXPECT_EQ(hb.h1, (Vec2{0, 1}));
  EXPECT_EQ(hb.h2, (Vec2{1, 3}));
  EXPECT_EQ(det(hb.h1, hb.h2), -1);

  rb.g1 = {1, 0};
  try {
    h_basis(rb, 3, 10);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NonIntegralPreimage);
  }
}

TEST(HBasis, CoordinatesRoundTrip) {
  std::mt19937_64 rng(37);
  for (int i = 0; i < 2000; ++i) {
    const std::uint64_t M = 2 + rng() % 100000;
    const auto x3 = static_cast<std::int64_t>(rng() % M);
    const auto il = interval_lattice(x3, M, 1e10);
    const auto h = h_basis(il.reduced, x3, M);
    const i128 d = det(h.h1, h.h2);
    ASSERT_TRUE(d == 1 || d == -1);
    const Vec2 v{static_cast<std::int64_t>(rng() % 20001) - 10000, static_cast<std::int64_t>(rng() % 20001) - 10000};
    const auto [l1, l2] = coordinates(h, v);
    ASSERT_EQ(l1 * h.h1.x + l2 * h.h2.x, v.x);
    ASSERT_EQ(l1 * h.h1.y + l2 * h.h2.y, v.y);
  }
}

TEST(LatticeInvariants, RandomInstances) {
  std::mt19937_64 rng(41);
  for (int i = 0; i < 20000; ++i) {
    const std::uint64_t M = 1 + rng() % 1'000'000;
    const auto x3 = static_cast<std::int64_t>(rng() % M);
    const double E = static_cast<double>(1 + rng() % 1'000'000'000'000ull);
    const auto il = interval_lattice(x3, M, E);
    const auto& r = il.reduced;
    ASSERT_LE(r.g1.norm2(), r.g2.norm2());
    const i128 g = dot(r.g1, r.g2);
    ASSERT_LE(2 * (g < 0 ? -g : g), r.g1.norm2());
    ASSERT_LE(r.g1.length() * r.g2.length(), 2 / std::sqrt(3.0) * static_cast<double>(M) * (1 + 1e-12));
    ASSERT_GE(r.L1, r.L2);
    ASSERT_LE(r.L1, std::sqrt(E) * (1 + 1e-12));
  }
}

TEST(CoordinateCheck, Examples) {
  EXPECT_EQ(coordinate_bounds_check({}, 100, 0, 10).checked, 0u);
  const auto il = interval_lattice(3, 10, 100.0);
  const auto h = h_basis(il.reduced, 3, 10);
  // A solution whose (x1, x2) equals h1 lies in I only if x1/x2 does; pick one that does.
  const std::vector<Quadruple> sols{{mpz_class(1), mpz_class(3), mpz_class(0), mpz_class(1)}};
  const auto rep = coordinate_bounds_check(sols, 100, 3, 10);
  EXPECT_EQ(rep.checked, 1u);
  EXPECT_EQ(rep.violations, 0u);
  EXPECT_EQ((Vec2{1, 3}), h.h2);
  EXPECT_NEAR(rep.max_ratio2, 1 / il.reduced.L2, 1e-12);
  EXPECT_EQ(rep.max_ratio1, 0.0);
}

TEST(CoordinateCheck, EnumeratedSolutionsWithinConstant) {
  const DyadicBox box{1024, 8192};
  const std::uint64_t M = 64;
  std::map<std::int64_t, std::vector<Quadruple>> by_interval;
  for (const auto& t : enumerate_mef(box)) {
    const Quadruple q = decompose(t);
    mpq_class s(q.x1, q.x2);
    s.canonicalize();
    mpz_class c, num = s.get_num() * M;
    mpz_cdiv_q(c.get_mpz_t(), num.get_mpz_t(), s.get_den_mpz_t());
    by_interval[c.get_si() - 1].push_back(q);
  }
  std::size_t checked = 0;
  for (const auto& [x3, qs] : by_interval) {
    const auto rep = coordinate_bounds_check(qs, box.E, x3, M);
    EXPECT_EQ(rep.violations, 0u) << x3;
    EXPECT_LE(rep.max_ratio1, kCoordinateConstant);
    EXPECT_LE(rep.max_ratio2, kCoordinateConstant);
    checked += rep.checked;
  }
  EXPECT_GT(checked, 0u);
}

TEST(Census, ByLExamples) {
  const std::uint64_t M = 100, E = M * M;
  // Every x3 lands in exactly one dyadic bucket.
  const auto buckets = census_dyadic(E, M);
  std::uint64_t total = 0;
  for (const auto& b : buckets) total += b.count;
  EXPECT_EQ(total, M);
  EXPECT_EQ(census_by_L(E, M, 50, 100), buckets[0].count);
  EXPECT_GE(buckets[0].count, 1u);  // x3 = 0 has L1 = sqrt(E)
}

TEST(Census, BucketsMatchDirectCounts) {
  const std::uint64_t E = 10000, M = 100;
  const auto buckets = census_dyadic(E, M);
  for (const auto& b : buckets) {
    std::uint64_t direct = 0;
    for (std::uint64_t x3 = 0; x3 < M; ++x3) {
      const double L1 = interval_lattice(static_cast<std::int64_t>(x3), M, static_cast<double>(E)).reduced.L1;
      if (L1 > b.L_lo && L1 <= b.L_hi) ++direct;
    }
    EXPECT_EQ(b.count, direct) << b.L_lo;
    EXPECT_LE(static_cast<double>(b.count), kCensusEnvelope * b.envelope);
  }
}

TEST(Census, ThreadInvariant) {
  const auto one = census_dyadic(1'000'000, 5000, 1);
  const auto many = census_dyadic(1'000'000, 5000, 7);
  ASSERT_EQ(one.size(), many.size());
  for (std::size_t i = 0; i < one.size(); ++i) EXPECT_EQ(one[i].count, many[i].count);
  EXPECT_EQ(census_by_L(1'000'000, 5000, 10, 1000, 1), census_by_L(1'000'000, 5000, 10, 1000, 5));
}

TEST(Census, RejectsBadRange) {
  EXPECT_THROW(census_by_L(100, 10, 0, 5), Error);
  EXPECT_THROW(census_by_L(100, 10, 5, 5), Error);
  EXPECT_THROW(census_by_L(100, 10, 5, 11), Error);
}

TEST(TSideCensus, EmptyAndSample) {
  const auto empty = t_side_census(1024, 1024, 64, {});
  EXPECT_TRUE(empty.entries.empty());
  EXPECT_EQ(empty.max_multiplicity, 0u);

  const DyadicBox box{1024, 1024};
  const auto triples = enumerate_mef(box);
  const auto c = t_side_census(box.E, box.F, 64, triples);
  EXPECT_FALSE(c.entries.empty());
  EXPECT_TRUE(c.within_cap()) << c.max_multiplicity;
  std::uint64_t total = 0;
  for (const auto& b : c.buckets) total += b.count;
  EXPECT_GE(total, 1u);
}
