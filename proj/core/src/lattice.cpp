#include "sqfree/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <string>
#include <thread>

#include "sqfree/detmethod.hpp"
#include "sqfree/error.hpp"

namespace sqfree {

namespace {

using i128 = __int128;

// Nearest integer to num/den (den > 0), ties toward zero.
i128 round_half_toward_zero(i128 num, i128 den) {
  const bool neg = num < 0;
  const i128 a = neg ? -num : num;
  i128 q = a / den;
  const i128 r = a % den;
  if (2 * r > den) ++q;
  return neg ? -q : q;
}

// floor(log2 |g|) from |g|^2.
unsigned log2_length(i128 norm2) {
  unsigned k = 0;
  while (static_cast<i128>(1) << (2 * (k + 1)) <= norm2) ++k;
  return k;
}

std::int64_t checked(i128 v) {
  require(v >= INT64_MIN && v <= INT64_MAX, ErrorCode::OutOfRange, "lattice coordinate overflows int64");
  return static_cast<std::int64_t>(v);
}

double lattice_length(const Vec2& v) { return std::sqrt(static_cast<double>(v.norm2())); }

template <class Fn>
void sharded(std::uint64_t M, unsigned threads, Fn&& fn) {
  threads = std::max(1u, static_cast<unsigned>(std::min<std::uint64_t>(threads, M)));
  if (threads == 1) {
    fn(0u, std::uint64_t{0}, M);
    return;
  }
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back(fn, t, M * t / threads, M * (t + 1) / threads);
  }
  for (auto& th : pool) th.join();
}

std::vector<CensusBucket> buckets_from_counts(const std::vector<std::uint64_t>& counts, double scale) {
  std::vector<CensusBucket> out;
  const double root = std::sqrt(scale);
  for (std::size_t k = 0; k < counts.size(); ++k) {
    CensusBucket b;
    b.L_hi = root / std::ldexp(1.0, static_cast<int>(k));
    b.L_lo = b.L_hi / 2;
    b.count = counts[k];
    b.envelope = scale / (b.L_lo * b.L_lo);
    out.push_back(b);
  }
  return out;
}

}  // namespace

double Vec2::length() const { return lattice_length(*this); }

ReducedBasis gauss_reduce(Vec2 b1, Vec2 b2) {
  require(det(b1, b2) != 0, ErrorCode::DegenerateLattice, "basis vectors are linearly dependent");
  if (b1.norm2() > b2.norm2()) std::swap(b1, b2);
  for (;;) {
    const i128 mu = round_half_toward_zero(dot(b1, b2), b1.norm2());
    b2 = {checked(b2.x - mu * b1.x), checked(b2.y - mu * b1.y)};
    if (b2.norm2() < b1.norm2()) {
      std::swap(b1, b2);
      continue;
    }
    break;
  }
  ReducedBasis rb;
  rb.g1 = b1;
  rb.g2 = b2;
  return rb;
}

IntervalLattice interval_lattice(std::int64_t x3, std::uint64_t M, double scale, LatticeSide side) {
  require(M >= 1 && M <= (std::uint64_t{1} << 40), ErrorCode::InvalidArgument, "interval_lattice requires 1 <= M <= 2^40");
  require(scale >= 1, ErrorCode::InvalidArgument, "interval_lattice requires E >= 1");
  IntervalLattice out;
  out.lattice = {{static_cast<std::int64_t>(M), 0}, {-x3, 1}};
  out.reduced = gauss_reduce(out.lattice.b1, out.lattice.b2);
  out.reduced.side = side;
  const double root = std::sqrt(scale);
  out.reduced.L1 = root / out.reduced.g1.length();
  out.reduced.L2 = root / out.reduced.g2.length();
  return out;
}

UnimodularBasis h_basis(const ReducedBasis& rb, std::int64_t x3, std::uint64_t M) {
  auto preimage = [&](const Vec2& g) {
    const i128 num = static_cast<i128>(g.x) + static_cast<i128>(x3) * g.y;
    require(num % static_cast<i128>(M) == 0, ErrorCode::NonIntegralPreimage,
            "vector (" + std::to_string(g.x) + ", " + std::to_string(g.y) + ") is not in the interval lattice");
    return Vec2{checked(num / static_cast<i128>(M)), g.y};
  };
  UnimodularBasis h{preimage(rb.g1), preimage(rb.g2)};
  const i128 d = det(h.h1, h.h2);
  require(d == 1 || d == -1, ErrorCode::NonIntegralPreimage, "preimage basis is not unimodular");
  return h;
}

std::pair<std::int64_t, std::int64_t> coordinates(const UnimodularBasis& h, const Vec2& v) {
  const i128 d = det(h.h1, h.h2);
  require(d == 1 || d == -1, ErrorCode::InvalidArgument, "basis is not unimodular");
  return {checked(det(v, h.h2) * d), checked(det(h.h1, v) * d)};
}

CoordinateCheck coordinate_bounds_check(std::span<const Quadruple> solutions, std::uint64_t E,
                                        std::int64_t x3, std::uint64_t M) {
  CoordinateCheck report;
  const auto il = interval_lattice(x3, M, static_cast<double>(E));
  const auto h = h_basis(il.reduced, x3, M);
  const IntervalSpec I{x3, M};
  for (const auto& q : solutions) {
    if (q.x2 == 0 || q.x2 * q.x2 > E || !I.contains(mpq_class(q.x1, q.x2))) {
      ++report.skipped;
      continue;
    }
    const auto [l1, l2] = coordinates(h, {q.x1.get_si(), q.x2.get_si()});
    const double r1 = std::fabs(static_cast<double>(l1)) / il.reduced.L1;
    const double r2 = std::fabs(static_cast<double>(l2)) / il.reduced.L2;
    report.max_ratio1 = std::max(report.max_ratio1, r1);
    report.max_ratio2 = std::max(report.max_ratio2, r2);
    if (r1 > kCoordinateConstant || r2 > kCoordinateConstant) ++report.violations;
    ++report.checked;
  }
  return report;
}

std::uint64_t census_by_L(std::uint64_t E, std::uint64_t M, double L_lo, double L_hi, unsigned threads) {
  require(L_lo > 0 && L_lo < L_hi && L_hi <= std::sqrt(static_cast<double>(E)) * (1 + 1e-12),
          ErrorCode::InvalidArgument, "census_by_L requires 0 < L_lo < L_hi <= sqrt(E)");
  std::vector<std::uint64_t> partial(std::max(1u, threads), 0);
  sharded(M, threads, [&](unsigned t, std::uint64_t a, std::uint64_t b) {
    for (std::uint64_t x3 = a; x3 < b; ++x3) {
      const double L1 = interval_lattice(static_cast<std::int64_t>(x3), M, static_cast<double>(E)).reduced.L1;
      if (L1 > L_lo && L1 <= L_hi) ++partial[t];
    }
  });
  std::uint64_t total = 0;
  for (auto c : partial) total += c;
  return total;
}

std::vector<CensusBucket> census_dyadic(std::uint64_t E, std::uint64_t M, unsigned threads) {
  require(M >= 1, ErrorCode::InvalidArgument, "census_dyadic requires M >= 1");
  const unsigned shards = std::max(1u, threads);
  std::vector<std::vector<std::uint64_t>> partial(shards, std::vector<std::uint64_t>(64, 0));
  sharded(M, threads, [&](unsigned t, std::uint64_t a, std::uint64_t b) {
    for (std::uint64_t x3 = a; x3 < b; ++x3) {
      const auto rb = gauss_reduce({static_cast<std::int64_t>(M), 0}, {-static_cast<std::int64_t>(x3), 1});
      ++partial[t][log2_length(rb.g1.norm2())];
    }
  });
  std::vector<std::uint64_t> counts(64, 0);
  for (const auto& p : partial) {
    for (std::size_t k = 0; k < 64; ++k) counts[k] += p[k];
  }
  while (counts.size() > 1 && counts.back() == 0) counts.pop_back();
  return buckets_from_counts(counts, static_cast<double>(E));
}

TSideCensus t_side_census(std::uint64_t E, std::uint64_t F, std::uint64_t M,
                          std::span<const SolutionTriple> triples) {
  require(M >= 2, ErrorCode::InvalidArgument, "t_side_census requires M >= 2");
  TSideCensus out;
  const DyadicBox box{E, F};
  std::set<std::pair<std::int64_t, QuadraticKind>> intervals;
  for (const auto& t : triples) {
    const QLabeling l = q_label(decompose(t), box);
    intervals.insert({IntervalSpec::of(l.s, M).x3, l.q1_kind});
  }
  std::map<std::int64_t, std::set<std::int64_t>> by_t3;
  for (const auto& [x3, kind] : intervals) {
    mpq_class s0(mpz_class(static_cast<long>(x3)), mpz_class(M));
    s0.canonicalize();
    mpq_class value;
    try {
      value = phi(kind, s0);
    } catch (const Error&) {
      mpq_class s1(mpz_class(static_cast<long>(x3 + 1)), mpz_class(M));
      s1.canonicalize();
      value = phi(kind, s1);
    }
    mpz_class scaled = value.get_num() * M, t3;
    mpz_fdiv_q(t3.get_mpz_t(), scaled.get_mpz_t(), value.get_den_mpz_t());
    const TSideEntry entry{x3, kind, t3.get_si()};
    out.entries.push_back(entry);
    by_t3[entry.t3].insert(x3);
  }
  std::vector<std::uint64_t> counts(64, 0);
  for (const auto& [t3, xs] : by_t3) {
    out.max_multiplicity = std::max<std::uint64_t>(out.max_multiplicity, xs.size());
    const auto rb = gauss_reduce({static_cast<std::int64_t>(M), 0}, {-t3, 1});
    ++counts[log2_length(rb.g1.norm2())];
  }
  while (counts.size() > 1 && counts.back() == 0) counts.pop_back();
  out.buckets = buckets_from_counts(counts, static_cast<double>(F));
  return out;
}

}  // namespace sqfree
