#pragma once

// Two-dimensional lattice geometry for short intervals I = (x3/M, (x3+1)/M].
// With s0 = x3/M the scaled lattice
//   { (E^{-1/2} M (x1 - s0 x2), E^{-1/2} x2) : (x1, x2) in Z^2 }
// is E^{-1/2} times the integer lattice spanned by (M, 0) and (-x3, 1). All
// reduction happens on that integer model; the E^{-1/2} scaling only enters
// through L_i = sqrt(E) / |g_i|.

#include <cstdint>
#include <span>
#include <vector>

#include "sqfree/solutions.hpp"

namespace sqfree {

struct Vec2 {
  std::int64_t x = 0, y = 0;

  __int128 norm2() const { return static_cast<__int128>(x) * x + static_cast<__int128>(y) * y; }
  double length() const;
  friend __int128 dot(const Vec2& a, const Vec2& b) {
    return static_cast<__int128>(a.x) * b.x + static_cast<__int128>(a.y) * b.y;
  }
  friend __int128 det(const Vec2& a, const Vec2& b) {
    return static_cast<__int128>(a.x) * b.y - static_cast<__int128>(a.y) * b.x;
  }
  friend bool operator==(const Vec2&, const Vec2&) = default;
};

struct IntLattice2 {
  Vec2 b1, b2;
};

enum class LatticeSide { S, T };

struct ReducedBasis {
  Vec2 g1, g2;
  double L1 = 0, L2 = 0;  // sqrt(E)/|g_i| on the s-side, sqrt(F)/|g_i| on the t-side
  LatticeSide side = LatticeSide::S;
};

struct UnimodularBasis {
  Vec2 h1, h2;
};

// Lagrange-Gauss reduction. Rounding is to the nearest integer with ties
// toward zero. Output: same lattice, |g1| <= |g2|, 2|g1.g2| <= |g1|^2.
// Throws DegenerateLattice for dependent input.
ReducedBasis gauss_reduce(Vec2 b1, Vec2 b2);

// Integer model of the interval lattice and its reduced basis with
// L_i = sqrt(scale)/|g_i|. Any integer x3 is accepted: the lattice depends
// only on x3 mod M, the h-basis on x3 itself.
struct IntervalLattice {
  IntLattice2 lattice;
  ReducedBasis reduced;
};
IntervalLattice interval_lattice(std::int64_t x3, std::uint64_t M, double scale,
                                 LatticeSide side = LatticeSide::S);

// Preimages of g1, g2 under (x1, x2) -> (M x1 - x3 x2, x2): a basis of Z^2.
UnimodularBasis h_basis(const ReducedBasis& rb, std::int64_t x3, std::uint64_t M);

// Coordinates of v in the basis h (requires det h = +-1).
std::pair<std::int64_t, std::int64_t> coordinates(const UnimodularBasis& h, const Vec2& v);

inline constexpr double kCoordinateConstant = 4.0;
inline constexpr double kCensusEnvelope = 10.0;
inline constexpr std::uint64_t kT3MultiplicityCap = 4;

struct CoordinateCheck {
  std::size_t checked = 0;
  std::size_t skipped = 0;  // outside I or with |x2| > sqrt(E)
  double max_ratio1 = 0, max_ratio2 = 0;  // max |lambda_i| / L_i
  std::size_t violations = 0;             // ratio above kCoordinateConstant
};

// Writes each solution's (x1, x2) in the h-basis of I and compares |lambda_i| with L_i.
CoordinateCheck coordinate_bounds_check(std::span<const Quadruple> solutions, std::uint64_t E,
                                        std::int64_t x3, std::uint64_t M);

struct CensusBucket {
  double L_lo = 0, L_hi = 0;
  std::uint64_t count = 0;
  double envelope = 0;  // E / L_lo^2; count / envelope is the empirical constant
};

// #{0 <= x3 < M : L1(x3) in (L_lo, L_hi]}. Shards x3 across threads.
std::uint64_t census_by_L(std::uint64_t E, std::uint64_t M, double L_lo, double L_hi, unsigned threads = 1);

// Dyadic partition (sqrt(E)/2^{k+1}, sqrt(E)/2^k] of every x3 in [0, M).
std::vector<CensusBucket> census_dyadic(std::uint64_t E, std::uint64_t M, unsigned threads = 1);

struct TSideEntry {
  std::int64_t x3 = 0;
  QuadraticKind kind = QuadraticKind::Cross;
  std::int64_t t3 = 0;  // phi(s0) in [t3/M, (t3+1)/M)
};

struct TSideCensus {
  std::vector<TSideEntry> entries;      // one per (nonempty interval, labeling kind)
  std::vector<CensusBucket> buckets;    // T1 = sqrt(F)/|g1| over the distinct t3
  std::uint64_t max_multiplicity = 0;   // most x3 sharing one t3
  bool within_cap() const { return max_multiplicity <= kT3MultiplicityCap; }
};

TSideCensus t_side_census(std::uint64_t E, std::uint64_t F, std::uint64_t M,
                          std::span<const SolutionTriple> triples);

}  // namespace sqfree
