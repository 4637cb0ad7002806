#pragma once

// Real-variable determinant method: points (s, t) = (x1/x2, z1/z2) with s in a
// short interval I = (x3/M, (x3+1)/M] all lie on one integer curve C_I(s, t) = 0
// of bidegree (K, L) once M is large enough. The curve is read off from an
// exact kernel vector of the matrix of monomials s^k t^l at the points.

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include <gmpxx.h>

#include "sqfree/solutions.hpp"

namespace sqfree {

struct DetConfig {
  std::uint64_t x = 0;
  std::uint64_t E = 0, F = 0;
  double eta = 0.1;
  std::uint64_t M = 0;
  unsigned K = 1, L = 3;
  unsigned H = 8;  // (K + 1)(L + 1)
  bool clamped_low = false;   // M raised to ceil(sqrt(x))
  bool clamped_high = false;  // M lowered to x
};

// M = ceil(exp((9/8)(1 + eta) log E log F / log x)) clamped into [ceil(sqrt x), x];
// K = max(1, floor(L log F / log E)).
DetConfig choose_M(std::uint64_t x, std::uint64_t E, std::uint64_t F, double eta, unsigned L = 3);

struct IntervalSpec {
  std::int64_t x3 = 0;
  std::uint64_t M = 1;

  bool contains(const mpq_class& s) const;
  // The x3 with s in (x3/M, (x3+1)/M].
  static IntervalSpec of(const mpq_class& s, std::uint64_t M);
};

struct RationalPoint {
  mpz_class s_num, s_den, t_num, t_den;
  QuadraticKind kind = QuadraticKind::Cross;

  mpq_class s() const { return mpq_class(s_num, s_den); }
  mpq_class t() const { return mpq_class(t_num, t_den); }
  static RationalPoint from(const QLabeling& l);
};

// Taylor coordinates about s0: s = s0 + u, t = phi(s0) + u phi'(s0) + v.
struct ShiftedPoint {
  mpq_class u, v;
};
std::optional<ShiftedPoint> taylor_shift(const RationalPoint& p, const IntervalSpec& I);

struct AuxPolynomial {
  unsigned K = 0, L = 0;
  std::vector<mpz_class> coeffs;  // index k * (L + 1) + l multiplies s^k t^l

  const mpz_class& coeff(unsigned k, unsigned l) const { return coeffs[k * (L + 1) + l]; }
  mpz_class max_abs_coeff() const;
  mpq_class operator()(const mpq_class& s, const mpq_class& t) const;
  // Value at p times s_den^K t_den^L: an integer, zero iff the curve passes through p.
  mpz_class cleared_value(const RationalPoint& p) const;
};

// Decompose and label each triple, keeping the points whose s lies in I.
std::vector<RationalPoint> collect_points(std::span<const SolutionTriple> triples, const DetConfig& cfg,
                                          const IntervalSpec& I);

using RationalMatrix = std::vector<std::vector<mpq_class>>;

// J x H matrix with entry s_j^k t_j^l in column k * (L + 1) + l.
RationalMatrix monomial_matrix(std::span<const RationalPoint> points, unsigned K, unsigned L);

// Integer kernel vector with content 1, attached to the first non-pivot
// column after fraction-free (Bareiss) elimination. Throws FullRank.
AuxPolynomial kernel_polynomial(const RationalMatrix& m, unsigned K, unsigned L);

// Rank of an exact rational matrix (fraction-free elimination).
std::size_t matrix_rank(const RationalMatrix& m);

struct AuxCurve {
  IntervalSpec interval;
  AuxPolynomial poly;
  std::size_t J = 0;
  bool no_points = false;  // empty interval: poly is the constant 1
  bool verified = false;   // C_I vanishes exactly at every collected point
  mpz_class max_abs_coeff;
  double kappa = 0;  // log(max |coeff|) / log x
  std::vector<RationalPoint> points;
};

// collect_points -> monomial_matrix -> kernel_polynomial, then exact
// verification. Throws FullRank when the points impose H independent
// conditions and VerificationFailed if a returned curve misses a point.
AuxCurve auxiliary_curve(std::span<const SolutionTriple> triples, const DetConfig& cfg,
                         const IntervalSpec& I);

struct CurveFailure {
  IntervalSpec interval;
  std::size_t J;
  unsigned K, L;
  std::uint64_t M;
};

struct CurveSweep {
  std::vector<AuxCurve> curves;         // successful nonempty intervals, by x3
  std::vector<CurveFailure> failures;   // FullRank intervals
  std::size_t nonempty = 0;
  double success_rate() const {
    return nonempty == 0 ? 1.0 : static_cast<double>(curves.size()) / static_cast<double>(nonempty);
  }
  double max_kappa() const;
};

// auxiliary_curve on every interval that contains at least one point.
CurveSweep auxiliary_sweep(std::span<const SolutionTriple> triples, const DetConfig& cfg);

}  // namespace sqfree
