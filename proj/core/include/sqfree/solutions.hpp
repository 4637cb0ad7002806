#pragma once

// Solutions of e^2 f = n^2 + 1: enumeration by dyadic box, the negative Pell
// equation for fixed f, and the Gaussian decomposition
//   e = x1^2 + x2^2,  f = y1^2 + y2^2,  (x1 + i x2)^2 (y1 + i y2) = n + i,
// whose imaginary part gives 2 x1 x2 y1 + (x1^2 - x2^2) y2 = 1.

#include <cstdint>
#include <ostream>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "sqfree/gaussian.hpp"

namespace sqfree {

struct SolutionTriple {
  mpz_class e, f, n;

  bool valid() const { return e > 0 && f > 0 && n > 0 && e * e * f == n * n + 1; }
  friend bool operator==(const SolutionTriple& a, const SolutionTriple& b) {
    return a.e == b.e && a.f == b.f && a.n == b.n;
  }
  friend bool operator<(const SolutionTriple& a, const SolutionTriple& b) {
    if (a.e != b.e) return a.e < b.e;
    if (a.n != b.n) return a.n < b.n;
    return a.f < b.f;
  }
};

// (E/2, E] x (F/2, F].
struct DyadicBox {
  std::uint64_t E = 1;
  std::uint64_t F = 1;

  bool contains_e(const mpz_class& e) const { return 2 * e > E && e <= E; }
  bool contains_f(const mpz_class& f) const { return 2 * f > F && f <= F; }
};

// Smallest power of two P with P/2 < v <= P (P = 1 for v = 1).
std::uint64_t dyadic_top(const mpz_class& v);

struct Quadruple {
  mpz_class x1, x2, y1, y2;

  // 2 x1 x2 y1 + (x1^2 - x2^2) y2
  mpz_class unit_form() const { return 2 * x1 * x2 * y1 + (x1 * x1 - x2 * x2) * y2; }
  bool valid() const;
  friend bool operator==(const Quadruple& a, const Quadruple& b) {
    return a.x1 == b.x1 && a.x2 == b.x2 && a.y1 == b.y1 && a.y2 == b.y2;
  }
};

enum class QuadraticKind { Cross, Diff };  // 2 x1 x2  or  x1^2 - x2^2

struct QLabeling {
  Quadruple q;
  QuadraticKind q1_kind = QuadraticKind::Cross;
  mpz_class z1, z2;
  mpq_class s, t;      // x1/x2, z1/z2 (canonicalised)
  double z2_scaled = 0;  // |z2| / sqrt(F), recorded for the distribution of |z2|

  mpz_class q1_value() const;  // q1(x1, x2)
  mpz_class q2_value() const;
};

// Every (e, f, n) with e^2 f = n^2 + 1 in the box, ordered by (e, n). For each
// e the admissible n run through the progressions n = m (mod e^2) of the roots
// of m^2 + 1 = 0 (mod e^2), restricted to e^2 F/2 < n^2 + 1 <= e^2 F. The e-range
// is sharded over `threads` threads and concatenated in e-order.
std::vector<SolutionTriple> enumerate_mef(const DyadicBox& box, unsigned threads = 1);

// Solutions (n, e) of n^2 - f e^2 = -1 with 1 <= e <= e_bound, increasing.
// Empty when f is a square or the period of the continued fraction of sqrt(f) is even.
std::vector<std::pair<mpz_class, mpz_class>> pell_solutions(std::uint64_t f, const mpz_class& e_bound);

// Length of the period of the continued fraction of sqrt(f); 0 for squares.
std::size_t sqrt_cf_period(std::uint64_t f);

// v = gcd(n + i, e) (norm e), y = (n + i) / v^2, then the swap normalisation
// |x1| <= |x2| (swap x1, x2 and negate y2 when |x1| > |x2|). Throws BadTriple
// when e^2 f != n^2 + 1. Since v is taken as the canonical associate the
// result is unique.
Quadruple decompose(const SolutionTriple& t);

// (x1 + i x2)^2 (y1 + i y2); equals +-n + i for a decomposed triple
// (the swap conjugates the product and multiplies it by -1).
GaussianInt reconstruct_gaussian(const Quadruple& q);
SolutionTriple reconstruct_triple(const Quadruple& q);

// q1 is whichever of 2 x1 x2, x1^2 - x2^2 is larger in absolute value (ties go
// to the cross term); (z1, z2) = (y1, y2) for the cross term and (y2, y1) otherwise.
QLabeling q_label(const Quadruple& q, const DyadicBox& box);

// phi(s) = -q2(s, 1) / q1(s, 1) for the given labeling kind.
mpq_class phi(QuadraticKind kind, const mpq_class& s);
mpq_class phi_derivative(QuadraticKind kind, const mpq_class& s);

// t - phi(s), which equals 1 / (q1(x1, x2) z2) exactly.
mpq_class residual(const QLabeling& l);

std::ostream& operator<<(std::ostream& os, const SolutionTriple& t);
std::ostream& operator<<(std::ostream& os, const Quadruple& q);

}  // namespace sqfree
