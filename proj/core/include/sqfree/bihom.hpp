#pragma once

// Brute-force point counts for bi-homogeneous forms G(x1, x2; y1, y2) of
// bidegree (a, b): primitive (x1, x2) with max |xi| <= X and primitive
// (y1, y2) with G = 0. Test oracle for the X^{2/b} growth of such counts.

#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace sqfree {

class BihomForm {
 public:
  // coeffs[i * (b + 1) + j] multiplies x1^{a-i} x2^i y1^{b-j} y2^j.
  BihomForm(unsigned a, unsigned b, std::vector<mpz_class> coeffs);

  unsigned a() const { return a_; }
  unsigned b() const { return b_; }
  const mpz_class& coeff(unsigned i, unsigned j) const { return coeffs_[i * (b_ + 1) + j]; }
  mpz_class height() const;  // max |coefficient|

  mpz_class operator()(const mpz_class& x1, const mpz_class& x2, const mpz_class& y1,
                       const mpz_class& y2) const;
  // Coefficients g_j(x) of the binary form sum_j g_j y1^{b-j} y2^j.
  std::vector<mpz_class> y_form(const mpz_class& x1, const mpz_class& x2) const;

 private:
  unsigned a_, b_;
  std::vector<mpz_class> coeffs_;
};

struct BihomCount {
  std::uint64_t points = 0;          // (x, y) pairs, each primitive vector counted with both signs
  std::uint64_t x_vectors = 0;       // primitive x examined
  std::uint64_t degenerate_x = 0;    // x with G(x; .) identically zero (skipped)
  mpz_class y_search_bound;          // (a + 1) ||G|| X^a, the box every y lies in
};

// The y-solutions for fixed x are the primitive zeros of the binary form
// g(y) = sum_j g_j y1^{b-j} y2^j: for b = 1 the single line (g_1, -g_0)/gcd,
// for b = 2 a perfect-square discriminant test, and for larger b the
// divisor conditions y1 | g_b, y2 | g_0.
BihomCount bihom_count(const BihomForm& g, std::uint64_t X);

// Reference count scanning every primitive y with |yi| <= y_bound.
std::uint64_t bihom_count_box(const BihomForm& g, std::uint64_t X, std::uint64_t y_bound);

}  // namespace sqfree
