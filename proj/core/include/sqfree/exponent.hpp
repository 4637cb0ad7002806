#pragma once

// Exponent bookkeeping for M(E, F) with E = x^psi, 1/2 <= psi <= 3/4:
//   bound(psi)    = 1/2 min(psi, 2 - 2 psi) + max(9 psi (1 - psi) / 8, 1/4)
//   bound_v7(psi) = min(bound(psi), 1 - 2 psi / 3)   (bilinear refinement)

#include <functional>

namespace sqfree {

inline constexpr long double kPsiMin = 0.5L;
inline constexpr long double kPsiMax = 0.75L;

struct ExponentPoint {
  long double psi = 0;
  long double bound = 0;
};

ExponentPoint exponent_bound(long double psi);
ExponentPoint exponent_bound_v7(long double psi);

// Exact maximisers: both functions are piecewise quadratic, so the maximum is
// attained at an endpoint, a stationary point of some branch, or a point where
// two branches meet. All such candidates are evaluated.
ExponentPoint exponent_optimum();
ExponentPoint exponent_optimum_v7();

// Independent numeric maximiser: a uniform grid of `steps` intervals followed
// by ternary-search refinement around the best grid point.
ExponentPoint maximize_on_grid(const std::function<long double(long double)>& f,
                               long double lo, long double hi, int steps = 20000);

}  // namespace sqfree
