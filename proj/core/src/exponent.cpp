#include "sqfree/exponent.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "sqfree/error.hpp"

namespace sqfree {

namespace {

// a psi^2 + b psi + c
struct Quadratic {
  long double a, b, c;
  long double operator()(long double psi) const { return (a * psi + b) * psi + c; }
};

// Smooth branches of bound(): {psi/2, 1 - psi} + {9 psi (1 - psi)/8, 1/4}.
const std::vector<Quadratic> kBranches = {
    {-9.0L / 8, 13.0L / 8, 0},
    {0, 0.5L, 0.25L},
    {-9.0L / 8, 1.0L / 8, 1},
    {0, -1, 1.25L},
};
const Quadratic kBilinear{0, -2.0L / 3, 1};

void check_range(long double psi) {
  require(psi >= kPsiMin && psi <= kPsiMax, ErrorCode::OutOfRange,
          "psi = " + std::to_string(static_cast<double>(psi)) + " outside [1/2, 3/4]");
}

long double bound_value(long double psi) {
  return 0.5L * std::min(psi, 2 - 2 * psi) + std::max(9 * psi * (1 - psi) / 8, 0.25L);
}

long double bound_v7_value(long double psi) { return std::min(bound_value(psi), kBilinear(psi)); }

void push_roots(const Quadratic& q, std::vector<long double>& out) {
  if (q.a == 0) {
    if (q.b != 0) out.push_back(-q.c / q.b);
    return;
  }
  const long double disc = q.b * q.b - 4 * q.a * q.c;
  if (disc < 0) return;
  const long double s = std::sqrt(disc);
  // Cancellation-free pair of roots.
  const long double t = -0.5L * (q.b + std::copysign(s, q.b));
  if (t != 0) {
    out.push_back(t / q.a);
    out.push_back(q.c / t);
  } else {
    out.push_back(0);
  }
}

ExponentPoint best_candidate(const std::vector<Quadratic>& branches,
                             long double (*f)(long double)) {
  std::vector<long double> candidates{kPsiMin, kPsiMax};
  for (std::size_t i = 0; i < branches.size(); ++i) {
    const auto& p = branches[i];
    if (p.a != 0) candidates.push_back(-p.b / (2 * p.a));
    for (std::size_t j = i + 1; j < branches.size(); ++j) {
      const auto& q = branches[j];
      push_roots({p.a - q.a, p.b - q.b, p.c - q.c}, candidates);
    }
  }
  ExponentPoint best{kPsiMin, f(kPsiMin)};
  for (long double psi : candidates) {
    if (!(psi >= kPsiMin && psi <= kPsiMax)) continue;
    const long double v = f(psi);
    if (v > best.bound) best = {psi, v};
  }
  return best;
}

}  // namespace

ExponentPoint exponent_bound(long double psi) {
  check_range(psi);
  return {psi, bound_value(psi)};
}

ExponentPoint exponent_bound_v7(long double psi) {
  check_range(psi);
  return {psi, bound_v7_value(psi)};
}

ExponentPoint exponent_optimum() { return best_candidate(kBranches, &bound_value); }

ExponentPoint exponent_optimum_v7() {
  auto branches = kBranches;
  branches.push_back(kBilinear);
  return best_candidate(branches, &bound_v7_value);
}

ExponentPoint maximize_on_grid(const std::function<long double(long double)>& f, long double lo,
                               long double hi, int steps) {
  require(hi > lo && steps >= 2, ErrorCode::InvalidArgument, "maximize_on_grid: empty range");
  const long double h = (hi - lo) / steps;
  int best_i = 0;
  long double best_v = f(lo);
  for (int i = 1; i <= steps; ++i) {
    const long double v = f(lo + h * i);
    if (v > best_v) {
      best_v = v;
      best_i = i;
    }
  }
  long double a = std::max(lo, lo + h * (best_i - 1));
  long double b = std::min(hi, lo + h * (best_i + 1));
  for (int iter = 0; iter < 200 && b - a > 0; ++iter) {
    const long double m1 = a + (b - a) / 3;
    const long double m2 = b - (b - a) / 3;
    if (f(m1) < f(m2)) {
      a = m1;
    } else {
      b = m2;
    }
  }
  const long double psi = (a + b) / 2;
  return {psi, f(psi)};
}

}  // namespace sqfree
