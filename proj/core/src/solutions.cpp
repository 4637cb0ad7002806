#include "sqfree/solutions.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <thread>

#include "sqfree/arith.hpp"
#include "sqfree/error.hpp"

namespace sqfree {

namespace {

mpz_class floor_sqrt(const mpz_class& v) {
  mpz_class r;
  mpz_sqrt(r.get_mpz_t(), v.get_mpz_t());
  return r;
}

mpz_class ceil_sqrt(const mpz_class& v) {
  mpz_class r = floor_sqrt(v);
  if (r * r < v) ++r;
  return r;
}

void enumerate_e(std::uint64_t e, std::uint64_t F, std::vector<SolutionTriple>& out) {
  const auto roots = roots_mod_square(e);
  if (roots.empty()) return;
  const mpz_class q = mpz_class(e) * e;
  const mpz_class top = q * F;  // n^2 + 1 <= e^2 F
  if (top < 2) return;
  const mpz_class n_max = floor_sqrt(top - 1);
  // 2(n^2 + 1) > e^2 F  <=>  n^2 >= floor((e^2 F - 2) / 2) + 1
  mpz_class n_min = 1;
  if (top >= 2) {
    mpz_class t = top - 2;
    mpz_fdiv_q_2exp(t.get_mpz_t(), t.get_mpz_t(), 1);
    n_min = std::max(n_min, ceil_sqrt(t + 1));
  }
  if (n_min > n_max) return;
  const std::size_t first = out.size();
  for (std::uint64_t m : roots) {
    mpz_class n = m;
    if (n < n_min) {
      mpz_class steps = n_min - n;
      mpz_cdiv_q(steps.get_mpz_t(), steps.get_mpz_t(), q.get_mpz_t());
      n += steps * q;
    }
    for (; n <= n_max; n += q) {
      mpz_class f = n * n + 1;
      mpz_divexact(f.get_mpz_t(), f.get_mpz_t(), q.get_mpz_t());
      out.push_back({mpz_class(e), std::move(f), n});
    }
  }
  std::sort(out.begin() + static_cast<std::ptrdiff_t>(first), out.end());
}

}  // namespace

std::uint64_t dyadic_top(const mpz_class& v) {
  require(v >= 1, ErrorCode::InvalidArgument, "dyadic_top requires v >= 1");
  std::uint64_t p = 1;
  while (p < v) p *= 2;
  return p;
}

bool Quadruple::valid() const {
  mpz_class gx, gy;
  mpz_gcd(gx.get_mpz_t(), x1.get_mpz_t(), x2.get_mpz_t());
  mpz_gcd(gy.get_mpz_t(), y1.get_mpz_t(), y2.get_mpz_t());
  return unit_form() == 1 && gx == 1 && gy == 1 && abs(x1) <= abs(x2);
}

mpz_class QLabeling::q1_value() const {
  return q1_kind == QuadraticKind::Cross ? mpz_class(2 * q.x1 * q.x2) : mpz_class(q.x1 * q.x1 - q.x2 * q.x2);
}

mpz_class QLabeling::q2_value() const {
  return q1_kind == QuadraticKind::Cross ? mpz_class(q.x1 * q.x1 - q.x2 * q.x2) : mpz_class(2 * q.x1 * q.x2);
}

std::vector<SolutionTriple> enumerate_mef(const DyadicBox& box, unsigned threads) {
  require(box.E >= 1 && box.F >= 1, ErrorCode::InvalidArgument, "enumerate_mef requires E, F >= 1");
  require(box.E < (std::uint64_t{1} << 32), ErrorCode::OutOfRange, "enumerate_mef requires E < 2^32");
  const std::uint64_t lo = box.E / 2 + 1, hi = box.E;
  const std::uint64_t span = hi - lo + 1;
  threads = std::max(1u, static_cast<unsigned>(std::min<std::uint64_t>(threads, span)));
  std::vector<std::vector<SolutionTriple>> parts(threads);
  auto work = [&](unsigned t) {
    const std::uint64_t a = lo + span * t / threads;
    const std::uint64_t b = lo + span * (t + 1) / threads;
    for (std::uint64_t e = a; e < b; ++e) enumerate_e(e, box.F, parts[t]);
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
    for (auto& th : pool) th.join();
  }
  std::vector<SolutionTriple> out;
  for (auto& p : parts) {
    out.insert(out.end(), std::make_move_iterator(p.begin()), std::make_move_iterator(p.end()));
  }
  return out;
}

std::size_t sqrt_cf_period(std::uint64_t f) {
  const std::uint64_t a0 = isqrt(f);
  if (a0 * a0 == f) return 0;
  std::uint64_t m = 0, d = 1, a = a0;
  std::size_t period = 0;
  do {
    m = d * a - m;
    d = (f - m * m) / d;
    a = (a0 + m) / d;
    ++period;
  } while (a != 2 * a0);
  return period;
}

std::vector<std::pair<mpz_class, mpz_class>> pell_solutions(std::uint64_t f, const mpz_class& e_bound) {
  require(f >= 1, ErrorCode::InvalidArgument, "pell_solutions requires f >= 1");
  std::vector<std::pair<mpz_class, mpz_class>> out;
  const std::size_t period = sqrt_cf_period(f);
  if (period == 0 || period % 2 == 0) return out;

  // Convergent p_{period-1} / q_{period-1} is the fundamental solution of n^2 - f e^2 = -1.
  const std::uint64_t a0 = isqrt(f);
  std::uint64_t m = 0, d = 1, a = a0;
  mpz_class p_prev = 1, p = a0, q_prev = 0, q = 1;
  for (std::size_t i = 1; i < period; ++i) {
    m = d * a - m;
    d = (f - m * m) / d;
    a = (a0 + m) / d;
    mpz_class p_next = a * p + p_prev, q_next = a * q + q_prev;
    p_prev = std::move(p);
    p = std::move(p_next);
    q_prev = std::move(q);
    q = std::move(q_next);
  }
  require(p * p - f * q * q == -1, ErrorCode::VerificationFailed,
          "fundamental solution check failed for f = " + std::to_string(f));

  // Odd powers of the fundamental unit: multiply by (p + q sqrt f)^2 = u + v sqrt f.
  const mpz_class u = p * p + f * q * q, v = 2 * p * q;
  mpz_class n = p, e = q;
  while (e <= e_bound) {
    out.emplace_back(n, e);
    mpz_class n_next = u * n + f * v * e;
    mpz_class e_next = v * n + u * e;
    n = std::move(n_next);
    e = std::move(e_next);
  }
  return out;
}

Quadruple decompose(const SolutionTriple& t) {
  require(t.valid(), ErrorCode::BadTriple,
          "(" + t.e.get_str() + ", " + t.f.get_str() + ", " + t.n.get_str() + ") violates e^2 f = n^2 + 1");
  const GaussianInt target{t.n, mpz_class(1)};
  const GaussianInt v = gaussian_gcd(target, GaussianInt{t.e, mpz_class(0)});
  require(v.norm() == t.e, ErrorCode::BadTriple, "gcd(n + i, e) does not have norm e");
  const auto y = exact_div(target, v * v);
  require(y.has_value(), ErrorCode::BadTriple, "gcd(n + i, e)^2 does not divide n + i");
  Quadruple q{v.re, v.im, y->re, y->im};
  if (abs(q.x1) > abs(q.x2)) {
    std::swap(q.x1, q.x2);
    q.y2 = -q.y2;
  }
  return q;
}

GaussianInt reconstruct_gaussian(const Quadruple& q) {
  const GaussianInt x{q.x1, q.x2};
  return x * x * GaussianInt{q.y1, q.y2};
}

SolutionTriple reconstruct_triple(const Quadruple& q) {
  const GaussianInt g = reconstruct_gaussian(q);
  require(g.im == 1, ErrorCode::BadTriple, "quadruple does not reconstruct to +-n + i");
  return {q.x1 * q.x1 + q.x2 * q.x2, q.y1 * q.y1 + q.y2 * q.y2, abs(g.re)};
}

QLabeling q_label(const Quadruple& q, const DyadicBox& box) {
  QLabeling l;
  l.q = q;
  const mpz_class cross = 2 * q.x1 * q.x2;
  const mpz_class diff = q.x1 * q.x1 - q.x2 * q.x2;
  if (abs(cross) >= abs(diff)) {
    l.q1_kind = QuadraticKind::Cross;
    l.z1 = q.y1;
    l.z2 = q.y2;
  } else {
    l.q1_kind = QuadraticKind::Diff;
    l.z1 = q.y2;
    l.z2 = q.y1;
  }
  require(q.x2 != 0 && l.z2 != 0, ErrorCode::DegenerateDenominator, "x2 or z2 is zero");
  l.s = mpq_class(q.x1, q.x2);
  l.s.canonicalize();
  l.t = mpq_class(l.z1, l.z2);
  l.t.canonicalize();
  l.z2_scaled = std::fabs(l.z2.get_d()) / std::sqrt(static_cast<double>(box.F));
  return l;
}

mpq_class phi(QuadraticKind kind, const mpq_class& s) {
  const mpq_class cross = 2 * s;
  const mpq_class diff = s * s - 1;
  const mpq_class& q1 = kind == QuadraticKind::Cross ? cross : diff;
  const mpq_class& q2 = kind == QuadraticKind::Cross ? diff : cross;
  require(q1 != 0, ErrorCode::DegenerateDenominator, "q1(s, 1) vanishes at s = " + s.get_str());
  mpq_class out = -q2 / q1;
  out.canonicalize();
  return out;
}

mpq_class phi_derivative(QuadraticKind kind, const mpq_class& s) {
  const mpq_class s2 = s * s;
  mpq_class out;
  if (kind == QuadraticKind::Cross) {
    require(s != 0, ErrorCode::DegenerateDenominator, "phi' undefined at s = 0");
    out = -(1 + s2) / (2 * s2);
  } else {
    const mpq_class den = 1 - s2;
    require(den != 0, ErrorCode::DegenerateDenominator, "phi' undefined at s = +-1");
    out = 2 * (1 + s2) / (den * den);
  }
  out.canonicalize();
  return out;
}

mpq_class residual(const QLabeling& l) {
  mpq_class r = l.t - phi(l.q1_kind, l.s);
  r.canonicalize();
  return r;
}

std::ostream& operator<<(std::ostream& os, const SolutionTriple& t) {
  return os << t.e << ',' << t.f << ',' << t.n;
}

std::ostream& operator<<(std::ostream& os, const Quadruple& q) {
  return os << q.x1 << ',' << q.x2 << ',' << q.y1 << ',' << q.y2;
}

}  // namespace sqfree
