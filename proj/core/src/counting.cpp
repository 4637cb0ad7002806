#include "sqfree/counting.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <thread>

#include "sqfree/arith.hpp"
#include "sqfree/error.hpp"
#include "sqfree/primes.hpp"

namespace sqfree {

namespace {

struct PrimeSquareRoots {
  u64 modulus;  // p^2
  u64 r1, r2;   // the two roots of m^2 + 1 = 0 (mod p^2)
};

std::vector<PrimeSquareRoots> prime_square_roots(u64 x) {
  std::vector<PrimeSquareRoots> out;
  for_each_prime(x, [&](u64 p) {
    if (p % 4 != 1) return;
    const ModRoot lifted = lift_root(ModRoot{p, 1, sqrt_minus_one(p)}, 2);
    const u64 q = lifted.modulus();
    out.push_back({q, lifted.r, q - lifted.r});
  });
  return out;
}

// Clears flags for n in [lo, hi] with some p^2 | n^2 + 1. flags[i] covers n = lo + i.
void mark_chunk(u64 lo, u64 hi, std::span<const PrimeSquareRoots> roots, std::span<std::uint8_t> flags) {
  for (const auto& pr : roots) {
    for (u64 r : {pr.r1, pr.r2}) {
      u64 n = r;
      if (n < lo) n += (lo - n + pr.modulus - 1) / pr.modulus * pr.modulus;
      for (; n <= hi; n += pr.modulus) flags[n - lo] = 0;
    }
  }
}

long double reference_c0_or(const std::optional<ConstantEstimate>& c0) {
  return c0 ? c0->value : c0_reference().value;
}

// floor(a / b) for b > 0.
std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && (a < 0)) --q;
  return q;
}

std::uint64_t window_count(u64 m, u64 q, u64 x) {
  // q may exceed the int64 range only for d > 3e9, which never occurs here.
  const auto qi = static_cast<std::int64_t>(q);
  const auto mi = static_cast<std::int64_t>(m);
  const auto xi = static_cast<std::int64_t>(x);
  return static_cast<std::uint64_t>(floor_div(2 * xi - mi, qi) - floor_div(xi - mi, qi));
}

}  // namespace

CountReport count_direct(std::uint64_t x, std::uint64_t limit) {
  require(x >= 1, ErrorCode::InvalidArgument, "count_direct requires x >= 1");
  require(x <= limit, ErrorCode::RangeTooLarge,
          "count_direct: x = " + std::to_string(x) + " exceeds limit " + std::to_string(limit));
  CountReport rep{x, 0};
  for (u64 n = 1; n <= x; ++n) {
    if (is_squarefree(n * n + 1)) ++rep.count;
  }
  const auto& c0 = c0_reference();
  rep.main = c0.value * x;
  rep.error = static_cast<long double>(rep.count) - rep.main;
  rep.main_tail = c0.tail_bound * x;
  return rep;
}

std::vector<std::uint8_t> squarefree_flags(std::uint64_t x, unsigned threads) {
  require(x >= 1, ErrorCode::InvalidArgument, "squarefree_flags requires x >= 1");
  std::vector<std::uint8_t> flags(x + 1, 1);
  const auto roots = prime_square_roots(x);
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::min<u64>(x, 256))));
  const u64 chunk = (x + threads) / threads;
  std::vector<std::thread> workers;
  for (unsigned t = 0; t < threads; ++t) {
    const u64 lo = t * chunk;
    if (lo > x) break;
    const u64 hi = std::min(x, lo + chunk - 1);
    auto slice = std::span(flags).subspan(lo, hi - lo + 1);
    if (threads == 1) {
      mark_chunk(lo, hi, roots, slice);
    } else {
      workers.emplace_back([lo, hi, slice, &roots] { mark_chunk(lo, hi, roots, slice); });
    }
  }
  for (auto& w : workers) w.join();
  flags[0] = 1;
  return flags;
}

CountReport count_sieve(std::uint64_t x, unsigned threads) {
  const auto flags = squarefree_flags(x, threads);
  CountReport rep{x, 0};
  rep.count = static_cast<u64>(std::count(flags.begin() + 1, flags.end(), std::uint8_t{1}));
  const auto& c0 = c0_reference();
  rep.main = c0.value * x;
  rep.error = static_cast<long double>(rep.count) - rep.main;
  rep.main_tail = c0.tail_bound * x;
  return rep;
}

std::uint64_t progression_count(std::uint64_t d, std::uint64_t x) {
  const u64 q = d * d;
  std::uint64_t total = 0;
  for (u64 m : roots_mod_square(d)) total += window_count(m, q, x);
  return total;
}

EstermannSplit estermann_split(std::uint64_t x, std::optional<std::uint64_t> D) {
  require(x >= 1, ErrorCode::InvalidArgument, "estermann_split requires x >= 1");
  const u64 cut = D.value_or(isqrt(x));
  require(cut >= 1 && cut <= x, ErrorCode::InvalidArgument,
          "estermann_split requires 1 <= D <= x (D = " + std::to_string(cut) + ")");
  EstermannSplit out;
  out.x = x;
  out.D = cut;

  // d^2 <= n^2 + 1 <= 4x^2 + 1 forces d <= 2x.
  const u64 d_max = 2 * x;
  const auto mu = mobius_up_to(d_max);
  long double series = 0;
  for (u64 d = 1; d <= d_max; ++d) {
    if (mu[d] == 0 || d % 2 == 0) continue;
    const auto roots = roots_mod_square(d);
    if (roots.empty()) continue;
    const u64 q = d * d;
    std::uint64_t c = 0;
    for (u64 m : roots) c += window_count(m, q, x);
    const auto signed_c = static_cast<std::int64_t>(c) * mu[d];
    if (d <= cut) {
      out.progression_total += signed_c;
      series += static_cast<long double>(mu[d]) * roots.size() / (static_cast<long double>(d) * d);
    } else {
      out.tail_triples += c;
      out.tail_signed += signed_c;
    }
  }
  out.main_sum = x * series;

  const auto flags = squarefree_flags(2 * x);
  out.exact = static_cast<u64>(
      std::count(flags.begin() + static_cast<std::ptrdiff_t>(x) + 1, flags.end(), std::uint8_t{1}));
  return out;
}

std::string_view to_string(ConstantMethod m) {
  return m == ConstantMethod::PrimeProduct ? "prime-product" : "mu-rho-series";
}

ConstantEstimate c0_product(std::uint64_t P) {
  require(P >= 5, ErrorCode::InvalidArgument, "c0_product requires P >= 5");
  long double product = 1.0L;
  for_each_prime(P, [&](u64 p) {
    if (p % 4 == 1) {
      const long double pp = static_cast<long double>(p) * p;
      product *= 1 - 2 / pp;
    }
  });
  ConstantEstimate est;
  est.value = product;
  est.tail_bound = -product * std::expm1(-4.0L / P);
  est.method = ConstantMethod::PrimeProduct;
  est.cutoff = P;
  return est;
}

ConstantEstimate c0_series(std::uint64_t D) {
  require(D >= 1, ErrorCode::InvalidArgument, "c0_series requires D >= 1");
  const auto mu = mobius_up_to(D);
  long double sum = 0;
  for (u64 d = 1; d <= D; ++d) {
    if (mu[d] == 0 || d % 2 == 0) continue;
    const u64 r = rho(d).rho;
    if (r == 0) continue;
    sum += static_cast<long double>(mu[d]) * r / (static_cast<long double>(d) * d);
  }
  ConstantEstimate est;
  est.value = sum;
  est.tail_bound = kSeriesTailConstant / D;
  est.method = ConstantMethod::MuRhoSeries;
  est.cutoff = D;
  return est;
}

const ConstantEstimate& c0_reference() {
  static const ConstantEstimate ref = c0_product(kReferenceCutoff);
  return ref;
}

std::vector<CountReport> error_scan(std::span<const std::uint64_t> grid, unsigned threads,
                                    std::optional<ConstantEstimate> c0) {
  require(!grid.empty(), ErrorCode::InvalidArgument, "error_scan: empty grid");
  require(grid.front() >= 1, ErrorCode::InvalidArgument, "error_scan: grid points must be >= 1");
  require(std::adjacent_find(grid.begin(), grid.end(), std::greater_equal<>()) == grid.end(),
          ErrorCode::InvalidArgument, "error_scan: grid must be strictly ascending");
  require(grid.back() <= kDirectCountLimit, ErrorCode::RangeTooLarge,
          "error_scan: grid maximum exceeds 10^7");
  const long double c = reference_c0_or(c0);
  const long double tail = c0 ? c0->tail_bound : c0_reference().tail_bound;
  const auto flags = squarefree_flags(grid.back(), threads);
  std::vector<CountReport> out;
  u64 running = 0, n = 0;
  for (u64 x : grid) {
    for (; n < x; ++n) running += flags[n + 1];
    CountReport rep{x, running};
    rep.main = c * x;
    rep.error = static_cast<long double>(running) - rep.main;
    rep.main_tail = tail * x;
    out.push_back(rep);
  }
  return out;
}

double fit_exponent(std::span<const CountReport> reports) {
  std::vector<std::pair<long double, long double>> pts;
  for (const auto& r : reports) {
    if (r.error == 0 || r.x == 0) continue;
    pts.emplace_back(std::log(static_cast<long double>(r.x)), std::log(std::fabs(r.error)));
  }
  require(pts.size() >= 3, ErrorCode::DegenerateFit,
          "need at least 3 rows with nonzero error, have " + std::to_string(pts.size()));
  long double mx = 0, my = 0;
  for (const auto& [a, b] : pts) {
    mx += a;
    my += b;
  }
  mx /= pts.size();
  my /= pts.size();
  long double sxy = 0, sxx = 0;
  for (const auto& [a, b] : pts) {
    sxy += (a - mx) * (b - my);
    sxx += (a - mx) * (a - mx);
  }
  require(sxx > 0, ErrorCode::DegenerateFit, "all usable rows share the same x");
  return static_cast<double>(sxy / sxx);
}

std::vector<std::uint64_t> log_grid(std::uint64_t lo, std::uint64_t hi, std::size_t points) {
  require(lo >= 1 && hi >= lo && points >= 1, ErrorCode::InvalidArgument, "log_grid: bad range");
  std::vector<std::uint64_t> out;
  if (points == 1) return {lo};
  const long double a = std::log(static_cast<long double>(lo));
  const long double b = std::log(static_cast<long double>(hi));
  for (std::size_t i = 0; i < points; ++i) {
    const long double t = a + (b - a) * i / (points - 1);
    const auto v = static_cast<std::uint64_t>(std::llround(std::exp(t)));
    if (out.empty() || v > out.back()) out.push_back(std::clamp(v, lo, hi));
  }
  return out;
}

}  // namespace sqfree
