#pragma once

// N(x) = #{1 <= n <= x : n^2 + 1 square-free}, its decomposition by divisors
// d^2 | n^2 + 1, and the density constant c0 = prod_{p = 1 mod 4} (1 - 2/p^2)
// = sum_d mu(d) rho(d) / d^2 (about 0.894841).

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace sqfree {

inline constexpr std::uint64_t kDirectCountLimit = 10'000'000;
inline constexpr std::uint64_t kReferenceCutoff = 100'000'000;

struct CountReport {
  std::uint64_t x = 0;
  std::uint64_t count = 0;    // N(x), exact
  long double main = 0;       // c0 * x
  long double error = 0;      // count - main
  long double main_tail = 0;  // |c0 - reference| bound times x
};

// Tests is_squarefree(n^2 + 1) for every n <= x. Throws RangeTooLarge above `limit`.
CountReport count_direct(std::uint64_t x, std::uint64_t limit = kDirectCountLimit);

// Marks n = m (mod p^2) for the two roots m of each prime p = 1 (mod 4), p <= x.
// No prime above x has p^2 | n^2 + 1 when n <= x. Chunks of [1, x] are sieved
// on up to `threads` threads; the merge is a plain sum, so results do not
// depend on the thread count.
CountReport count_sieve(std::uint64_t x, unsigned threads = 1);

// flags[n] = 1 iff n^2 + 1 is square-free, for 0 <= n <= x (flags[0] = 1).
std::vector<std::uint8_t> squarefree_flags(std::uint64_t x, unsigned threads = 1);

// Divisor decomposition on the window (x, 2x]:
//   N(2x) - N(x) = sum_{d <= D} mu(d) #{x < n <= 2x : d^2 | n^2 + 1} + (same sum over d > D).
struct EstermannSplit {
  std::uint64_t x = 0;
  std::uint64_t D = 0;
  long double main_sum = 0;           // x * sum_{d <= D} mu(d) rho(d) / d^2
  std::int64_t progression_total = 0;  // exact d <= D part
  std::uint64_t tail_triples = 0;      // #{(d, n) : d > D, mu(d) != 0, d^2 | n^2 + 1}
  std::int64_t tail_signed = 0;        // the same pairs weighted by mu(d)
  std::uint64_t exact = 0;             // N(2x) - N(x)

  std::int64_t discrepancy() const {
    return static_cast<std::int64_t>(exact) - progression_total - tail_signed;
  }
};

// D defaults to floor(sqrt(x)). Requires 1 <= D <= x.
EstermannSplit estermann_split(std::uint64_t x, std::optional<std::uint64_t> D = std::nullopt);

// #{x < n <= 2x : d^2 | n^2 + 1}, summed over the roots of d^2.
std::uint64_t progression_count(std::uint64_t d, std::uint64_t x);

enum class ConstantMethod { PrimeProduct, MuRhoSeries };
std::string_view to_string(ConstantMethod m);

struct ConstantEstimate {
  long double value = 0;
  long double tail_bound = 0;  // c0 lies in [value - tail_bound, value + tail_bound]
  ConstantMethod method = ConstantMethod::PrimeProduct;
  std::uint64_t cutoff = 0;

  long double lo() const { return value - tail_bound; }
  long double hi() const { return value + tail_bound; }
  long double width() const { return 2 * tail_bound; }
  bool overlaps(const ConstantEstimate& o) const { return lo() <= o.hi() && o.lo() <= hi(); }
};

// prod_{p <= P, p = 1 mod 4} (1 - 2 p^-2). The log of the missing factors is
// at most sum_{p > P} 2 p^-2 (25/23) < 4/P, so c0 lies in
// [value * exp(-4/P), value]; tail_bound = value * (1 - exp(-4/P)).
ConstantEstimate c0_product(std::uint64_t P);

// sum_{d <= D} mu(d) rho(d) / d^2 with tail_bound = kSeriesTailConstant / D.
inline constexpr long double kSeriesTailConstant = 8.0L;
ConstantEstimate c0_series(std::uint64_t D);

// c0_product(10^8), computed once per process.
const ConstantEstimate& c0_reference();

// Exact counts at each grid point (one sieve pass up to the largest point).
// The grid must be strictly ascending with maximum <= 10^7. `c0` overrides the
// reference constant.
std::vector<CountReport> error_scan(std::span<const std::uint64_t> grid, unsigned threads = 1,
                                    std::optional<ConstantEstimate> c0 = std::nullopt);

// Unweighted least-squares slope of log|error| on log x over rows with error != 0.
// Throws DegenerateFit with fewer than three usable rows.
double fit_exponent(std::span<const CountReport> reports);

// `points` integers log-spaced from lo to hi inclusive (duplicates removed).
std::vector<std::uint64_t> log_grid(std::uint64_t lo, std::uint64_t hi, std::size_t points);

}  // namespace sqfree
