#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

namespace sqfree {

// All primes <= limit, by a plain sieve of Eratosthenes.
std::vector<std::uint32_t> primes_up_to(std::uint64_t limit);

// Primes <= 10^6, computed once. Used as the trial-division table.
const std::vector<std::uint32_t>& small_primes();
inline constexpr std::uint32_t kTrialDivisionBound = 1'000'000;

// Calls fn(p) for every prime p <= limit in increasing order. Segmented, so
// memory stays O(sqrt(limit) + segment) even for limit ~ 10^9.
template <class Fn>
void for_each_prime(std::uint64_t limit, Fn&& fn) {
  if (limit < 2) return;
  const auto root = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(limit))) + 1;
  const auto base = primes_up_to(root);
  constexpr std::uint64_t kSegment = 1u << 18;
  std::vector<char> composite(kSegment);
  for (std::uint64_t lo = 2; lo <= limit; lo += kSegment) {
    const std::uint64_t hi = std::min(limit, lo + kSegment - 1);
    std::fill(composite.begin(), composite.end(), 0);
    for (std::uint64_t p : base) {
      if (p * p > hi) break;
      std::uint64_t start = std::max(p * p, (lo + p - 1) / p * p);
      for (std::uint64_t m = start; m <= hi; m += p) composite[m - lo] = 1;
    }
    for (std::uint64_t n = lo; n <= hi; ++n) {
      if (!composite[n - lo]) fn(n);
    }
  }
}

// Moebius function mu(n) for 0 <= n <= limit (mu(0) is stored as 0).
std::vector<std::int8_t> mobius_up_to(std::uint64_t limit);

}  // namespace sqfree
