#include "sqfree/primes.hpp"

namespace sqfree {

std::vector<std::uint32_t> primes_up_to(std::uint64_t limit) {
  std::vector<std::uint32_t> out;
  if (limit < 2) return out;
  std::vector<bool> composite(limit + 1, false);
  for (std::uint64_t p = 2; p * p <= limit; ++p) {
    if (composite[p]) continue;
    for (std::uint64_t m = p * p; m <= limit; m += p) composite[m] = true;
  }
  for (std::uint64_t n = 2; n <= limit; ++n) {
    if (!composite[n]) out.push_back(static_cast<std::uint32_t>(n));
  }
  return out;
}

const std::vector<std::uint32_t>& small_primes() {
  static const std::vector<std::uint32_t> table = primes_up_to(kTrialDivisionBound);
  return table;
}

std::vector<std::int8_t> mobius_up_to(std::uint64_t limit) {
  std::vector<std::int8_t> mu(limit + 1, 1);
  mu[0] = 0;
  std::vector<bool> composite(limit + 1, false);
  for (std::uint64_t p = 2; p <= limit; ++p) {
    if (composite[p]) continue;
    for (std::uint64_t m = p; m <= limit; m += p) {
      if (m > p) composite[m] = true;
      mu[m] = static_cast<std::int8_t>(-mu[m]);
    }
    if (p * p <= limit) {
      for (std::uint64_t m = p * p; m <= limit; m += p * p) mu[m] = 0;
    }
  }
  return mu;
}

}  // namespace sqfree
