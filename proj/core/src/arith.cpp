#include "sqfree/arith.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <tuple>
#include <utility>

#include "sqfree/error.hpp"
#include "sqfree/primes.hpp"

namespace sqfree {

namespace {

using i128 = __int128;

u64 pollard_brent(u64 n, u64 seed) {
  if (n % 2 == 0) return 2;
  u64 y = seed % n, c = seed % (n - 1) + 1, m = 128;
  u64 g = 1, r = 1, q = 1, x = 0, ys = 0;
  auto f = [&](u64 v) { return (mulmod(v, v, n) + c) % n; };
  while (g == 1) {
    x = y;
    for (u64 i = 0; i < r; ++i) y = f(y);
    u64 k = 0;
    while (k < r && g == 1) {
      ys = y;
      for (u64 i = 0; i < std::min(m, r - k); ++i) {
        y = f(y);
        q = mulmod(q, x > y ? x - y : y - x, n);
      }
      g = std::gcd(q, n);
      k += m;
    }
    r *= 2;
  }
  if (g == n) {
    do {
      ys = f(ys);
      g = std::gcd(x > ys ? x - ys : ys - x, n);
    } while (g == 1);
  }
  return g;
}

void split_into(u64 n, std::vector<u64>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    out.push_back(n);
    return;
  }
  if (is_perfect_square(n)) {
    const u64 r = isqrt(n);
    split_into(r, out);
    split_into(r, out);
    return;
  }
  u64 d = n;
  for (u64 seed = 2; d == n; ++seed) d = pollard_brent(n, seed);
  split_into(d, out);
  split_into(n / d, out);
}

// Same algorithm on GMP integers for cofactors beyond 64 bits.
mpz_class pollard_brent(const mpz_class& n, unsigned long seed) {
  if (mpz_even_p(n.get_mpz_t())) return 2;
  mpz_class y = seed, c = seed + 1, g = 1, q = 1, x, ys;
  unsigned long r = 1;
  const unsigned long m = 128;
  auto f = [&](const mpz_class& v) {
    mpz_class w = v * v + c;
    mpz_mod(w.get_mpz_t(), w.get_mpz_t(), n.get_mpz_t());
    return w;
  };
  while (g == 1) {
    x = y;
    for (unsigned long i = 0; i < r; ++i) y = f(y);
    unsigned long k = 0;
    while (k < r && g == 1) {
      ys = y;
      for (unsigned long i = 0; i < std::min(m, r - k); ++i) {
        y = f(y);
        mpz_class diff = abs(x - y);
        q = q * diff;
        mpz_mod(q.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
      }
      mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
      k += m;
    }
    r *= 2;
  }
  if (g == n) {
    do {
      ys = f(ys);
      mpz_class diff = abs(x - ys);
      mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
    } while (g == 1);
  }
  return g;
}

bool probably_prime(const mpz_class& n) { return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0; }

void split_into(const mpz_class& n, std::vector<mpz_class>& out) {
  if (n == 1) return;
  if (probably_prime(n)) {
    out.push_back(n);
    return;
  }
  if (mpz_perfect_square_p(n.get_mpz_t())) {
    mpz_class r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    split_into(r, out);
    split_into(r, out);
    return;
  }
  mpz_class d = n;
  for (unsigned long seed = 2; d == n; ++seed) d = pollard_brent(n, seed);
  split_into(d, out);
  split_into(mpz_class(n / d), out);
}

}  // namespace

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

u64 powmod(u64 base, u64 exp, u64 m) {
  u64 result = 1 % m;
  base %= m;
  while (exp) {
    if (exp & 1) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return result;
}

u64 invmod(u64 a, u64 m) {
  i128 t = 0, new_t = 1, r = m, new_r = a % m;
  while (new_r != 0) {
    const i128 q = r / new_r;
    std::tie(t, new_t) = std::pair{new_t, t - q * new_t};
    std::tie(r, new_r) = std::pair{new_r, r - q * new_r};
  }
  require(r == 1, ErrorCode::InvalidArgument, "value not invertible modulo " + std::to_string(m));
  if (t < 0) t += m;
  return static_cast<u64>(t);
}

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  unsigned s = 0;
  while (d % 2 == 0) {
    d /= 2;
    ++s;
  }
  for (u64 a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

u64 isqrt(u64 n) {
  u64 r = static_cast<u64>(std::sqrt(static_cast<long double>(n)));
  while (r > 0 && static_cast<u128>(r) * r > n) --r;
  while (static_cast<u128>(r + 1) * (r + 1) <= n) ++r;
  return r;
}

bool is_perfect_square(u64 n) {
  const u64 r = isqrt(n);
  return static_cast<u128>(r) * r == n;
}

std::vector<PrimePower> factorize(u64 n) {
  require(n >= 1, ErrorCode::InvalidArgument, "factorize requires n >= 1");
  std::vector<PrimePower> out;
  for (u64 p : small_primes()) {
    if (p * p > n) break;
    if (n % p) continue;
    unsigned k = 0;
    while (n % p == 0) {
      n /= p;
      ++k;
    }
    out.push_back({p, k});
  }
  if (n > 1) {
    std::vector<u64> rest;
    split_into(n, rest);
    std::sort(rest.begin(), rest.end());
    for (u64 p : rest) {
      if (!out.empty() && out.back().p == p) {
        ++out.back().k;
      } else {
        out.push_back({p, 1});
      }
    }
  }
  return out;
}

u64 sqrt_mod(u64 a, u64 p) {
  require(p > 2 && p % 2 == 1, ErrorCode::InvalidArgument, "sqrt_mod needs an odd prime modulus");
  a %= p;
  if (a == 0) return 0;
  require(powmod(a, (p - 1) / 2, p) == 1, ErrorCode::InvalidArgument,
          std::to_string(a) + " is not a square modulo " + std::to_string(p));
  u64 r;
  if (p % 4 == 3) {
    r = powmod(a, (p + 1) / 4, p);
  } else if (p % 8 == 5) {
    const u64 two_a = mulmod(2, a, p);
    const u64 v = powmod(two_a, (p - 5) / 8, p);
    const u64 i = mulmod(two_a, mulmod(v, v, p), p);
    r = mulmod(mulmod(a, v, p), (i + p - 1) % p, p);
  } else {
    u64 q = p - 1;
    unsigned s = 0;
    while (q % 2 == 0) {
      q /= 2;
      ++s;
    }
    u64 z = 2;
    while (powmod(z, (p - 1) / 2, p) != p - 1) ++z;
    u64 c = powmod(z, q, p);
    u64 t = powmod(a, q, p);
    r = powmod(a, (q + 1) / 2, p);
    unsigned m = s;
    while (t != 1) {
      unsigned i = 0;
      for (u64 tt = t; tt != 1; tt = mulmod(tt, tt, p)) ++i;
      u64 b = c;
      for (unsigned j = 0; j + i + 1 < m; ++j) b = mulmod(b, b, p);
      r = mulmod(r, b, p);
      c = mulmod(b, b, p);
      t = mulmod(t, c, p);
      m = i;
    }
  }
  require(mulmod(r, r, p) == a, ErrorCode::InvalidArgument, "modulus is not prime");
  return r;
}

u64 sqrt_minus_one(u64 p) {
  require(p % 4 == 1, ErrorCode::NotOneModFour,
          std::to_string(p) + " is not 1 mod 4; -1 has no square root at the square level");
  require(is_prime(p), ErrorCode::InvalidArgument, std::to_string(p) + " is not prime");
  const u64 r = sqrt_mod(p - 1, p);
  return std::min(r, p - r);
}

u64 ModRoot::modulus() const {
  u128 m = 1;
  for (unsigned i = 0; i < k; ++i) {
    m *= p;
    require(m <= UINT64_MAX, ErrorCode::OutOfRange,
            std::to_string(p) + "^" + std::to_string(k) + " exceeds 64 bits");
  }
  return static_cast<u64>(m);
}

bool ModRoot::valid() const {
  if (p % 4 != 1 || k < 1 || !is_prime(p)) return false;
  const u64 m = modulus();
  return r < m && (mulmod(r, r, m) + 1) % m == 0;
}

ModRoot lift_root(const ModRoot& root, unsigned target_k) {
  require(root.valid(), ErrorCode::InvalidArgument, "lift_root: input is not a root of x^2 + 1");
  require(target_k >= root.k, ErrorCode::InvalidArgument, "lift_root: target exponent below current");
  ModRoot target{root.p, target_k, 0};
  const u64 final_modulus = target.modulus();
  u64 r = root.r;
  unsigned k = root.k;
  while (k < target_k) {
    // Newton step doubles the precision: r <- r - (r^2 + 1) / (2r).
    k = std::min(2 * k, target_k);
    const u64 m = ModRoot{root.p, k, 0}.modulus();
    const u64 f = (mulmod(r, r, m) + 1) % m;
    const u64 step = mulmod(f, invmod(mulmod(2, r, m), m), m);
    r = (r + m - step) % m;
  }
  target.r = r % final_modulus;
  return target;
}

RhoValue rho(u64 d) {
  require(d >= 1, ErrorCode::InvalidArgument, "rho requires d >= 1");
  u64 value = 1;
  for (const auto& [p, k] : factorize(d)) {
    if (p % 4 != 1) return {d, 0};
    value *= 2;
  }
  return {d, value};
}

std::vector<u64> roots_mod_square(u64 d) {
  require(d >= 1, ErrorCode::InvalidArgument, "roots_mod_square requires d >= 1");
  require(d < (u64{1} << 32), ErrorCode::OutOfRange, "roots_mod_square requires d < 2^32");
  std::vector<u64> roots{0};
  u64 acc = 1;
  for (const auto& [p, k] : factorize(d)) {
    if (p % 4 != 1) return {};
    const ModRoot lifted = lift_root(ModRoot{p, 1, sqrt_minus_one(p)}, 2 * k);
    const u64 q = lifted.modulus();
    const u64 inv = invmod(acc % q, q);
    std::vector<u64> next;
    next.reserve(roots.size() * 2);
    for (u64 c : roots) {
      for (u64 a : {lifted.r, q - lifted.r}) {
        const u64 t = mulmod((a + q - c % q) % q, inv, q);
        next.push_back(c + acc * t);
      }
    }
    roots = std::move(next);
    acc *= q;
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

bool is_squarefree(u64 n) {
  require(n >= 1, ErrorCode::InvalidArgument, "is_squarefree requires n >= 1");
  for (u64 p : small_primes()) {
    if (static_cast<u128>(p) * p * p > n) return n == 1 || !is_perfect_square(n);
    if (n % p) continue;
    n /= p;
    if (n % p == 0) return false;
  }
  // Cofactor has no prime factor below 10^6 and exceeds 10^18.
  std::vector<u64> primes;
  split_into(n, primes);
  std::sort(primes.begin(), primes.end());
  return std::adjacent_find(primes.begin(), primes.end()) == primes.end();
}

bool is_squarefree(const mpz_class& n) {
  require(n >= 1, ErrorCode::InvalidArgument, "is_squarefree requires n >= 1");
  static const mpz_class limit = mpz_class(1) << 128;
  require(n <= limit, ErrorCode::FactorizationOverflow,
          n.get_str() + " exceeds the supported range 2^128");
  if (mpz_fits_ulong_p(n.get_mpz_t())) return is_squarefree(u64{n.get_ui()});
  mpz_class c = n;
  for (unsigned long p : small_primes()) {
    if (mpz_class(p) * p * p > c) return c == 1 || !mpz_perfect_square_p(c.get_mpz_t());
    if (!mpz_divisible_ui_p(c.get_mpz_t(), p)) continue;
    mpz_divexact_ui(c.get_mpz_t(), c.get_mpz_t(), p);
    if (mpz_divisible_ui_p(c.get_mpz_t(), p)) return false;
  }
  std::vector<mpz_class> primes;
  split_into(c, primes);
  std::sort(primes.begin(), primes.end());
  return std::adjacent_find(primes.begin(), primes.end()) == primes.end();
}

int mobius(u64 n) {
  require(n >= 1, ErrorCode::InvalidArgument, "mobius requires n >= 1");
  int mu = 1;
  for (const auto& [p, k] : factorize(n)) {
    if (k > 1) return 0;
    mu = -mu;
  }
  return mu;
}

}  // namespace sqfree
