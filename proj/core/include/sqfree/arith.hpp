#pragma once

// Modular arithmetic for the congruence m^2 + 1 = 0 (mod d^2): square roots of
// -1 modulo primes, Hensel lifting, the root-counting function rho, and
// square-freeness testing.
//
// Residues and moduli are 64-bit; every modulus handled here must be below
// 2^64 (so d < 2^32 for roots modulo d^2). Square-freeness accepts GMP
// integers up to 2^128.

#include <cstdint>
#include <vector>

#include <gmpxx.h>

namespace sqfree {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

struct PrimePower {
  u64 p;
  unsigned k;
  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

// Trial-division factorisation; fine for n up to ~10^12 and for any n whose
// second-largest prime factor is below 10^6.
std::vector<PrimePower> factorize(u64 n);

u64 mulmod(u64 a, u64 b, u64 m);
u64 powmod(u64 base, u64 exp, u64 m);
// Inverse of a modulo m; requires gcd(a, m) = 1.
u64 invmod(u64 a, u64 m);

// Deterministic Miller-Rabin for the full 64-bit range.
bool is_prime(u64 n);
bool is_perfect_square(u64 n);
u64 isqrt(u64 n);

// Square root of a quadratic residue a modulo an odd prime p. Uses
// a^{(p+1)/4} for p = 3 (mod 4), Atkin's formula for p = 5 (mod 8), and
// Tonelli-Shanks otherwise. Throws InvalidArgument for non-residues.
u64 sqrt_mod(u64 a, u64 p);

// Smallest r in (0, p) with r^2 = -1 (mod p). Throws NotOneModFour unless
// p = 1 (mod 4).
u64 sqrt_minus_one(u64 p);

// A root of r^2 + 1 = 0 modulo p^k.
struct ModRoot {
  u64 p = 5;
  unsigned k = 1;
  u64 r = 2;

  u64 modulus() const;  // p^k
  bool valid() const;
  friend bool operator==(const ModRoot&, const ModRoot&) = default;
};

// Hensel lift of r to the unique root modulo p^target_k congruent to r modulo p^k.
ModRoot lift_root(const ModRoot& root, unsigned target_k);

struct RhoValue {
  u64 d;
  u64 rho;  // #{m mod d^2 : d^2 | m^2 + 1}
};

RhoValue rho(u64 d);

// Sorted residues m in [0, d^2) with d^2 | m^2 + 1, assembled by CRT from the
// lifted prime-power roots. Requires 1 <= d < 2^32.
std::vector<u64> roots_mod_square(u64 d);

// True iff no prime square divides n. Trial division stops once p^3 exceeds
// the cofactor (after which the cofactor is 1, prime, a product of two
// distinct primes, or a prime square); larger cofactors fall back to a
// probable-prime test and Pollard-Brent splitting.
bool is_squarefree(u64 n);
// As above for 1 <= n <= 2^128; throws FactorizationOverflow beyond that.
bool is_squarefree(const mpz_class& n);

int mobius(u64 n);

}  // namespace sqfree
