#pragma once

#include <optional>
#include <ostream>
#include <string>

#include <gmpxx.h>

namespace sqfree {

// Element of Z[i] with arbitrary-precision parts.
struct GaussianInt {
  mpz_class re;
  mpz_class im;

  GaussianInt() = default;
  GaussianInt(mpz_class r, mpz_class i) : re(std::move(r)), im(std::move(i)) {}
  GaussianInt(long r, long i) : re(r), im(i) {}

  mpz_class norm() const { return re * re + im * im; }
  GaussianInt conj() const { return {re, -im}; }
  bool is_zero() const { return re == 0 && im == 0; }
  std::string to_string() const;

  friend bool operator==(const GaussianInt& a, const GaussianInt& b) {
    return a.re == b.re && a.im == b.im;
  }
  friend GaussianInt operator+(const GaussianInt& a, const GaussianInt& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend GaussianInt operator-(const GaussianInt& a, const GaussianInt& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend GaussianInt operator*(const GaussianInt& a, const GaussianInt& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend std::ostream& operator<<(std::ostream& os, const GaussianInt& z) {
    return os << z.to_string();
  }
};

// The associate u*z (u a unit) with re > 0 and im >= 0; zero maps to zero.
GaussianInt canonical_associate(const GaussianInt& z);

// Nearest-lattice-point quotient round(a / b); the remainder has norm <= N(b)/2.
GaussianInt round_div(const GaussianInt& a, const GaussianInt& b);

// a / b when b divides a exactly.
std::optional<GaussianInt> exact_div(const GaussianInt& a, const GaussianInt& b);

// Euclidean gcd in Z[i], returned as the canonical associate. Requires a, b not both zero.
GaussianInt gaussian_gcd(GaussianInt a, GaussianInt b);

}  // namespace sqfree
