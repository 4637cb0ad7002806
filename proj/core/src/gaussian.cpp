#include "sqfree/gaussian.hpp"

#include "sqfree/error.hpp"

namespace sqfree {

namespace {

// round(num / den) for den > 0, halves rounded up.
mpz_class round_quotient(const mpz_class& num, const mpz_class& den) {
  mpz_class q;
  mpz_class twice = 2 * num + den;
  mpz_class twice_den = 2 * den;
  mpz_fdiv_q(q.get_mpz_t(), twice.get_mpz_t(), twice_den.get_mpz_t());
  return q;
}

}  // namespace

std::string GaussianInt::to_string() const {
  std::string out = re.get_str();
  out += im < 0 ? "-" : "+";
  mpz_class mag = abs(im);
  out += mag.get_str() + "i";
  return out;
}

GaussianInt canonical_associate(const GaussianInt& z) {
  if (z.is_zero()) return z;
  if (z.re > 0 && z.im >= 0) return z;
  if (z.re <= 0 && z.im > 0) return {z.im, -z.re};   // z * (-i)
  if (z.re < 0 && z.im <= 0) return {-z.re, -z.im};  // z * (-1)
  return {-z.im, z.re};                              // z * i
}

GaussianInt round_div(const GaussianInt& a, const GaussianInt& b) {
  require(!b.is_zero(), ErrorCode::InvalidArgument, "division by zero in Z[i]");
  const GaussianInt num = a * b.conj();
  const mpz_class den = b.norm();
  return {round_quotient(num.re, den), round_quotient(num.im, den)};
}

std::optional<GaussianInt> exact_div(const GaussianInt& a, const GaussianInt& b) {
  require(!b.is_zero(), ErrorCode::InvalidArgument, "division by zero in Z[i]");
  const GaussianInt num = a * b.conj();
  const mpz_class den = b.norm();
  if (!mpz_divisible_p(num.re.get_mpz_t(), den.get_mpz_t()) ||
      !mpz_divisible_p(num.im.get_mpz_t(), den.get_mpz_t())) {
    return std::nullopt;
  }
  GaussianInt q;
  mpz_divexact(q.re.get_mpz_t(), num.re.get_mpz_t(), den.get_mpz_t());
  mpz_divexact(q.im.get_mpz_t(), num.im.get_mpz_t(), den.get_mpz_t());
  return q;
}

GaussianInt gaussian_gcd(GaussianInt a, GaussianInt b) {
  require(!(a.is_zero() && b.is_zero()), ErrorCode::InvalidArgument,
          "gaussian_gcd of two zeros is undefined");
  while (!b.is_zero()) {
    GaussianInt r = a - round_div(a, b) * b;
    a = std::move(b);
    b = std::move(r);
  }
  return canonical_associate(a);
}

}  // namespace sqfree
