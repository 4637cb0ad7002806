#include "sqfree/bihom.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "sqfree/arith.hpp"
#include "sqfree/error.hpp"

namespace sqfree {

namespace {

using Root = std::pair<mpz_class, mpz_class>;

// Primitive representative with y2 > 0, or (1, 0).
Root normalise(mpz_class y1, mpz_class y2) {
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), y1.get_mpz_t(), y2.get_mpz_t());
  y1 /= g;
  y2 /= g;
  if (y2 < 0 || (y2 == 0 && y1 < 0)) {
    y1 = -y1;
    y2 = -y2;
  }
  return {y1, y2};
}

std::vector<mpz_class> positive_divisors(const mpz_class& v) {
  require(v != 0, ErrorCode::InvalidArgument, "divisors of zero");
  const mpz_class a = abs(v);
  require(mpz_fits_ulong_p(a.get_mpz_t()), ErrorCode::OutOfRange, "coefficient too large to factor");
  std::vector<mpz_class> divs{1};
  for (const auto& [p, k] : factorize(a.get_ui())) {
    const std::size_t n = divs.size();
    mpz_class pk = 1;
    for (unsigned e = 1; e <= k; ++e) {
      pk *= static_cast<unsigned long>(p);
      for (std::size_t i = 0; i < n; ++i) divs.push_back(divs[i] * pk);
    }
  }
  return divs;
}

mpz_class eval_form(const std::vector<mpz_class>& g, const mpz_class& y1, const mpz_class& y2) {
  // Horner in (y1, y2): sum_j g_j y1^{b-j} y2^j
  mpz_class acc = 0;
  mpz_class y2pow = 1;
  const std::size_t b = g.size() - 1;
  std::vector<mpz_class> y1pow(b + 1, 1);
  for (std::size_t i = 1; i <= b; ++i) y1pow[i] = y1pow[i - 1] * y1;
  for (std::size_t j = 0; j <= b; ++j) {
    acc += g[j] * y1pow[b - j] * y2pow;
    y2pow *= y2;
  }
  return acc;
}

std::set<Root> projective_roots(const std::vector<mpz_class>& g) {
  std::set<Root> roots;
  const std::size_t b = g.size() - 1;
  if (b == 1) {
    roots.insert(normalise(g[1], -g[0]));
    return roots;
  }
  if (b == 2 && g[0] != 0) {
    const mpz_class disc = g[1] * g[1] - 4 * g[0] * g[2];
    if (disc < 0 || !mpz_perfect_square_p(disc.get_mpz_t())) return roots;
    mpz_class s;
    mpz_sqrt(s.get_mpz_t(), disc.get_mpz_t());
    roots.insert(normalise(-g[1] + s, 2 * g[0]));
    roots.insert(normalise(-g[1] - s, 2 * g[0]));
    return roots;
  }
  // Strip y2 factors (g_0 = 0 means y2 | g) and y1 factors (g_b = 0).
  std::size_t lo = 0, hi = b;
  while (lo <= b && g[lo] == 0) ++lo;
  while (hi > lo && g[hi] == 0) --hi;
  if (lo > 0) roots.insert({mpz_class(1), mpz_class(0)});
  if (hi < b) roots.insert({mpz_class(0), mpz_class(1)});
  if (hi == lo) return roots;
  const std::vector<mpz_class> h(g.begin() + static_cast<std::ptrdiff_t>(lo),
                                 g.begin() + static_cast<std::ptrdiff_t>(hi) + 1);
  if (h.size() == 3) {
    for (auto& r : projective_roots(h)) roots.insert(r);
    return roots;
  }
  // Remaining roots have y1, y2 != 0 with y1 | h_last and y2 | h_0.
  for (const auto& y1 : positive_divisors(h.back())) {
    for (const auto& y2 : positive_divisors(h.front())) {
      mpz_class gg;
      mpz_gcd(gg.get_mpz_t(), y1.get_mpz_t(), y2.get_mpz_t());
      if (gg != 1) continue;
      for (int sign : {1, -1}) {
        const mpz_class sy1 = sign * y1;
        if (eval_form(h, sy1, y2) == 0) roots.insert(normalise(sy1, y2));
      }
    }
  }
  return roots;
}

}  // namespace

BihomForm::BihomForm(unsigned a, unsigned b, std::vector<mpz_class> coeffs)
    : a_(a), b_(b), coeffs_(std::move(coeffs)) {
  require(a >= 1 && b >= 1, ErrorCode::InvalidArgument, "bidegree must satisfy a, b >= 1");
  require(coeffs_.size() == static_cast<std::size_t>(a + 1) * (b + 1), ErrorCode::InvalidArgument,
          "expected (a+1)(b+1) = " + std::to_string((a + 1) * (b + 1)) + " coefficients, got " +
              std::to_string(coeffs_.size()));
  require(std::any_of(coeffs_.begin(), coeffs_.end(), [](const mpz_class& c) { return c != 0; }),
          ErrorCode::InvalidArgument, "form is identically zero");
}

mpz_class BihomForm::height() const {
  mpz_class h = 0;
  for (const auto& c : coeffs_) h = std::max(h, mpz_class(abs(c)));
  return h;
}

std::vector<mpz_class> BihomForm::y_form(const mpz_class& x1, const mpz_class& x2) const {
  std::vector<mpz_class> x1pow(a_ + 1, 1), x2pow(a_ + 1, 1);
  for (unsigned i = 1; i <= a_; ++i) {
    x1pow[i] = x1pow[i - 1] * x1;
    x2pow[i] = x2pow[i - 1] * x2;
  }
  std::vector<mpz_class> g(b_ + 1, 0);
  for (unsigned i = 0; i <= a_; ++i) {
    const mpz_class mono = x1pow[a_ - i] * x2pow[i];
    for (unsigned j = 0; j <= b_; ++j) g[j] += coeff(i, j) * mono;
  }
  return g;
}

mpz_class BihomForm::operator()(const mpz_class& x1, const mpz_class& x2, const mpz_class& y1,
                                const mpz_class& y2) const {
  return eval_form(y_form(x1, x2), y1, y2);
}

BihomCount bihom_count(const BihomForm& g, std::uint64_t X) {
  require(X >= 1, ErrorCode::InvalidArgument, "bihom_count requires X >= 1");
  BihomCount out;
  mpz_class xa = 1;
  for (unsigned i = 0; i < g.a(); ++i) xa *= static_cast<unsigned long>(X);
  out.y_search_bound = (g.a() + 1) * g.height() * xa;
  const auto bound = static_cast<std::int64_t>(X);
  for (std::int64_t x1 = -bound; x1 <= bound; ++x1) {
    for (std::int64_t x2 = -bound; x2 <= bound; ++x2) {
      if (std::gcd(x1, x2) != 1) continue;
      ++out.x_vectors;
      const auto form = g.y_form(mpz_class(static_cast<long>(x1)), mpz_class(static_cast<long>(x2)));
      if (std::all_of(form.begin(), form.end(), [](const mpz_class& c) { return c == 0; })) {
        ++out.degenerate_x;
        continue;
      }
      out.points += 2 * projective_roots(form).size();
    }
  }
  return out;
}

std::uint64_t bihom_count_box(const BihomForm& g, std::uint64_t X, std::uint64_t y_bound) {
  std::uint64_t points = 0;
  const auto bx = static_cast<std::int64_t>(X);
  const auto by = static_cast<std::int64_t>(y_bound);
  for (std::int64_t x1 = -bx; x1 <= bx; ++x1) {
    for (std::int64_t x2 = -bx; x2 <= bx; ++x2) {
      if (std::gcd(x1, x2) != 1) continue;
      const auto form = g.y_form(mpz_class(static_cast<long>(x1)), mpz_class(static_cast<long>(x2)));
      for (std::int64_t y1 = -by; y1 <= by; ++y1) {
        for (std::int64_t y2 = -by; y2 <= by; ++y2) {
          if (std::gcd(y1, y2) != 1) continue;
          if (eval_form(form, mpz_class(static_cast<long>(y1)), mpz_class(static_cast<long>(y2))) == 0) {
            ++points;
          }
        }
      }
    }
  }
  return points;
}

}  // namespace sqfree
