#include "sqfree/detmethod.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sqfree/arith.hpp"
#include "sqfree/error.hpp"

namespace sqfree {

namespace {

using IntMatrix = std::vector<std::vector<mpz_class>>;

double log_abs(const mpz_class& v) {
  if (v == 0) return -INFINITY;
  long exp = 0;
  const double mant = mpz_get_d_2exp(&exp, v.get_mpz_t());
  return std::log(std::fabs(mant)) + static_cast<double>(exp) * std::log(2.0);
}

// Scale each row by the lcm of its denominators; the kernel is unchanged.
IntMatrix integer_rows(const RationalMatrix& m) {
  IntMatrix out;
  out.reserve(m.size());
  for (const auto& row : m) {
    mpz_class l = 1;
    for (const auto& q : row) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
    std::vector<mpz_class> r;
    r.reserve(row.size());
    for (const auto& q : row) {
      mpz_class v = l / q.get_den() * q.get_num();
      r.push_back(std::move(v));
    }
    out.push_back(std::move(r));
  }
  return out;
}

// Fraction-free Gaussian elimination in place; returns the pivot columns.
// After step k every entry below the pivot rows is a (k+1)-minor of the
// input, so each division by the previous pivot is exact.
std::vector<std::size_t> bareiss(IntMatrix& a) {
  std::vector<std::size_t> pivots;
  if (a.empty()) return pivots;
  const std::size_t rows = a.size(), cols = a.front().size();
  mpz_class prev = 1;
  std::size_t r = 0;
  for (std::size_t col = 0; col < cols && r < rows; ++col) {
    std::size_t piv = r;
    while (piv < rows && a[piv][col] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[r]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = col + 1; j < cols; ++j) {
        mpz_class v = a[r][col] * a[i][j] - a[i][col] * a[r][j];
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        a[i][j] = std::move(v);
      }
      a[i][col] = 0;
    }
    prev = a[r][col];
    pivots.push_back(col);
    ++r;
  }
  return pivots;
}

AuxPolynomial constant_one(unsigned K, unsigned L) {
  AuxPolynomial p{K, L, std::vector<mpz_class>((K + 1) * (L + 1), 0)};
  p.coeffs[0] = 1;
  return p;
}

AuxCurve curve_from_points(std::vector<RationalPoint> points, const DetConfig& cfg, const IntervalSpec& I) {
  AuxCurve out;
  out.interval = I;
  out.J = points.size();
  if (points.empty()) {
    out.no_points = true;
    out.poly = constant_one(cfg.K, cfg.L);
    out.verified = true;
    out.max_abs_coeff = 1;
    return out;
  }
  out.poly = kernel_polynomial(monomial_matrix(points, cfg.K, cfg.L), cfg.K, cfg.L);
  for (const auto& p : points) {
    require(out.poly.cleared_value(p) == 0, ErrorCode::VerificationFailed,
            "auxiliary curve misses point (" + p.s().get_str() + ", " + p.t().get_str() + ")");
  }
  out.verified = true;
  out.max_abs_coeff = out.poly.max_abs_coeff();
  out.kappa = cfg.x > 1 ? log_abs(out.max_abs_coeff) / std::log(static_cast<double>(cfg.x)) : 0.0;
  out.points = std::move(points);
  return out;
}

}  // namespace

DetConfig choose_M(std::uint64_t x, std::uint64_t E, std::uint64_t F, double eta, unsigned L) {
  require(x >= 4, ErrorCode::InvalidArgument, "choose_M requires x >= 4");
  require(E >= 2 && F >= 2, ErrorCode::InvalidArgument, "choose_M requires E, F >= 2");
  require(eta > 0, ErrorCode::InvalidArgument, "choose_M requires eta > 0");
  require(L >= 1, ErrorCode::InvalidArgument, "choose_M requires L >= 1");
  DetConfig cfg;
  cfg.x = x;
  cfg.E = E;
  cfg.F = F;
  cfg.eta = eta;
  const long double lx = std::log(static_cast<long double>(x));
  const long double le = std::log(static_cast<long double>(E));
  const long double lf = std::log(static_cast<long double>(F));
  const long double log_m = 9.0L / 8 * (1 + eta) * le * lf / lx;
  std::uint64_t lo = isqrt(x);
  if (lo * lo < x) ++lo;
  if (log_m >= lx) {
    cfg.M = x;
    cfg.clamped_high = std::exp(log_m) > static_cast<long double>(x);
  } else {
    cfg.M = static_cast<std::uint64_t>(std::ceil(std::exp(log_m)));
    if (cfg.M < lo) {
      cfg.M = lo;
      cfg.clamped_low = true;
    } else if (cfg.M > x) {
      cfg.M = x;
      cfg.clamped_high = true;
    }
  }
  cfg.L = L;
  cfg.K = std::max<unsigned>(1, static_cast<unsigned>(std::floor(L * lf / le + 1e-9L)));
  cfg.H = (cfg.K + 1) * (cfg.L + 1);
  return cfg;
}

bool IntervalSpec::contains(const mpq_class& s) const {
  const mpq_class lo(mpz_class(static_cast<long>(x3)), mpz_class(M));
  const mpq_class hi(mpz_class(static_cast<long>(x3 + 1)), mpz_class(M));
  return lo < s && s <= hi;
}

IntervalSpec IntervalSpec::of(const mpq_class& s, std::uint64_t M) {
  require(M >= 1, ErrorCode::InvalidArgument, "interval denominator must be >= 1");
  mpz_class scaled = s.get_num() * M, c;
  mpz_cdiv_q(c.get_mpz_t(), scaled.get_mpz_t(), s.get_den_mpz_t());
  return {c.get_si() - 1, M};
}

RationalPoint RationalPoint::from(const QLabeling& l) {
  return {l.s.get_num(), l.s.get_den(), l.t.get_num(), l.t.get_den(), l.q1_kind};
}

std::optional<ShiftedPoint> taylor_shift(const RationalPoint& p, const IntervalSpec& I) {
  const mpq_class s0(mpz_class(static_cast<long>(I.x3)), mpz_class(I.M));
  try {
    const mpq_class u = p.s() - s0;
    mpq_class v = p.t() - phi(p.kind, s0) - u * phi_derivative(p.kind, s0);
    v.canonicalize();
    return ShiftedPoint{u, v};
  } catch (const Error&) {
    return std::nullopt;
  }
}

mpz_class AuxPolynomial::max_abs_coeff() const {
  mpz_class m = 0;
  for (const auto& c : coeffs) m = std::max(m, mpz_class(abs(c)));
  return m;
}

mpq_class AuxPolynomial::operator()(const mpq_class& s, const mpq_class& t) const {
  mpq_class acc = 0, sk = 1;
  for (unsigned k = 0; k <= K; ++k) {
    mpq_class tl = 1;
    for (unsigned l = 0; l <= L; ++l) {
      acc += coeff(k, l) * sk * tl;
      tl *= t;
    }
    sk *= s;
  }
  acc.canonicalize();
  return acc;
}

mpz_class AuxPolynomial::cleared_value(const RationalPoint& p) const {
  std::vector<mpz_class> sn(K + 1, 1), sd(K + 1, 1), tn(L + 1, 1), td(L + 1, 1);
  for (unsigned k = 1; k <= K; ++k) {
    sn[k] = sn[k - 1] * p.s_num;
    sd[k] = sd[k - 1] * p.s_den;
  }
  for (unsigned l = 1; l <= L; ++l) {
    tn[l] = tn[l - 1] * p.t_num;
    td[l] = td[l - 1] * p.t_den;
  }
  mpz_class acc = 0;
  for (unsigned k = 0; k <= K; ++k) {
    for (unsigned l = 0; l <= L; ++l) acc += coeff(k, l) * sn[k] * sd[K - k] * tn[l] * td[L - l];
  }
  return acc;
}

std::vector<RationalPoint> collect_points(std::span<const SolutionTriple> triples, const DetConfig& cfg,
                                          const IntervalSpec& I) {
  std::vector<RationalPoint> out;
  const DyadicBox box{cfg.E, cfg.F};
  for (const auto& t : triples) {
    const QLabeling l = q_label(decompose(t), box);
    if (I.contains(l.s)) out.push_back(RationalPoint::from(l));
  }
  return out;
}

RationalMatrix monomial_matrix(std::span<const RationalPoint> points, unsigned K, unsigned L) {
  require(!points.empty(), ErrorCode::InvalidArgument, "monomial_matrix needs at least one point");
  RationalMatrix m;
  m.reserve(points.size());
  for (const auto& p : points) {
    const mpq_class s = p.s(), t = p.t();
    std::vector<mpq_class> row;
    row.reserve((K + 1) * (L + 1));
    mpq_class sk = 1;
    for (unsigned k = 0; k <= K; ++k) {
      mpq_class v = sk;
      for (unsigned l = 0; l <= L; ++l) {
        row.push_back(v);
        v *= t;
      }
      sk *= s;
    }
    m.push_back(std::move(row));
  }
  return m;
}

std::size_t matrix_rank(const RationalMatrix& m) {
  IntMatrix a = integer_rows(m);
  return bareiss(a).size();
}

AuxPolynomial kernel_polynomial(const RationalMatrix& m, unsigned K, unsigned L) {
  const std::size_t H = static_cast<std::size_t>(K + 1) * (L + 1);
  require(!m.empty() && m.front().size() == H, ErrorCode::InvalidArgument,
          "matrix width must be (K+1)(L+1) = " + std::to_string(H));
  IntMatrix a = integer_rows(m);
  const auto pivots = bareiss(a);
  std::size_t free_col = 0;
  while (free_col < pivots.size() && pivots[free_col] == free_col) ++free_col;
  require(free_col < H, ErrorCode::FullRank,
          "rank " + std::to_string(pivots.size()) + " equals H = " + std::to_string(H));

  // Columns 0..free_col-1 are the pivots of rows 0..free_col-1; every later
  // pivot variable is forced to zero once the other free variables are.
  std::vector<mpq_class> c(H, 0);
  c[free_col] = 1;
  for (std::size_t i = free_col; i-- > 0;) {
    mpq_class acc = 0;
    for (std::size_t j = i + 1; j <= free_col; ++j) acc += a[i][j] * c[j];
    c[i] = -acc / a[i][i];
    c[i].canonicalize();
  }
  mpz_class den = 1, content = 0;
  for (const auto& q : c) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), q.get_den_mpz_t());
  AuxPolynomial out{K, L, {}};
  out.coeffs.reserve(H);
  for (const auto& q : c) {
    mpz_class v = den / q.get_den() * q.get_num();
    mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), v.get_mpz_t());
    out.coeffs.push_back(std::move(v));
  }
  for (auto& v : out.coeffs) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), content.get_mpz_t());
  if (out.coeffs[free_col] < 0) {
    for (auto& v : out.coeffs) v = -v;
  }
  return out;
}

AuxCurve auxiliary_curve(std::span<const SolutionTriple> triples, const DetConfig& cfg, const IntervalSpec& I) {
  return curve_from_points(collect_points(triples, cfg, I), cfg, I);
}

double CurveSweep::max_kappa() const {
  double k = 0;
  for (const auto& c : curves) k = std::max(k, c.kappa);
  return k;
}

CurveSweep auxiliary_sweep(std::span<const SolutionTriple> triples, const DetConfig& cfg) {
  std::map<std::int64_t, std::vector<RationalPoint>> groups;
  const DyadicBox box{cfg.E, cfg.F};
  for (const auto& t : triples) {
    const QLabeling l = q_label(decompose(t), box);
    groups[IntervalSpec::of(l.s, cfg.M).x3].push_back(RationalPoint::from(l));
  }
  CurveSweep sweep;
  sweep.nonempty = groups.size();
  for (auto& [x3, pts] : groups) {
    const IntervalSpec I{x3, cfg.M};
    const std::size_t J = pts.size();
    try {
      sweep.curves.push_back(curve_from_points(std::move(pts), cfg, I));
    } catch (const Error& err) {
      if (err.code() != ErrorCode::FullRank) throw;
      sweep.failures.push_back({I, J, cfg.K, cfg.L, cfg.M});
    }
  }
  return sweep;
}

}  // namespace sqfree
