#pragma once

// Monic orthogonal polynomials for the jump weight: recurrence coefficients,
// norms and log Hankel determinants, plus determinant-based oracles.

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>

#include "hpk/moments.hpp"

namespace hpk {

/// Non-positive pivot during factorization of the moment matrix.
class CholeskyBreakdown : public PrecisionError {
 public:
  using PrecisionError::PrecisionError;
};

enum class BuildMethod { kAuto, kCholesky, kModifiedChebyshev };

/// Sequences up to n_max for one weight. Values are stored at working_bits.
struct OrthoSystem {
  WeightSpec spec;
  int n_max = 0;
  PrecisionContext ctx;
  long working_bits = 0;
  BuildMethod method = BuildMethod::kCholesky;
  std::vector<Real> h;      // n_max + 1
  std::vector<Real> alpha;  // n_max + 1
  std::vector<Real> beta;   // n_max + 1, beta[0] = 0
  std::vector<Real> p1;     // n_max + 2, p1[0] = 0
  std::vector<Real> logD;   // n_max + 2, logD[0] = 0
};

/// Guard bits added on top of ctx.bits for a build up to n_max.
inline long working_bits_for(int n_max, const PrecisionContext& ctx) { return ctx.bits + 2L * n_max + 128; }

constexpr int kCholeskyMaxN = 160;

namespace detail {

inline void cholesky_recurrence(const std::vector<Real>& mu, int n_max, OrthoSystem& sys) {
  const int N = n_max + 2;
  // Lower-triangular factor, row-major; only columns 0..n_max are needed.
  std::vector<std::vector<Real>> L(N);
  Real scratch;
  for (int i = 0; i < N; ++i) {
    L[i].resize(std::min(i, n_max) + 1);
    for (int j = 0; j <= std::min(i, n_max); ++j) {
      Real s = mu[i + j];
      for (int k = 0; k < j; ++k) s.sub_product(L[i][k], L[j][k], scratch);
      if (i == j) {
        if (!(s > 0) || !s.is_finite()) {
          throw CholeskyBreakdown("moment matrix not positive definite at pivot " + std::to_string(j));
        }
        L[i][j] = sqrt(s);
      } else {
        L[i][j] = s / L[j][j];
      }
    }
  }
  for (int n = 0; n <= n_max; ++n) {
    sys.h[n] = sqr(L[n][n]);
    Real a = L[n + 1][n] / L[n][n];
    if (n > 0) a -= L[n][n - 1] / L[n - 1][n - 1];
    sys.alpha[n] = a;
    sys.beta[n] = n == 0 ? Real(0) : sys.h[n] / sys.h[n - 1];
  }
}

/// Modified moments against monic Hermite polynomials p_k (p_{k+1} = x p_k - (k/2) p_{k-1}).
inline std::vector<Real> hermite_modified_moments(int kmax, const WeightSpec& w, const PrecisionContext& ctx) {
  PrecisionScope scope(ctx.bits);
  std::vector<Real> nu(kmax + 1, Real(0));
  Real sp = sqrt_pi(ctx.bits);
  nu[0] = w.A * sp;
  auto add_jump = [&](const Real& B, const Real& t) {
    if (B.is_zero()) return;
    Real tt = rounded(t, ctx.bits);
    Real e = exp(-sqr(tt));
    nu[0] += B * sp * erfc_mp(tt, ctx) / 2;
    Real pm1(0), p(1);
    for (int k = 1; k <= kmax; ++k) {
      // p holds p_{k-1}(t)
      nu[k] += B * e * p / 2;
      Real next = tt * p - pm1 * (k - 1) / 2;
      pm1 = std::move(p);
      p = std::move(next);
    }
  };
  add_jump(w.B1, w.t1);
  add_jump(w.B2, w.t2);
  return nu;
}

inline void chebyshev_recurrence(const std::vector<Real>& nu, int n_max, OrthoSystem& sys) {
  const int N = n_max + 1;
  std::vector<Real> prev(2 * N, Real(0)), cur(nu.begin(), nu.begin() + 2 * N), next(2 * N);
  if (!(cur[0] > 0)) throw CholeskyBreakdown("modified moment nu_0 not positive");
  sys.alpha[0] = cur[1] / cur[0];
  sys.beta[0] = 0;
  sys.h[0] = cur[0];
  Real scratch;
  for (int k = 1; k < N; ++k) {
    const Real& a = sys.alpha[k - 1];
    const Real b = k == 1 ? Real(0) : sys.beta[k - 1];
    // Raw MPFR calls: this loop is O(n^2) at thousands of bits and dominates large builds.
    for (int l = k; l <= 2 * N - k - 1; ++l) {
      mpfr_ptr s = next[l].get();
      mpfr_set(s, cur[l + 1].get(), MPFR_RNDN);
      mpfr_mul(scratch.get(), a.get(), cur[l].get(), MPFR_RNDN);
      mpfr_sub(s, s, scratch.get(), MPFR_RNDN);
      if (k >= 2) {
        mpfr_mul(scratch.get(), b.get(), prev[l].get(), MPFR_RNDN);
        mpfr_sub(s, s, scratch.get(), MPFR_RNDN);
      }
      mpfr_mul_ui(scratch.get(), cur[l - 1].get(), static_cast<unsigned long>(l), MPFR_RNDN);
      mpfr_div_2ui(scratch.get(), scratch.get(), 1, MPFR_RNDN);
      mpfr_add(s, s, scratch.get(), MPFR_RNDN);
    }
    if (!(next[k] > 0) || !next[k].is_finite()) {
      throw CholeskyBreakdown("modified Chebyshev table lost positivity at k = " + std::to_string(k));
    }
    sys.alpha[k] = next[k + 1] / next[k] - cur[k] / cur[k - 1];
    sys.beta[k] = next[k] / cur[k - 1];
    sys.h[k] = next[k];
    std::swap(prev, cur);
    std::swap(cur, next);
  }
}

inline OrthoSystem build_at(const WeightSpec& spec, int n_max, const PrecisionContext& ctx, long bits,
                            BuildMethod method) {
  PrecisionContext wctx{bits, ctx.guard_digits};
  PrecisionScope scope(bits);
  OrthoSystem sys;
  sys.spec = spec;
  sys.n_max = n_max;
  sys.ctx = ctx;
  sys.working_bits = bits;
  sys.method = method;
  sys.h.assign(n_max + 1, Real(0));
  sys.alpha.assign(n_max + 1, Real(0));
  sys.beta.assign(n_max + 1, Real(0));
  if (method == BuildMethod::kCholesky) {
    cholesky_recurrence(moments(2 * n_max + 2, spec, wctx), n_max, sys);
  } else {
    chebyshev_recurrence(hermite_modified_moments(2 * n_max + 2, spec, wctx), n_max, sys);
  }
  sys.p1.assign(n_max + 2, Real(0));
  sys.logD.assign(n_max + 2, Real(0));
  for (int n = 0; n <= n_max; ++n) {
    sys.p1[n + 1] = sys.p1[n] - sys.alpha[n];
    sys.logD[n + 1] = sys.logD[n] + log(sys.h[n]);
  }
  return sys;
}

}  // namespace detail

/// Builds the recurrence data for n = 0..n_max, doubling the working precision on breakdown.
inline OrthoSystem build_system(const WeightSpec& spec, int n_max, const PrecisionContext& ctx,
                                BuildMethod method = BuildMethod::kAuto) {
  validate(ctx);
  validate(spec);
  if (n_max < 0) throw std::invalid_argument("build_system: n_max must be >= 0");
  if (method == BuildMethod::kAuto) {
    method = n_max <= kCholeskyMaxN ? BuildMethod::kCholesky : BuildMethod::kModifiedChebyshev;
  }
  long bits = working_bits_for(n_max, ctx);
  constexpr int kRetries = 4;
  for (int attempt = 0;; ++attempt) {
    try {
      return detail::build_at(spec, n_max, ctx, bits, method);
    } catch (const CholeskyBreakdown&) {
      if (attempt == kRetries) throw;
      bits *= 2;
    }
  }
}

/// (P_n(x), P_{n-1}(x)) by the three-term recurrence; P_{-1} = 0.
inline std::pair<Real, Real> eval_poly(const OrthoSystem& sys, int n, const Real& x) {
  if (n < 0 || n > sys.n_max + 1) throw std::out_of_range("eval_poly: degree out of range");
  PrecisionScope scope(sys.working_bits);
  Real pm1(0), p(1);
  for (int k = 0; k < n; ++k) {
    Real next = (x - sys.alpha[k]) * p;
    if (k > 0) next -= sys.beta[k] * pm1;
    pm1 = std::move(p);
    p = std::move(next);
  }
  return {p, pm1};
}

struct PolyDerivs {
  Real p, dp, d2p;
};

/// P_n and its first two x-derivatives from the differentiated recurrence.
inline PolyDerivs eval_poly_derivs(const OrthoSystem& sys, int n, const Real& x) {
  if (n < 0 || n > sys.n_max + 1) throw std::out_of_range("eval_poly_derivs: degree out of range");
  PrecisionScope scope(sys.working_bits);
  Real p0(0), p1(1), d0(0), d1(0), s0(0), s1(0);
  for (int k = 0; k < n; ++k) {
    Real xa = x - sys.alpha[k];
    const Real& b = sys.beta[k];
    Real p2 = xa * p1 - b * p0;
    Real d2 = xa * d1 + p1 - b * d0;
    Real s2 = xa * s1 + 2 * d1 - b * s0;
    p0 = std::move(p1);
    p1 = std::move(p2);
    d0 = std::move(d1);
    d1 = std::move(d2);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  return {p1, d1, s1};
}

// Determinant oracles.

namespace detail {

/// Determinant by Gaussian elimination with partial pivoting; consumes `m`.
inline Real determinant(std::vector<std::vector<Real>> m) {
  const int n = static_cast<int>(m.size());
  Real det(1);
  Real scratch;
  for (int c = 0; c < n; ++c) {
    int piv = c;
    for (int r = c + 1; r < n; ++r) {
      if (abs(m[r][c]) > abs(m[piv][c])) piv = r;
    }
    if (m[piv][c].is_zero()) return Real(0);
    if (piv != c) {
      std::swap(m[piv], m[c]);
      det = -det;
    }
    det *= m[c][c];
    for (int r = c + 1; r < n; ++r) {
      Real f = m[r][c] / m[c][c];
      for (int k = c + 1; k < n; ++k) m[r][k].sub_product(f, m[c][k], scratch);
    }
  }
  return det;
}

inline std::vector<std::vector<Real>> hankel_block(const std::vector<Real>& mu, int n, int last_col) {
  std::vector<std::vector<Real>> m(n, std::vector<Real>(n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j + 1 < n; ++j) m[i][j] = mu[i + j];
    if (n > 0) m[i][n - 1] = mu[i + last_col];
  }
  return m;
}

}  // namespace detail

constexpr int kOracleMaxN = 30;

/// D_n = det(mu_{i+j})_{i,j<n} by pivoted elimination, D_0 = 1.
inline Real hankel_oracle(const WeightSpec& spec, int n, const PrecisionContext& ctx) {
  if (n < 0 || n > kOracleMaxN) throw std::out_of_range("hankel_oracle: n must be in [0, 30]");
  long bits = working_bits_for(n, ctx);
  PrecisionScope scope(bits);
  if (n == 0) return Real(1);
  auto mu = moments(2 * n, spec, {bits, ctx.guard_digits});
  return detail::determinant(detail::hankel_block(mu, n, n - 1));
}

struct OracleRecurrence {
  std::vector<Real> h, alpha, beta, D;
};

/// h_n, alpha_n, beta_n for n <= n_max from ratios of Hankel determinants.
/// p(n) = -det(mu_{i+j}, last column shifted to mu_{i+n}) / D_n and alpha_n = p(n) - p(n+1).
inline OracleRecurrence recurrence_oracle(const WeightSpec& spec, int n_max, const PrecisionContext& ctx) {
  if (n_max < 0 || n_max + 1 > kOracleMaxN) throw std::out_of_range("recurrence_oracle: n_max must be in [0, 29]");
  long bits = working_bits_for(n_max + 1, ctx);
  PrecisionScope scope(bits);
  auto mu = moments(2 * n_max + 2, spec, {bits, ctx.guard_digits});
  std::vector<Real> D(n_max + 2), p(n_max + 2);
  D[0] = 1;
  p[0] = 0;
  for (int n = 1; n <= n_max + 1; ++n) {
    D[n] = detail::determinant(detail::hankel_block(mu, n, n - 1));
    p[n] = -detail::determinant(detail::hankel_block(mu, n, n)) / D[n];
  }
  OracleRecurrence out;
  out.D = D;
  for (int n = 0; n <= n_max; ++n) {
    out.h.push_back(D[n + 1] / D[n]);
    out.alpha.push_back(p[n] - p[n + 1]);
    out.beta.push_back(n == 0 ? Real(0) : D[n + 1] * D[n - 1] / sqr(D[n]));
  }
  return out;
}

/// E[prod_j w(x_j)/e^{-x_j^2}] over the n-point GUE density, n in 1..3, by tensor
/// Gauss-Legendre quadrature in double precision with panels split at the jumps.
inline double expectation_oracle(const WeightSpec& spec, int n) {
  if (n < 1 || n > 3) throw std::out_of_range("expectation_oracle: n must be in [1, 3]");
  validate(spec);
  const double t1 = spec.t1.to_double();
  const double t2 = spec.t2.to_double();
  const double A = spec.A.to_double(), B1 = spec.B1.to_double(), B2 = spec.B2.to_double();
  constexpr double kCut = 9.0;
  std::vector<double> breaks{-kCut, kCut};
  auto add_break = [&](double t) {
    if (t > -kCut && t < kCut) breaks.push_back(t);
  };
  if (B1 != 0) add_break(t1);
  if (B2 != 0) add_break(t2);
  std::sort(breaks.begin(), breaks.end());

  using Rule = boost::math::quadrature::gauss<double, 30>;
  constexpr int kSub = 6;
  std::vector<double> xs, ws, fs;
  for (std::size_t b = 0; b + 1 < breaks.size(); ++b) {
    double lo = breaks[b], hi = breaks[b + 1];
    double width = (hi - lo) / kSub;
    for (int s = 0; s < kSub; ++s) {
      double a = lo + s * width, half = width / 2, mid = a + half;
      const auto& absc = Rule::abscissa();
      const auto& wts = Rule::weights();
      for (std::size_t i = 0; i < absc.size(); ++i) {
        for (int sgn : {1, -1}) {
          if (absc[i] == 0 && sgn < 0) continue;
          double x = mid + sgn * half * absc[i];
          xs.push_back(x);
          ws.push_back(half * wts[i] * std::exp(-x * x));
          double f = A;
          if (x > t1) f += B1;
          if (B2 != 0 && x > t2) f += B2;
          fs.push_back(f);
        }
      }
    }
  }
  const std::size_t m = xs.size();
  double num = 0, den = 0;
  if (n == 1) {
    for (std::size_t i = 0; i < m; ++i) {
      num += ws[i] * fs[i];
      den += ws[i];
    }
  } else if (n == 2) {
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j) {
        double v = xs[i] - xs[j];
        double d = ws[i] * ws[j] * v * v;
        num += d * fs[i] * fs[j];
        den += d;
      }
    }
  } else {
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j) {
        double vij = xs[i] - xs[j];
        double wij = ws[i] * ws[j];
        double fij = fs[i] * fs[j];
        for (std::size_t k = 0; k < m; ++k) {
          double v = vij * (xs[i] - xs[k]) * (xs[j] - xs[k]);
          double d = wij * ws[k] * v * v;
          num += d * fij * fs[k];
          den += d;
        }
      }
    }
  }
  return num / den;
}

}  // namespace hpk
