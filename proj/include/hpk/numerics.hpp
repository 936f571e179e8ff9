#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

#include "hpk/real.hpp"

namespace hpk {

/// Raised when a computation cannot reach the requested accuracy.
class PrecisionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct PrecisionContext {
  long bits = 256;
  int guard_digits = 12;

  /// Number of decimal digits trusted after guard loss.
  double trusted_digits() const { return 0.3010 * static_cast<double>(bits) - guard_digits; }
  /// Decimal digits printed when rendering results.
  int render_digits() const {
    return std::max(1, static_cast<int>(std::floor(0.301 * static_cast<double>(bits))) - guard_digits);
  }
};

inline void validate(const PrecisionContext& ctx) {
  if (ctx.bits < 128) throw std::invalid_argument("precision must be at least 128 bits");
  if (ctx.guard_digits <= 0) throw std::invalid_argument("guard_digits must be positive");
  if (ctx.trusted_digits() <= 0) throw std::invalid_argument("guard_digits exceed available precision");
}

/// tol(ctx) = 10^-(0.3010*bits - guard_digits), at ctx precision.
inline Real tolerance(const PrecisionContext& ctx) {
  PrecisionScope scope(ctx.bits);
  return pow(Real(10), Real(-ctx.trusted_digits()));
}

/// tol(ctx)^(1/2^k): k=0 algebraic, k=1 single finite difference, k=2 nested.
inline Real tolerance_root(const PrecisionContext& ctx, int k) {
  Real t = tolerance(ctx);
  for (int i = 0; i < k; ++i) t = sqrt(t);
  return t;
}

inline Real sqrt_pi(mpfr_prec_t bits) { return sqrt(Real::pi(bits)); }

/// Complementary error function at the precision of `ctx` (or of `x`, if higher).
inline Real erfc_mp(const Real& x, const PrecisionContext& ctx) {
  if (!x.is_finite()) throw std::invalid_argument("erfc_mp: argument must be finite");
  mpfr_prec_t bits = std::max<mpfr_prec_t>(ctx.bits, x.precision());
  Real arg = rounded(x, bits);
  Real r = erfc(arg);
  if (!r.is_finite()) throw PrecisionError("erfc_mp: evaluation failed");
  return r;
}

// Central finite differences with Richardson extrapolation.

struct FdEstimate {
  Real value;
  Real error;  // |last diagonal - previous diagonal| of the Richardson table
};

namespace detail {

constexpr int kRichardsonLevels = 4;

inline Real fd_base_step(const Real& t, int order, const PrecisionContext& ctx) {
  PrecisionScope scope(std::max<mpfr_prec_t>(ctx.bits, t.precision()));
  Real scale = max(Real(1), abs(t));
  long shift = -ctx.bits / (3 * order);
  return ldexp(scale, shift);
}

template <class Table>
FdEstimate richardson(Table& table) {
  // table[k][0] holds the stencil value at step h/2^k; the error is even in h.
  for (int j = 1; j <= kRichardsonLevels; ++j) {
    long factor = 1L << (2 * j);
    for (int k = j; k <= kRichardsonLevels; ++k) {
      table[k][j] = table[k][j - 1] + (table[k][j - 1] - table[k - 1][j - 1]) / (factor - 1);
    }
  }
  const int L = kRichardsonLevels;
  return {table[L][L], abs(table[L][L] - table[L - 1][L - 1])};
}

inline void check_convergence(const FdEstimate& est, const Real& fscale, const PrecisionContext& ctx,
                              const char* what) {
  Real bound = tolerance_root(ctx, 1) * (abs(est.value) + fscale);
  if (est.error > bound) {
    throw PrecisionError(std::string(what) + ": Richardson table did not converge (error " +
                         est.error.to_string(4) + ")");
  }
}

}  // namespace detail

/// Derivative of order 1 or 2 of `f` at `t`, with a Richardson error estimate.
template <class F>
FdEstimate fd_derivative_estimate(F&& f, const Real& t, int order, const PrecisionContext& ctx) {
  if (order != 1 && order != 2) throw std::invalid_argument("fd_derivative: order must be 1 or 2");
  mpfr_prec_t bits = std::max<mpfr_prec_t>(ctx.bits, t.precision());
  PrecisionScope scope(bits);
  const int L = detail::kRichardsonLevels;
  std::array<std::array<Real, L + 1>, L + 1> table;
  Real h = detail::fd_base_step(t, order, ctx);
  Real fscale(0);
  Real center;
  if (order == 2) {
    center = f(t);
    fscale = abs(center);
  }
  for (int k = 0; k <= L; ++k) {
    Real plus = f(t + h);
    Real minus = f(t - h);
    fscale = max(fscale, max(abs(plus), abs(minus)));
    if (order == 1) {
      table[k][0] = (plus - minus) / (2 * h);
    } else {
      table[k][0] = (plus - 2 * center + minus) / sqr(h);
    }
    h = ldexp(h, -1);
  }
  FdEstimate est = detail::richardson(table);
  detail::check_convergence(est, fscale, ctx, "fd_derivative");
  return est;
}

template <class F>
Real fd_derivative(F&& f, const Real& t, int order, const PrecisionContext& ctx) {
  return fd_derivative_estimate(std::forward<F>(f), t, order, ctx).value;
}

/// Mixed partial d^2 f / dx dy from the four-corner stencil.
template <class F>
FdEstimate fd_mixed_partial_estimate(F&& f, const Real& x, const Real& y, const PrecisionContext& ctx) {
  mpfr_prec_t bits = std::max<mpfr_prec_t>(ctx.bits, std::max(x.precision(), y.precision()));
  PrecisionScope scope(bits);
  const int L = detail::kRichardsonLevels;
  std::array<std::array<Real, L + 1>, L + 1> table;
  Real h = detail::fd_base_step(max(abs(x), abs(y)), 2, ctx);
  Real fscale(0);
  for (int k = 0; k <= L; ++k) {
    Real pp = f(x + h, y + h);
    Real pm = f(x + h, y - h);
    Real mp = f(x - h, y + h);
    Real mm = f(x - h, y - h);
    fscale = max(max(fscale, max(abs(pp), abs(pm))), max(abs(mp), abs(mm)));
    table[k][0] = (pp - pm - mp + mm) / (4 * sqr(h));
    h = ldexp(h, -1);
  }
  FdEstimate est = detail::richardson(table);
  detail::check_convergence(est, fscale, ctx, "fd_mixed_partial");
  return est;
}

template <class F>
Real fd_mixed_partial(F&& f, const Real& x, const Real& y, const PrecisionContext& ctx) {
  return fd_mixed_partial_estimate(std::forward<F>(f), x, y, ctx).value;
}

}  // namespace hpk
