#pragma once

// Independent reference values for the unit and acceptance tests. Nothing here calls the
// engine's moment recurrence, Cholesky, or Chebyshev code.

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/erf.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <random>
#include <string>

#include "hpk/moments.hpp"

namespace hpk::oracle {

using Float50 = boost::multiprecision::cpp_bin_float_50;
using Float100 = boost::multiprecision::cpp_bin_float_100;

template <class F>
F to_float(const Real& x) {
  return F(x.to_string(120));
}

template <class F>
Real from_float(const F& x, long bits) {
  return Real(x.str(std::numeric_limits<F>::max_digits10, std::ios_base::scientific), bits);
}

/// log G(n+1) from G(1) = 1 and G(z+1) = Gamma(z) G(z).
inline Real log_barnes_g(int n_plus_1, long bits) {
  PrecisionScope scope(bits);
  Real acc(0), lg;
  for (int z = 1; z < n_plus_1; ++z) {
    mpfr_lngamma(lg.get(), Real(z).get(), MPFR_RNDN);
    acc += lg;
  }
  return acc;
}

/// log D_n for e^{-x^2}: (n/2) log 2pi - (n^2/2) log 2 + log G(n+1).
inline Real gaussian_log_hankel(int n, long bits) {
  PrecisionScope scope(bits);
  Real two_pi = 2 * Real::pi(bits);
  return Real(n) / 2 * log(two_pi) - Real(long(n) * n) / 2 * log(Real(2)) + log_barnes_g(n + 1, bits);
}

/// int_t^inf x^j e^{-x^2} dx by double-exponential quadrature at 50 digits.
inline Float50 half_line_moment_quad(int j, const Float50& t) {
  auto f = [j](const Float50& x) {
    if (abs(x) > 100) return Float50(0);  // below 1e-4000
    return pow(x, j) * exp(-x * x);
  };
  if (t >= 0) {
    boost::math::quadrature::exp_sinh<Float50> q;
    return q.integrate([&](const Float50& u) { return f(t + u); });
  }
  boost::math::quadrature::tanh_sinh<Float50> finite;
  boost::math::quadrature::exp_sinh<Float50> tail;
  return finite.integrate(f, t, Float50(0)) + tail.integrate(f);
}

inline Float100 erfc_reference(const Float100& x) { return boost::math::erfc(x); }

/// A random valid weight with A in (0.2, 2], jumps in [-A, 2] and locations in [-2, 2].
inline WeightSpec random_weight(std::mt19937_64& rng, bool two_jumps) {
  std::uniform_real_distribution<double> ua(0.2, 2.0), ut(-2.0, 2.0), u01(0.0, 1.0);
  WeightSpec w;
  double A = ua(rng);
  double B1 = -A + (A + 2.0) * u01(rng);
  w.A = A;
  w.B1 = B1;
  double t1 = ut(rng), t2 = ut(rng);
  if (two_jumps) {
    double floor_b2 = -(A + B1);
    w.B2 = floor_b2 + (2.0 - floor_b2) * u01(rng);
    if (t1 > t2) std::swap(t1, t2);
    if (t2 - t1 < 0.1) t2 = t1 + 0.1;
  }
  w.t1 = t1;
  w.t2 = t2;
  return w;
}

}  // namespace hpk::oracle
