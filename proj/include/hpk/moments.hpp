#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "hpk/numerics.hpp"

namespace hpk {

/// Thrown when a weight specification violates its positivity or ordering constraints.
class InvalidWeight : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// w(x) = e^{-x^2} (A + B1 H(x - t1) + B2 H(x - t2)), H(0) = 0.
struct WeightSpec {
  Real A{1};
  Real B1{0};
  Real B2{0};
  Real t1{0};
  Real t2{0};

  bool single_jump() const { return B2.is_zero(); }
  bool pure_gaussian() const { return B1.is_zero() && B2.is_zero(); }
};

/// Throws InvalidWeight naming the first violated constraint.
inline void validate(const WeightSpec& w) {
  if (!(w.A.is_finite() && w.B1.is_finite() && w.B2.is_finite() && w.t1.is_finite() && w.t2.is_finite())) {
    throw InvalidWeight("weight parameters must be finite");
  }
  if (w.A < 0) throw InvalidWeight("constraint violated: A >= 0");
  if (w.A + w.B1 < 0) throw InvalidWeight("constraint violated: A + B1 >= 0");
  if (w.A + w.B1 + w.B2 < 0) throw InvalidWeight("constraint violated: A + B1 + B2 >= 0");
  if (!w.B2.is_zero() && !(w.t1 < w.t2)) throw InvalidWeight("constraint violated: t1 < t2 when B2 != 0");
  if (w.A.is_zero() && w.B1.is_zero() && w.B2.is_zero()) throw InvalidWeight("degenerate weight: A = B1 = B2 = 0");
}

/// The same weight with every parameter rounded to `bits`.
inline WeightSpec rounded(const WeightSpec& w, mpfr_prec_t bits) {
  return {rounded(w.A, bits), rounded(w.B1, bits), rounded(w.B2, bits), rounded(w.t1, bits), rounded(w.t2, bits)};
}

/// I_j(t) = int_t^inf x^j e^{-x^2} dx for j = 0..jmax, by upward recurrence.
inline std::vector<Real> half_line_moments(int jmax, const Real& t, const PrecisionContext& ctx) {
  if (jmax < 0) throw std::invalid_argument("half_line_moments: jmax must be >= 0");
  PrecisionScope scope(ctx.bits);
  Real tt = rounded(t, ctx.bits);
  Real e = exp(-sqr(tt));
  std::vector<Real> I(jmax + 1);
  I[0] = sqrt_pi(ctx.bits) * erfc_mp(tt, ctx) / 2;
  if (jmax >= 1) I[1] = e / 2;
  // tpow = t^{j-1}
  Real tpow = tt;
  for (int j = 2; j <= jmax; ++j) {
    I[j] = tpow * e / 2 + (j - 1) * I[j - 2] / 2;
    tpow *= tt;
  }
  return I;
}

inline Real half_line_moment(int j, const Real& t, const PrecisionContext& ctx) {
  if (j < 0) throw std::invalid_argument("half_line_moment: j must be >= 0");
  return half_line_moments(j, t, ctx)[j];
}

/// G_j = int x^j e^{-x^2} dx over the real line.
inline std::vector<Real> gaussian_moments(int jmax, const PrecisionContext& ctx) {
  PrecisionScope scope(ctx.bits);
  std::vector<Real> G(jmax + 1, Real(0));
  if (jmax >= 0) G[0] = sqrt_pi(ctx.bits);
  for (int j = 2; j <= jmax; j += 2) G[j] = G[j - 2] * (j - 1) / 2;
  return G;
}

inline Real gaussian_moment(int j, const PrecisionContext& ctx) {
  if (j < 0) throw std::invalid_argument("gaussian_moment: j must be >= 0");
  return gaussian_moments(j, ctx)[j];
}

/// mu_0..mu_jmax of the jump weight.
inline std::vector<Real> moments(int jmax, const WeightSpec& w, const PrecisionContext& ctx) {
  validate(w);
  PrecisionScope scope(ctx.bits);
  std::vector<Real> mu = gaussian_moments(jmax, ctx);
  for (auto& m : mu) m *= w.A;
  if (!w.B1.is_zero()) {
    auto I = half_line_moments(jmax, w.t1, ctx);
    for (int j = 0; j <= jmax; ++j) mu[j] += w.B1 * I[j];
  }
  if (!w.B2.is_zero()) {
    auto I = half_line_moments(jmax, w.t2, ctx);
    for (int j = 0; j <= jmax; ++j) mu[j] += w.B2 * I[j];
  }
  return mu;
}

inline Real moment(int j, const WeightSpec& w, const PrecisionContext& ctx) {
  if (j < 0) throw std::invalid_argument("moment: j must be >= 0");
  return moments(j, w, ctx)[j];
}

inline Real weight_at(const Real& x, const WeightSpec& w) {
  Real c = w.A;
  if (x > w.t1) c += w.B1;
  if (!w.B2.is_zero() && x > w.t2) c += w.B2;
  return exp(-sqr(x)) * c;
}

}  // namespace hpk
