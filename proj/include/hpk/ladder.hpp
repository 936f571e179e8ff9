#pragma once

// Residue data R_n, r_n, sigma_n of the ladder operators at the jump points.
// Computed from the defining formulas (polynomial values at the jumps) and,
// for a single jump, from the recurrence coefficients; the two must agree.

#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "hpk/ortho.hpp"

namespace hpk {

enum class AuxSource { kFromDefinitions, kFromRecurrence };

struct AuxSingle {
  Real t1;
  int n_max = 0;
  std::vector<Real> R;      // n = 0..n_max
  std::vector<Real> r;      // n = 0..n_max, r_0 = 0
  std::vector<Real> sigma;  // n = 0..n_max+1
  AuxSource source = AuxSource::kFromDefinitions;
};

struct AuxDouble {
  Real t1, t2;
  int n_max = 0;
  std::vector<Real> R1, R2, r1, r2;  // n = 0..n_max
  std::vector<Real> sigma;           // n = 0..n_max+1
};

/// The two computation routes disagree beyond tolerance.
class RouteMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// |a - b| / max(|a|, |b|), and 0 when both vanish.
inline Real relative_gap(const Real& a, const Real& b) {
  Real s = max(abs(a), abs(b));
  if (s.is_zero()) return Real::zero(a.precision());
  return abs(a - b) / s;
}

namespace detail {

/// B e^{-t^2} P_n(t)^2 / h_n and B e^{-t^2} P_n(t) P_{n-1}(t) / h_{n-1} for all n.
inline void residues_at(const OrthoSystem& sys, const Real& B, const Real& t, std::vector<Real>& R,
                        std::vector<Real>& r) {
  PrecisionScope scope(sys.working_bits);
  const int N = sys.n_max;
  R.assign(N + 1, Real(0));
  r.assign(N + 1, Real(0));
  if (B.is_zero()) return;
  Real tt = rounded(t, sys.working_bits);
  Real Be = B * exp(-sqr(tt));
  Real pm1(0), p(1);
  for (int n = 0; n <= N; ++n) {
    R[n] = Be * sqr(p) / sys.h[n];
    if (n > 0) r[n] = Be * p * pm1 / sys.h[n - 1];
    Real next = (tt - sys.alpha[n]) * p;
    if (n > 0) next -= sys.beta[n] * pm1;
    pm1 = std::move(p);
    p = std::move(next);
  }
}

inline void check_sigma_routes(const std::vector<Real>& from_sum, const std::vector<Real>& p1, const Real& tol) {
  for (std::size_t n = 0; n < from_sum.size(); ++n) {
    Real via_p = 2 * p1[n];
    if (relative_gap(from_sum[n], via_p) > tol) {
      throw RouteMismatch("sigma_" + std::to_string(n) + ": -sum R_j = " + from_sum[n].to_string(20) +
                          " but 2 p(n) = " + via_p.to_string(20));
    }
  }
}

}  // namespace detail

/// Single-jump residues from their definitions; sigma_n = 2 p(n), cross-checked against -sum R_j.
inline AuxSingle aux_single_from_definitions(const OrthoSystem& sys) {
  if (!sys.spec.single_jump()) throw std::invalid_argument("aux_single_from_definitions: weight has two jumps");
  PrecisionScope scope(sys.working_bits);
  AuxSingle aux;
  aux.t1 = sys.spec.t1;
  aux.n_max = sys.n_max;
  aux.source = AuxSource::kFromDefinitions;
  detail::residues_at(sys, sys.spec.B1, sys.spec.t1, aux.R, aux.r);
  std::vector<Real> partial(sys.n_max + 2, Real(0));
  for (int n = 0; n <= sys.n_max; ++n) partial[n + 1] = partial[n] - aux.R[n];
  detail::check_sigma_routes(partial, sys.p1, tolerance(sys.ctx));
  aux.sigma.resize(sys.n_max + 2);
  for (int n = 0; n <= sys.n_max + 1; ++n) aux.sigma[n] = 2 * sys.p1[n];
  return aux;
}

/// Two-jump residues from their definitions; sigma_n = 2 p(n), cross-checked against -sum (R_{j,1} + R_{j,2}).
inline AuxDouble aux_double_from_definitions(const OrthoSystem& sys) {
  PrecisionScope scope(sys.working_bits);
  AuxDouble aux;
  aux.t1 = sys.spec.t1;
  aux.t2 = sys.spec.t2;
  aux.n_max = sys.n_max;
  detail::residues_at(sys, sys.spec.B1, sys.spec.t1, aux.R1, aux.r1);
  detail::residues_at(sys, sys.spec.B2, sys.spec.t2, aux.R2, aux.r2);
  std::vector<Real> partial(sys.n_max + 2, Real(0));
  for (int n = 0; n <= sys.n_max; ++n) partial[n + 1] = partial[n] - aux.R1[n] - aux.R2[n];
  detail::check_sigma_routes(partial, sys.p1, tolerance(sys.ctx));
  aux.sigma.resize(sys.n_max + 2);
  for (int n = 0; n <= sys.n_max + 1; ++n) aux.sigma[n] = 2 * sys.p1[n];
  return aux;
}

inline std::variant<AuxSingle, AuxDouble> aux_from_definitions(const OrthoSystem& sys) {
  if (sys.spec.single_jump()) return aux_single_from_definitions(sys);
  return aux_double_from_definitions(sys);
}

/// R_n = 2 alpha_n, r_n = 2 beta_n - n. Single jump only.
inline AuxSingle aux_from_recurrence(const OrthoSystem& sys) {
  if (!sys.spec.single_jump()) {
    throw std::invalid_argument("aux_from_recurrence: two-jump weight only determines R_{n,1} + R_{n,2}");
  }
  PrecisionScope scope(sys.working_bits);
  AuxSingle aux;
  aux.t1 = sys.spec.t1;
  aux.n_max = sys.n_max;
  aux.source = AuxSource::kFromRecurrence;
  aux.R.resize(sys.n_max + 1);
  aux.r.resize(sys.n_max + 1);
  for (int n = 0; n <= sys.n_max; ++n) {
    aux.R[n] = 2 * sys.alpha[n];
    aux.r[n] = 2 * sys.beta[n] - n;
  }
  aux.sigma.assign(sys.n_max + 2, Real(0));
  for (int n = 0; n <= sys.n_max; ++n) aux.sigma[n + 1] = aux.sigma[n] - aux.R[n];
  return aux;
}

struct RouteGap {
  int n = 0;
  Real R_gap, r_gap;
};

/// Componentwise relative gaps between the two single-jump routes. The r gap is measured against
/// max(|r_n|, n), the size of the terms cancelling in 2 beta_n - n.
inline std::vector<RouteGap> route_gaps(const AuxSingle& defs, const AuxSingle& rec) {
  std::vector<RouteGap> out;
  for (int n = 0; n <= std::min(defs.n_max, rec.n_max); ++n) {
    Real r_gap = relative_gap(defs.r[n], rec.r[n]);
    if (n > 0) r_gap = abs(defs.r[n] - rec.r[n]) / max(max(abs(defs.r[n]), abs(rec.r[n])), Real(n));
    out.push_back({n, relative_gap(defs.R[n], rec.R[n]), r_gap});
  }
  return out;
}

/// Builds both routes and throws RouteMismatch on any gap above tol(ctx).
inline AuxSingle reconciled_aux_single(const OrthoSystem& sys) {
  AuxSingle defs = aux_single_from_definitions(sys);
  AuxSingle rec = aux_from_recurrence(sys);
  Real tol = tolerance(sys.ctx);
  for (const auto& g : route_gaps(defs, rec)) {
    if (g.R_gap > tol || g.r_gap > tol) {
      throw RouteMismatch("ladder routes disagree at n = " + std::to_string(g.n) + " (R gap " + g.R_gap.to_string(6) +
                          ", r gap " + g.r_gap.to_string(6) + ")");
    }
  }
  return defs;
}

/// Exact derivatives with respect to one jump location.
struct TDerivatives {
  int axis = 1;
  std::vector<Real> h;      // h_n' = -R_n h_n, n = 0..n_max
  std::vector<Real> p;      // p(n)' = r_n, n = 0..n_max
  std::vector<Real> sigma;  // sigma_n' = 2 r_n, n = 0..n_max
  std::vector<Real> beta;   // beta_n' = beta_n (R_{n-1} - R_n), n = 0..n_max (beta_0' = 0)
  std::vector<Real> alpha;  // alpha_n' = r_n - r_{n+1}, n = 0..n_max-1
  std::vector<Real> R;      // single jump: R_n' = 2(r_n - r_{n+1}), n = 0..n_max-1
};

namespace detail {

inline TDerivatives derivatives_for(const OrthoSystem& sys, const std::vector<Real>& R, const std::vector<Real>& r,
                                    int axis, bool single) {
  PrecisionScope scope(sys.working_bits);
  TDerivatives d;
  d.axis = axis;
  const int N = sys.n_max;
  for (int n = 0; n <= N; ++n) {
    d.h.push_back(-R[n] * sys.h[n]);
    d.p.push_back(r[n]);
    d.sigma.push_back(2 * r[n]);
    d.beta.push_back(n == 0 ? Real(0) : sys.beta[n] * (R[n - 1] - R[n]));
  }
  for (int n = 0; n < N; ++n) {
    d.alpha.push_back(r[n] - r[n + 1]);
    if (single) d.R.push_back(2 * (r[n] - r[n + 1]));
  }
  return d;
}

}  // namespace detail

inline TDerivatives exact_t_derivatives(const OrthoSystem& sys, const AuxSingle& aux) {
  return detail::derivatives_for(sys, aux.R, aux.r, 1, true);
}

/// Partial derivatives along t1 (axis 1) or t2 (axis 2).
inline TDerivatives exact_t_derivatives(const OrthoSystem& sys, const AuxDouble& aux, int axis) {
  if (axis != 1 && axis != 2) throw std::invalid_argument("exact_t_derivatives: axis must be 1 or 2");
  return axis == 1 ? detail::derivatives_for(sys, aux.R1, aux.r1, 1, false)
                   : detail::derivatives_for(sys, aux.R2, aux.r2, 2, false);
}

}  // namespace hpk
