#pragma once

// Residual checks of the string, difference, differential and limiting
// identities satisfied by the ladder data. Every residual is relative (see
// Tracked) and compared with a tolerance fixed by how many finite-difference
// levels feed it.

#include <cmath>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "hpk/family.hpp"
#include "hpk/residual.hpp"

namespace hpk {

enum class IdentityId {
  S11,
  S12,
  S23,
  S21,
  S22,
  S121,
  S211,
  DIFF_R,
  DIFF_RCAP,
  DISCRETE_SIGMA,
  TODA1,
  TODA2,
  RICCATI_R,
  RICCATI_RCAP,
  PIV_ODE,
  CHAZY,
  SIGMA_FORM,
  BHE_LIMIT,
  HERMITE_LIMIT,
  TJ_STRING,
  TJ_TODA,
  TJ_PDE,
  TJ_PDE_SCALED,
  CONCLUSION_RELATIONS,
};

inline constexpr IdentityId kAllIdentityIds[] = {
    IdentityId::S11,         IdentityId::S12,          IdentityId::S23,           IdentityId::S21,
    IdentityId::S22,         IdentityId::S121,         IdentityId::S211,          IdentityId::DIFF_R,
    IdentityId::DIFF_RCAP,   IdentityId::DISCRETE_SIGMA, IdentityId::TODA1,       IdentityId::TODA2,
    IdentityId::RICCATI_R,   IdentityId::RICCATI_RCAP, IdentityId::PIV_ODE,       IdentityId::CHAZY,
    IdentityId::SIGMA_FORM,  IdentityId::BHE_LIMIT,    IdentityId::HERMITE_LIMIT, IdentityId::TJ_STRING,
    IdentityId::TJ_TODA,     IdentityId::TJ_PDE,       IdentityId::TJ_PDE_SCALED, IdentityId::CONCLUSION_RELATIONS,
};

inline const char* to_string(IdentityId id) {
  switch (id) {
    case IdentityId::S11: return "S11";
    case IdentityId::S12: return "S12";
    case IdentityId::S23: return "S23";
    case IdentityId::S21: return "S21";
    case IdentityId::S22: return "S22";
    case IdentityId::S121: return "S121";
    case IdentityId::S211: return "S211";
    case IdentityId::DIFF_R: return "DIFF_R";
    case IdentityId::DIFF_RCAP: return "DIFF_RCAP";
    case IdentityId::DISCRETE_SIGMA: return "DISCRETE_SIGMA";
    case IdentityId::TODA1: return "TODA1";
    case IdentityId::TODA2: return "TODA2";
    case IdentityId::RICCATI_R: return "RICCATI_R";
    case IdentityId::RICCATI_RCAP: return "RICCATI_RCAP";
    case IdentityId::PIV_ODE: return "PIV_ODE";
    case IdentityId::CHAZY: return "CHAZY";
    case IdentityId::SIGMA_FORM: return "SIGMA_FORM";
    case IdentityId::BHE_LIMIT: return "BHE_LIMIT";
    case IdentityId::HERMITE_LIMIT: return "HERMITE_LIMIT";
    case IdentityId::TJ_STRING: return "TJ_STRING";
    case IdentityId::TJ_TODA: return "TJ_TODA";
    case IdentityId::TJ_PDE: return "TJ_PDE";
    case IdentityId::TJ_PDE_SCALED: return "TJ_PDE_SCALED";
    case IdentityId::CONCLUSION_RELATIONS: return "CONCLUSION_RELATIONS";
  }
  return "?";
}

/// Which tolerance a residual is held to.
enum class ToleranceClass { kAlgebraic, kSingleFd, kDoubleFd, kTrend };

inline const char* to_string(ToleranceClass c) {
  switch (c) {
    case ToleranceClass::kAlgebraic: return "ALGEBRAIC";
    case ToleranceClass::kSingleFd: return "SINGLE_FD";
    case ToleranceClass::kDoubleFd: return "DOUBLE_FD";
    case ToleranceClass::kTrend: return "TREND";
  }
  return "?";
}

enum class Status { kPass, kFail, kSkippedDegenerate };

inline const char* to_string(Status s) {
  switch (s) {
    case Status::kPass: return "PASS";
    case Status::kFail: return "FAIL";
    case Status::kSkippedDegenerate: return "SKIPPED-DEGENERATE";
  }
  return "?";
}

inline Real class_tolerance(ToleranceClass c, const PrecisionContext& ctx) {
  switch (c) {
    case ToleranceClass::kAlgebraic: return tolerance_root(ctx, 0);
    case ToleranceClass::kSingleFd: return tolerance_root(ctx, 1);
    case ToleranceClass::kDoubleFd: return tolerance_root(ctx, 2);
    case ToleranceClass::kTrend: return Real(1);
  }
  return Real(0);
}

/// Parameters of the named equations as functions of n, t1 and the jump sign.
struct IdentitySpec {
  Real piv_alpha1, piv_beta1;
  Real chazy_alpha2, chazy_beta2;
  Real nu0, nu1, nu2;
  Real bhe_gamma, bhe_delta, bhe_alpha, bhe_q;

  static IdentitySpec make(int n, const Real& t1, int jump_sign) {
    IdentitySpec p;
    Real nn(n);
    p.piv_alpha1 = 2 * nn + 1;
    p.piv_beta1 = 0;
    p.chazy_alpha2 = -8 * sqr(nn) / 3;
    p.chazy_beta2 = -64 * pow(nn, 3) / 27;
    p.nu0 = 0;
    p.nu1 = 0;
    p.nu2 = 2 * nn;
    p.bhe_gamma = -1;
    p.bhe_delta = sqrt(Real(2)) * t1;
    p.bhe_alpha = 0;
    p.bhe_q = (jump_sign >= 0 ? -4 : 4) * sqrt(Real(3)) * pow(nn, Real(3) / 2) / 9;
    return p;
  }
};

struct IdentityReport {
  IdentityId id = IdentityId::S11;
  std::string label;
  int n = 0;
  std::vector<Real> t;
  Real residual;
  Real tolerance;
  ToleranceClass cls = ToleranceClass::kAlgebraic;
  Status status = Status::kPass;
  std::string reason;  // skip reason, or supporting numbers for trend checks

  bool pass() const { return status != Status::kFail; }
};

namespace detail {

inline IdentityReport make_report(IdentityId id, std::string label, int n, std::vector<Real> t, Real residual,
                                  ToleranceClass cls, const PrecisionContext& ctx) {
  IdentityReport rep;
  rep.id = id;
  rep.label = std::move(label);
  rep.n = n;
  rep.t = std::move(t);
  rep.tolerance = class_tolerance(cls, ctx);
  rep.cls = cls;
  rep.residual = std::move(residual);
  rep.status = rep.residual <= rep.tolerance ? Status::kPass : Status::kFail;
  return rep;
}

inline IdentityReport skipped(IdentityId id, std::string label, int n, std::vector<Real> t, ToleranceClass cls,
                              const PrecisionContext& ctx, std::string reason) {
  IdentityReport rep = make_report(id, std::move(label), n, std::move(t), Real(0), cls, ctx);
  rep.status = Status::kSkippedDegenerate;
  rep.reason = std::move(reason);
  return rep;
}

inline void require_index(int n, int lo, int hi, const char* what) {
  if (n < lo || n > hi) {
    throw std::out_of_range(std::string(what) + ": n = " + std::to_string(n) + " outside [" + std::to_string(lo) +
                            ", " + std::to_string(hi) + "]");
  }
}

inline std::string join_reals(const std::vector<Real>& v, int digits) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + v[i].to_string(digits);
  return out;
}

}  // namespace detail

// Shared residual formulas. Each returns lhs - rhs as a Tracked expression.

namespace formula {

/// (sigma'')^2 = 4 (t sigma' - sigma)^2 - 4 (sigma' + nu0)(sigma' + nu1)(sigma' + nu2).
inline Tracked jmo(const Real& s, const Real& s1, const Real& s2, const Real& t, int n) {
  IdentitySpec p = IdentitySpec::make(n, t, 1);
  Tracked S(s), S1(s1), S2(s2), T(t);
  Tracked rhs = 4 * sq(T * S1 - S) - 4 * (S1 + Tracked(p.nu0)) * (S1 + Tracked(p.nu1)) * (S1 + Tracked(p.nu2));
  return sq(S2) - rhs;
}

/// Two-variable quartic PDE for sigma_n(t1, t2).
inline Tracked equ(const Real& s, const Real& s1, const Real& s2, const Real& s11, const Real& s22, const Real& s12,
                   const Real& t1, const Real& t2, int n) {
  Tracked S(s), S1(s1), S2(s2), S11(s11), S22(s22), S12(s12);
  Tracked W = Tracked(2L * n) + S1 + S2;
  Tracked D1 = sq(S11 + S12) + 4 * sq(S1) * W;
  Tracked D2 = sq(S22 + S12) + 4 * sq(S2) * W;
  Tracked E = 2 * Tracked(t1) * S1 + 2 * Tracked(t2) * S2 - 2 * S;
  return sq(sq(E) - D1 - D2) - 4 * D1 * D2;
}

}  // namespace formula

/// String relations at index n from the single-jump data of `sys`.
inline std::vector<IdentityReport> check_string_single(const AuxSingle& aux, const OrthoSystem& sys, int n) {
  detail::require_index(n, 1, sys.n_max - 1, "check_string_single");
  PrecisionScope scope(sys.working_bits);
  const auto& ctx = sys.ctx;
  const std::vector<Real> tv{aux.t1};
  Tracked t(aux.t1), Rn(aux.R[n]), Rm(aux.R[n - 1]), rn(aux.r[n]), rp(aux.r[n + 1]);
  Tracked an(sys.alpha[n]), bn(sys.beta[n]), nn(static_cast<long>(n));
  Tracked sumR(Real(0));
  for (int j = 0; j < n; ++j) sumR = sumR + Tracked(aux.R[j]);
  const auto A = ToleranceClass::kAlgebraic;
  std::vector<IdentityReport> out;
  out.push_back(detail::make_report(IdentityId::S11, "s11", n, tv, relative_residual(Rn, 2 * an), A, ctx));
  out.push_back(detail::make_report(IdentityId::S23, "s23", n, tv, relative_residual(rn, 2 * bn - nn), A, ctx));
  out.push_back(detail::make_report(IdentityId::S12, "s12", n, tv, relative_residual(rp + rn, (t - an) * Rn), A, ctx));
  out.push_back(detail::make_report(IdentityId::S21, "s21", n, tv, relative_residual(sq(rn), bn * Rn * Rm), A, ctx));
  out.push_back(detail::make_report(IdentityId::S22, "s22a", n, tv,
                                    relative_residual(2 * t * rn - 2 * bn * (Rn + Rm) + sumR), A, ctx));
  if (aux.R[n].is_zero()) {
    out.push_back(detail::skipped(IdentityId::S22, "s22", n, tv, A, ctx, "R_n = 0"));
  } else {
    out.push_back(detail::make_report(IdentityId::S22, "s22", n, tv,
                                      relative_residual(2 * t * rn - (nn + rn) * Rn - 2 * sq(rn) / Rn + sumR), A, ctx));
  }
  out.push_back(detail::make_report(IdentityId::S121, "s121", n, tv,
                                    relative_residual(rp + rn, (t - Rn / 2) * Rn), A, ctx));
  out.push_back(detail::make_report(IdentityId::S211, "s211", n, tv,
                                    relative_residual(sq(rn), (nn + rn) * Rn * Rm / 2), A, ctx));
  return out;
}

/// Second-order difference equations for r_n, R_n and sigma_n.
inline std::vector<IdentityReport> check_difference(const AuxSingle& aux, int n, const PrecisionContext& ctx) {
  detail::require_index(n, 1, aux.n_max - 1, "check_difference");
  const std::vector<Real> tv{aux.t1};
  Tracked t(aux.t1), N(static_cast<long>(n));
  Tracked t2 = sq(t);
  std::vector<IdentityReport> out;
  {
    Tracked rm(aux.r[n - 1]), r(aux.r[n]), rp(aux.r[n + 1]);
    Tracked nr = N + r;
    Tracked lhs = sq(sq(nr) * (rm + r - t2) * rp + sq(nr) * r * rm + 2 * N * r * r * r - N * (t2 - N) * sq(r) -
                     sq(N) * t2 * r);
    Tracked rhs = t2 * sq(nr) * (t2 - 2 * rm - 2 * r) * sq(N * r + nr * rp);
    out.push_back(detail::make_report(IdentityId::DIFF_R, "dr", n, tv, relative_residual(lhs, rhs),
                                      ToleranceClass::kAlgebraic, ctx));
  }
  {
    Tracked Rm(aux.R[n - 1]), R(aux.R[n]), Rp(aux.R[n + 1]);
    Tracked lhs = sq((2 * sq(R) - 4 * t * R + Rm * R - 4 * N - 4) * Rp + 2 * (sq(R) - 2 * t * R - 2 * N) * Rm +
                     2 * R * sq(R - 2 * t));
    Tracked rhs = Rm * Rp * (Rm * R + 8 * N) * (R * Rp + 8 * N + 8);
    out.push_back(detail::make_report(IdentityId::DIFF_RCAP, "dr1", n, tv, relative_residual(lhs, rhs),
                                      ToleranceClass::kAlgebraic, ctx));
  }
  {
    Tracked sm(aux.sigma[n - 1]), s(aux.sigma[n]), sp(aux.sigma[n + 1]);
    Tracked lhs = 2 * sq(s + N * (sm - sp));
    Tracked rhs = (s - sp) * (sm - s) * (s + 2 * N * t) * (sp - sm + 2 * t);
    out.push_back(detail::make_report(IdentityId::DISCRETE_SIGMA, "dsigma", n, tv, relative_residual(lhs, rhs),
                                      ToleranceClass::kAlgebraic, ctx));
  }
  return out;
}

/// Stencil family used by the derivative checks at index n of `spec`.
inline Family family_for(const WeightSpec& spec, int n, const PrecisionContext& ctx) { return Family(spec, n + 2, ctx); }

/// Riccati and Toda equations, with derivatives from finite differences over rebuilt systems,
/// plus reconciliation of those derivatives with the exact first-derivative formulas.
inline std::vector<IdentityReport> check_riccati_toda(const Family& fam, int n) {
  detail::require_index(n, 1, fam.n_max() - 1, "check_riccati_toda");
  const auto& ctx = fam.ctx();
  const FamilyPoint& c = fam.center();
  PrecisionScope scope(c.sys.working_bits);
  const std::vector<Real> tv{fam.base().t1};
  const auto F = ToleranceClass::kSingleFd;
  Tracked t(fam.base().t1), N(static_cast<long>(n));
  Tracked R(c.aux.R1[n]), r(c.aux.r1[n]);
  Tracked dR(fam.d(Quantity::kR, n)), dr(fam.d(Quantity::kr, n));
  Tracked dalpha(fam.d(Quantity::kAlpha, n)), dbeta(fam.d(Quantity::kBeta, n));
  Tracked an(c.sys.alpha[n]), am(c.sys.alpha[n - 1]), bn(c.sys.beta[n]), bp(c.sys.beta[n + 1]);
  std::vector<IdentityReport> out;
  if (c.aux.R1[n].is_zero()) {
    out.push_back(detail::skipped(IdentityId::RICCATI_R, "ri1", n, tv, F, ctx, "R_n = 0"));
  } else {
    out.push_back(detail::make_report(IdentityId::RICCATI_R, "ri1", n, tv,
                                      relative_residual(dr, 2 * sq(r) / R - (N + r) * R), F, ctx));
  }
  out.push_back(detail::make_report(IdentityId::RICCATI_RCAP, "ri2", n, tv,
                                    relative_residual(dR, sq(R) - 2 * t * R + 4 * r), F, ctx));
  out.push_back(detail::make_report(IdentityId::TODA1, "toda1", n, tv, relative_residual(dbeta, 2 * bn * (am - an)),
                                    F, ctx));
  out.push_back(detail::make_report(IdentityId::TODA2, "toda2", n, tv,
                                    relative_residual(dalpha, 2 * (bn - bp) + 1), F, ctx));

  // Exact first derivatives against the finite-difference oracle.
  TDerivatives ex = exact_t_derivatives(c.sys, AuxSingle{c.aux.t1, c.aux.n_max, c.aux.R1, c.aux.r1, c.aux.sigma});
  auto fd_vs_exact = [&](IdentityId id, const char* label, Quantity q, const Real& exact) {
    out.push_back(
        detail::make_report(id, label, n, tv, relative_residual(Tracked(fam.d(q, n)), Tracked(exact)), F, ctx));
  };
  fd_vs_exact(IdentityId::TODA1, "hn-exact", Quantity::kH, ex.h[n]);
  fd_vs_exact(IdentityId::TODA1, "beta-exact", Quantity::kBeta, ex.beta[n]);
  fd_vs_exact(IdentityId::TODA2, "p-exact", Quantity::kP, ex.p[n]);
  fd_vs_exact(IdentityId::TODA2, "alpha-exact", Quantity::kAlpha, ex.alpha[n]);
  fd_vs_exact(IdentityId::RICCATI_RCAP, "R-exact", Quantity::kR, ex.R[n]);
  out.push_back(detail::make_report(IdentityId::TODA1, "logh", n, tv,
                                    relative_residual(Tracked(fam.d(Quantity::kLogH, n)), -R), F, ctx));
  return out;
}

/// Second-order ODEs in t: the PIV form for R_n (directly and through y(t) = R_n(-t)),
/// the squared r_n equation (directly and through v = -2 r_n - 2n/3), and the sigma form.
inline std::vector<IdentityReport> check_ode(const Family& fam, int n) {
  detail::require_index(n, 1, fam.n_max() - 1, "check_ode");
  const auto& ctx = fam.ctx();
  const FamilyPoint& c = fam.center();
  PrecisionScope scope(c.sys.working_bits);
  const Real& t0 = fam.base().t1;
  const std::vector<Real> tv{t0};
  const auto F = ToleranceClass::kSingleFd;
  IdentitySpec par = IdentitySpec::make(n, t0, fam.base().B1.sign());
  Tracked t(t0), N(static_cast<long>(n));
  std::vector<IdentityReport> out;

  Tracked R(c.aux.R1[n]), dR(fam.d(Quantity::kR, n, 1, 1)), ddR(fam.d(Quantity::kR, n, 1, 2));
  // Multiplied through by 2R.
  Tracked sod = 2 * R * ddR - sq(dR) - 3 * sq(sq(R)) + 8 * t * R * sq(R) - 4 * (sq(t) - 2 * N - 1) * sq(R);
  out.push_back(detail::make_report(IdentityId::PIV_ODE, "sod", n, tv, relative_residual(sod), F, ctx));

  {
    // y(tau) = R_n(-tau), differentiated as its own function at tau = -t.
    Real tau = -t0;
    auto y = [&](const Real& x) { return quantity_value(fam.at(-x), Quantity::kR, n); };
    Tracked Y(y(tau)), dY(fd_derivative(y, tau, 1, ctx)), ddY(fd_derivative(y, tau, 2, ctx));
    Tracked T(tau);
    Tracked p4 = 2 * Y * ddY - sq(dY) - 3 * sq(sq(Y)) - 8 * T * Y * sq(Y) -
                 4 * (sq(T) - Tracked(par.piv_alpha1)) * sq(Y) - 2 * Tracked(par.piv_beta1);
    out.push_back(detail::make_report(IdentityId::PIV_ODE, "p4", n, {tau}, relative_residual(p4), F, ctx));
  }

  Tracked r(c.aux.r1[n]), dr(fam.d(Quantity::kr, n, 1, 1)), ddr(fam.d(Quantity::kr, n, 1, 2));
  {
    Tracked lhs = sq(ddr + 12 * sq(r) + 8 * N * r);
    Tracked rhs = 4 * sq(t) * (sq(dr) + 8 * r * sq(r) + 8 * N * sq(r));
    out.push_back(detail::make_report(IdentityId::CHAZY, "difr", n, tv, relative_residual(lhs, rhs), F, ctx));
  }
  {
    Real shift = Real(2 * n) / 3;
    auto v = [&](const Real& x) { return -2 * quantity_value(fam.at(x), Quantity::kr, n) - shift; };
    Tracked V(v(t0)), dV(fd_derivative(v, t0, 1, ctx)), ddV(fd_derivative(v, t0, 2, ctx));
    Tracked a2(par.chazy_alpha2), b2(par.chazy_beta2);
    Tracked lhs = sq(ddV - 6 * sq(V) - a2);
    Tracked rhs = 4 * sq(t) * (sq(dV) - 4 * V * sq(V) - 2 * a2 * V - b2);
    out.push_back(detail::make_report(IdentityId::CHAZY, "chazy", n, tv, relative_residual(lhs, rhs), F, ctx));
  }
  {
    Real s = c.aux.sigma[n], ds = fam.d(Quantity::kSigma, n, 1, 1), dds = fam.d(Quantity::kSigma, n, 1, 2);
    out.push_back(detail::make_report(IdentityId::SIGMA_FORM, "jmo", n, tv,
                                      relative_residual(formula::jmo(s, ds, dds, t0, n)), F, ctx));
  }
  return out;
}

/// sigma_n = d/dt log D_n, r_n = sigma_n'/2, R_n = (2t sigma' - 2 sigma - sigma'')/(4n + 2 sigma').
inline std::vector<IdentityReport> check_conclusion_relations(const Family& fam, int n) {
  detail::require_index(n, 1, fam.n_max() - 1, "check_conclusion_relations");
  const auto& ctx = fam.ctx();
  const FamilyPoint& c = fam.center();
  PrecisionScope scope(c.sys.working_bits);
  const Real& t0 = fam.base().t1;
  const std::vector<Real> tv{t0};
  const auto F = ToleranceClass::kSingleFd;
  Tracked s(c.aux.sigma[n]), r(c.aux.r1[n]), R(c.aux.R1[n]), t(t0), N(static_cast<long>(n));
  Tracked dlogD(fam.d(Quantity::kLogD, n)), ds(fam.d(Quantity::kSigma, n, 1, 1)), dds(fam.d(Quantity::kSigma, n, 1, 2));
  std::vector<IdentityReport> out;
  out.push_back(detail::make_report(IdentityId::CONCLUSION_RELATIONS, "sigma-logD", n, tv,
                                    relative_residual(s, dlogD), F, ctx));
  out.push_back(
      detail::make_report(IdentityId::CONCLUSION_RELATIONS, "r-sigma", n, tv, relative_residual(r, ds / 2), F, ctx));
  Tracked den = 4 * N + 2 * ds;
  if (relative_residual(den) <= class_tolerance(F, ctx)) {
    out.push_back(detail::skipped(IdentityId::CONCLUSION_RELATIONS, "R-sigma", n, tv, F, ctx, "4n + 2 sigma' ~ 0"));
  } else {
    out.push_back(detail::make_report(IdentityId::CONCLUSION_RELATIONS, "R-sigma", n, tv,
                                      relative_residual(R, (2 * t * ds - 2 * s - dds) / den), F, ctx));
  }
  return out;
}

/// Residual of the exact second-order ODE in z for P_n, with R_n' from the exact derivative formula.
inline IdentityReport check_ode1(const OrthoSystem& sys, const AuxSingle& aux, int n, const Real& z) {
  detail::require_index(n, 1, sys.n_max - 1, "check_ode1");
  PrecisionScope scope(sys.working_bits);
  const std::vector<Real> tv{aux.t1, z};
  const auto A = ToleranceClass::kAlgebraic;
  if (aux.R[n].is_zero()) return detail::skipped(IdentityId::BHE_LIMIT, "ode1", n, tv, A, sys.ctx, "R_n = 0");
  if (z == aux.t1) return detail::skipped(IdentityId::BHE_LIMIT, "ode1", n, tv, A, sys.ctx, "z at the jump");
  PolyDerivs P = eval_poly_derivs(sys, n, z);
  Tracked p(P.p), dp(P.dp), ddp(P.d2p);
  Tracked R(aux.R[n]), dR(exact_t_derivatives(sys, aux).R[n]);
  Tracked t(aux.t1), Z(z), N(static_cast<long>(n));
  Tracked zt = Z - t;
  Tracked den = 2 * Z - 2 * t + R;
  Tracked K = dR - sq(R) + 2 * t * R;
  Tracked c1 = R / (zt * den) - 2 * Z;
  Tracked c0 = 2 * N - K / (4 * sq(zt)) + R * K / (4 * sq(zt) * den) +
               (sq(dR) - sq(sq(R)) + 4 * t * R * sq(R) + (8 * N - 4 * sq(t)) * sq(R)) / (8 * zt * R);
  return detail::make_report(IdentityId::BHE_LIMIT, "ode1", n, tv, relative_residual(ddp + dp * c1 + p * c0), A,
                             sys.ctx);
}

namespace detail {

inline IdentityReport trend_report(IdentityId id, std::string label, const std::vector<int>& ns,
                                   const std::vector<Real>& res, std::vector<Real> t, const PrecisionContext& ctx) {
  Real ratio = res.back().is_zero() ? Real(0) : res.back() / res.front();
  IdentityReport rep = make_report(id, std::move(label), ns.back(), std::move(t), ratio, ToleranceClass::kTrend, ctx);
  if (!(ratio < 1) && !res.back().is_zero()) rep.status = Status::kFail;
  std::string detail = "n = ";
  for (std::size_t i = 0; i < ns.size(); ++i) detail += (i ? "," : "") + std::to_string(ns[i]);
  rep.reason = detail + "; residuals " + join_reals(res, 4);
  return rep;
}

}  // namespace detail

/// Double-scaled jump location sqrt(2n) + s / (sqrt(2) n^{1/6}).
inline Real edge_location(int n, const Real& s) {
  Real nn(n);
  return sqrt(2 * nn) + s / (sqrt(Real(2)) * pow(nn, Real(1) / 6));
}

struct LimitOptions {
  std::vector<int> ns{64, 256, 1024};
  Real u{0.7};       // biconfluent Heun point, z = u / sqrt(2) + t1
  Real z{0.7};       // Hermite point
  Real s{1};         // double-scaling variable for the Hermite limit
  std::vector<Real> ode1_z{Real(0.3), Real(0.7), Real(1.5)};
  int ode1_n = 10;
};

/// Exact ODE at finite n and the two large-n limits (as trends over opts.ns).
inline std::vector<IdentityReport> check_limits(const WeightSpec& spec, const PrecisionContext& ctx,
                                                const LimitOptions& opts) {
  std::vector<IdentityReport> out;
  {
    OrthoSystem sys = build_system(spec, opts.ode1_n + 1, ctx);
    AuxSingle aux = reconciled_aux_single(sys);
    for (const Real& z : opts.ode1_z) out.push_back(check_ode1(sys, aux, opts.ode1_n, z));
  }
  if (opts.ns.size() < 2) throw std::invalid_argument("check_limits: need at least two n values");
  if (spec.B1.is_zero()) {
    out.push_back(detail::skipped(IdentityId::BHE_LIMIT, "bhe", opts.ns.back(), {spec.t1, opts.u},
                                  ToleranceClass::kTrend, ctx, "no jump"));
  } else {
    std::vector<Real> res;
    for (int n : opts.ns) {
      OrthoSystem sys = build_system(spec, n, ctx);
      PrecisionScope scope(sys.working_bits);
      IdentitySpec par = IdentitySpec::make(n, spec.t1, spec.B1.sign());
      Real rt2 = sqrt(Real(2));
      PolyDerivs P = eval_poly_derivs(sys, n, opts.u / rt2 + spec.t1);
      // d/du = (1/sqrt 2) d/dz
      Tracked p(P.p), dp(P.dp / rt2), ddp(P.d2p / 2), u(opts.u);
      Tracked expr = ddp - (Tracked(par.bhe_gamma) / u + Tracked(par.bhe_delta) + u) * dp +
                     (Tracked(par.bhe_alpha) * u - Tracked(par.bhe_q)) / u * p;
      res.push_back(relative_residual(expr));
    }
    out.push_back(detail::trend_report(IdentityId::BHE_LIMIT, "bhe", opts.ns, res, {spec.t1, opts.u}, ctx));
  }
  {
    std::vector<Real> res;
    for (int n : opts.ns) {
      WeightSpec w = spec;
      {
        PrecisionScope scope(working_bits_for(n, ctx));
        w.t1 = edge_location(n, opts.s);
      }
      OrthoSystem sys = build_system(w, n, ctx);
      PrecisionScope scope(sys.working_bits);
      PolyDerivs P = eval_poly_derivs(sys, n, opts.z);
      Tracked p(P.p), dp(P.dp), ddp(P.d2p), z(opts.z);
      res.push_back(relative_residual(ddp - 2 * z * dp + 2 * Tracked(static_cast<long>(n)) * p));
    }
    out.push_back(detail::trend_report(IdentityId::HERMITE_LIMIT, "hermite", opts.ns, res, {opts.s, opts.z}, ctx));
  }
  return out;
}

// Two jumps.

/// Algebraic relations among the two-jump residues, plus the t-derivative checks in (t1, t2).
inline std::vector<IdentityReport> check_two_jump(const Family& fam, int n) {
  detail::require_index(n, 1, fam.n_max() - 1, "check_two_jump");
  const auto& ctx = fam.ctx();
  const FamilyPoint& c = fam.center();
  PrecisionScope scope(c.sys.working_bits);
  const Real& t1v = fam.base().t1;
  const Real& t2v = fam.base().t2;
  const std::vector<Real> tv{t1v, t2v};
  const auto A = ToleranceClass::kAlgebraic;
  const auto F = ToleranceClass::kSingleFd;
  const auto FF = ToleranceClass::kDoubleFd;
  const AuxDouble& x = c.aux;
  Tracked t1(t1v), t2(t2v), N(static_cast<long>(n));
  Tracked R1(x.R1[n]), R2(x.R2[n]), R1m(x.R1[n - 1]), R2m(x.R2[n - 1]);
  Tracked r1(x.r1[n]), r2(x.r2[n]), r1p(x.r1[n + 1]), r2p(x.r2[n + 1]);
  Tracked an(c.sys.alpha[n]), am(c.sys.alpha[n - 1]), bn(c.sys.beta[n]), bp(c.sys.beta[n + 1]);
  Tracked sig(x.sigma[n]);
  Tracked sum1(Real(0)), sum2(Real(0));
  for (int j = 0; j < n; ++j) {
    sum1 = sum1 + Tracked(x.R1[j]);
    sum2 = sum2 + Tracked(x.R2[j]);
  }
  std::vector<IdentityReport> out;
  auto add = [&](IdentityId id, const char* label, Real res, ToleranceClass cls) {
    out.push_back(detail::make_report(id, label, n, tv, std::move(res), cls, ctx));
  };
  const auto S = IdentityId::TJ_STRING;
  add(S, "s1e", relative_residual(R1 + R2, 2 * an), A);
  add(S, "s1e-r1", relative_residual(r1p + r1, (t1 - an) * R1), A);
  add(S, "s1e-r2", relative_residual(r2p + r2, (t2 - an) * R2), A);
  add(S, "s2p1", relative_residual(bn, (N + r1 + r2) / 2), A);
  add(S, "s2p2", relative_residual(sq(r1), bn * R1 * R1m), A);
  add(S, "s2p3", relative_residual(sq(r2), bn * R2 * R2m), A);
  Tracked cross = R1 * R2m + R2 * R1m;
  add(S, "s2p4",
      relative_residual(2 * r1 * r2 / (t1 - t2) + 2 * t1 * r1 + sum1, bn * (cross / (t1 - t2) + 2 * R1 + 2 * R1m)), A);
  add(S, "s2p5",
      relative_residual(2 * r1 * r2 / (t2 - t1) + 2 * t2 * r2 + sum2, bn * (cross / (t2 - t1) + 2 * R2 + 2 * R2m)), A);
  add(S, "s2p6", relative_residual(2 * t1 * r1 + 2 * t2 * r2 + sum1 + sum2, 2 * bn * (R1 + R2 + R1m + R2m)), A);

  Tracked db1(fam.d(Quantity::kBeta, n, 1)), db2(fam.d(Quantity::kBeta, n, 2));
  Tracked da1(fam.d(Quantity::kAlpha, n, 1)), da2(fam.d(Quantity::kAlpha, n, 2));
  add(S, "s2p7", relative_residual(2 * t1 * r1 + 2 * t2 * r2 - sig, 4 * bn * (R1 + R2) + 2 * db1 + 2 * db2), F);

  const auto T = IdentityId::TJ_TODA;
  add(T, "toda11", relative_residual(db1 + db2, 2 * bn * (am - an)), F);
  add(T, "toda21", relative_residual(da1 + da2, 2 * (bn - bp) + 1), F);
  add(T, "h1", relative_residual(Tracked(fam.d(Quantity::kLogH, n, 1)), -R1), F);
  add(T, "h2", relative_residual(Tracked(fam.d(Quantity::kLogH, n, 2)), -R2), F);
  add(T, "dp1", relative_residual(Tracked(fam.d(Quantity::kP, n, 1)), r1), F);
  add(T, "dp2", relative_residual(Tracked(fam.d(Quantity::kP, n, 2)), r2), F);

  Real s1 = fam.d(Quantity::kSigma, n, 1, 1), s2 = fam.d(Quantity::kSigma, n, 2, 1);
  Real s11 = fam.d(Quantity::kSigma, n, 1, 2), s22 = fam.d(Quantity::kSigma, n, 2, 2);
  Real s12 = fam.mixed(Quantity::kSigma, n);
  Tracked S1(s1), S2(s2), S11(s11), S22(s22), S12(s12);
  add(T, "rn1", relative_residual(S1, 2 * r1), F);
  add(T, "rn2", relative_residual(S2, 2 * r2), F);
  add(T, "ben", relative_residual(bn, (2 * N + S1 + S2) / 4), F);
  Tracked W = 2 * N + S1 + S2;
  if (x.R1[n].is_zero()) {
    out.push_back(detail::skipped(T, "sig1", n, tv, FF, ctx, "R_{n,1} = 0"));
  } else {
    add(T, "sig1", relative_residual(S11 + S12, sq(S1) / R1 - W * R1), FF);
  }
  if (x.R2[n].is_zero()) {
    out.push_back(detail::skipped(T, "sig2", n, tv, FF, ctx, "R_{n,2} = 0"));
  } else {
    add(T, "sig2", relative_residual(S22 + S12, sq(S2) / R2 - W * R2), FF);
  }

  add(IdentityId::TJ_PDE, "equ", relative_residual(formula::equ(x.sigma[n], s1, s2, s11, s22, s12, t1v, t2v, n)), FF);
  if (fam.base().B2.is_zero()) {
    // Reduction to the single-jump sigma form; same stencil, same formula as the jmo report.
    add(IdentityId::TJ_PDE, "p41", relative_residual(formula::jmo(x.sigma[n], s1, s11, t1v, n)), F);
  }
  const WeightSpec& w = fam.base();
  if (!w.B2.is_zero() && w.B1 == -w.B2 && t1v == -t2v) {
    Tracked sumR(Real(0));
    for (int j = 0; j < n; ++j) sumR = sumR + Tracked(x.R1[j]) + Tracked(x.R2[j]);
    add(IdentityId::TJ_PDE, "symmetric-sigma", relative_residual(sumR), A);
    add(IdentityId::TJ_PDE, "symmetric-R", relative_residual(R1 + R2), A);
  }
  return out;
}

struct ScaledPdeOptions {
  std::vector<int> ns{16, 64, 256};
  Real s1{-1}, s2{1};
};

/// Residual of the limiting PDE for sigma_n in the double-scaled variables, as a trend in n.
inline IdentityReport check_scaled_pde(const WeightSpec& spec, const PrecisionContext& ctx,
                                       const ScaledPdeOptions& opts) {
  if (opts.ns.size() < 2) throw std::invalid_argument("check_scaled_pde: need at least two n values");
  if (!(opts.s1 < opts.s2)) throw std::invalid_argument("check_scaled_pde: need s1 < s2");
  std::vector<Real> res;
  for (int n : opts.ns) {
    PrecisionScope scope(working_bits_for(n + 2, ctx));
    WeightSpec w = spec;
    w.t1 = edge_location(n, opts.s1);
    w.t2 = edge_location(n, opts.s2);
    Family fam(w, n + 2, ctx);
    // d/ds = c d/dt with c = n^{-1/6} / sqrt 2.
    Real c = pow(Real(n), Real(-1) / 6) / sqrt(Real(2));
    Real c2 = sqr(c);
    Tracked S(fam.center().aux.sigma[n]);
    Tracked S1(c * fam.d(Quantity::kSigma, n, 1, 1)), S2(c * fam.d(Quantity::kSigma, n, 2, 1));
    Tracked S11(c2 * fam.d(Quantity::kSigma, n, 1, 2)), S22(c2 * fam.d(Quantity::kSigma, n, 2, 2));
    Tracked S12(c2 * fam.mixed(Quantity::kSigma, n));
    Tracked a(opts.s1), b(opts.s2);
    Tracked lhs = S1 * sq(S22 + S12) + S2 * sq(S11 + S12);
    Tracked rhs = 4 * S1 * S2 * (a * S1 + b * S2 - S);
    res.push_back(relative_residual(lhs, rhs));
  }
  return detail::trend_report(IdentityId::TJ_PDE_SCALED, "scaled-pde", opts.ns, res, {opts.s1, opts.s2}, ctx);
}

struct SuiteOptions {
  std::vector<int> ns{3, 8, 20};
  bool limits = true;         // ode1, BHE and Hermite checks (single-jump part only)
  bool scaled_pde = true;     // double-scaled PDE trend (two-jump weights only)
  Real reduction_offset{1};   // t2 - t1 used for the B2 = 0 reduction of a single-jump weight
  LimitOptions limit_options;
  ScaledPdeOptions scaled_options;
};

/// Every single-jump check at index n for the weight (A, B1, t1).
inline std::vector<IdentityReport> run_single_jump_checks(const WeightSpec& spec, int n, const PrecisionContext& ctx) {
  std::vector<IdentityReport> out;
  auto append = [&](std::vector<IdentityReport> v) { out.insert(out.end(), v.begin(), v.end()); };
  Family fam = family_for(spec, n, ctx);
  const FamilyPoint& c = fam.center();
  AuxSingle aux = reconciled_aux_single(c.sys);
  append(check_string_single(aux, c.sys, n));
  append(check_difference(aux, n, ctx));
  append(check_riccati_toda(fam, n));
  append(check_ode(fam, n));
  append(check_conclusion_relations(fam, n));
  return out;
}

/// Full identity suite over opts.ns. A single-jump weight also runs the two-jump checks on
/// its B2 = 0 embedding; a two-jump weight also runs the single-jump checks on (A, B1, t1).
inline std::vector<IdentityReport> run_suite(const WeightSpec& spec, const PrecisionContext& ctx,
                                             const SuiteOptions& opts = {}) {
  validate(spec);
  validate(ctx);
  std::vector<IdentityReport> out;
  auto append = [&](std::vector<IdentityReport> v) { out.insert(out.end(), v.begin(), v.end()); };
  WeightSpec single = spec;
  single.B2 = 0;
  WeightSpec twin = spec;
  if (spec.single_jump()) {
    twin.B2 = 0;
    twin.t2 = spec.t1 + opts.reduction_offset;
  }
  for (int n : opts.ns) {
    if (n < 1) throw std::invalid_argument("run_suite: n must be at least 1");
    append(run_single_jump_checks(single, n, ctx));
    append(check_two_jump(Family(twin, n + 2, ctx), n));
  }
  if (opts.limits && !single.B1.is_zero()) append(check_limits(single, ctx, opts.limit_options));
  if (opts.scaled_pde && !spec.single_jump()) out.push_back(check_scaled_pde(spec, ctx, opts.scaled_options));
  return out;
}

inline bool all_pass(const std::vector<IdentityReport>& reports) {
  for (const auto& r : reports) {
    if (!r.pass()) return false;
  }
  return true;
}

}  // namespace hpk
