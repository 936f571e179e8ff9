#pragma once

// Large-n expansions of R_n: exact re-derivation of the series coefficients,
// comparison with the printed tables, and numeric comparison against the engine.

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "hpk/ladder.hpp"
#include "hpk/parallel.hpp"
#include "hpk/series.hpp"

namespace hpk {

enum class SeriesOde { kUS, kVS, kWS, kP34, kSodLargeN };

inline const char* to_string(SeriesOde ode) {
  switch (ode) {
    case SeriesOde::kUS: return "US";
    case SeriesOde::kVS: return "VS";
    case SeriesOde::kWS: return "WS";
    case SeriesOde::kP34: return "P34";
    case SeriesOde::kSodLargeN: return "SOD_LARGE_N";
  }
  return "?";
}

/// Series that the ODE residuals are evaluated on. Only the members the chosen ODE needs must be set.
struct SeriesBundle {
  AlgebraicSeries R;               // in n^{-1/2}, fixed t
  AlgebraicSeries v1, v2, v3;      // in 1/s
  AlgebraicSeries vhat;            // in 1/s; P34 uses -v1/sqrt2 when left empty
};

namespace series_ode {

using S = AlgebraicSeries;

inline S s_var() { return S::s_variable(); }
inline S konst(SeriesVariable var, const AlgebraicNumber& c) { return S::constant(var, TPoly(c)); }

/// (sod) multiplied by 2R with n = X^{-2}.
inline S sod_large_n(const S& R) {
  const auto X = SeriesVariable::kInvSqrtN;
  S t = S::constant(X, TPoly::t());
  S R1 = R.derivative(), R2 = R1.derivative();
  S RR = R * R;
  S inv_n = S::monomial(X, 1, -2);
  return 2 * (R * R2) - R1 * R1 - 3 * (RR * RR) + 8 * (t * R * RR) - 4 * ((t * t - konst(X, 1)) * RR) +
         8 * (inv_n * RR);
}

/// (us) multiplied by 2 v1.
inline S us(const S& v1) {
  S d1 = v1.derivative(), d2 = d1.derivative();
  S sq2 = konst(SeriesVariable::kInvS, AlgebraicNumber::sqrt2());
  S v1sq = v1 * v1;
  return 2 * (v1 * d2) - d1 * d1 + 4 * (sq2 * v1sq * v1) - 4 * (s_var() * v1sq);
}

/// (vs) multiplied by 2 v1^2.
inline S vs(const S& v1, const S& v2) {
  S a1 = v1.derivative(), b1 = v2.derivative(), b2 = b1.derivative();
  S sq2 = konst(SeriesVariable::kInvS, AlgebraicNumber::sqrt2());
  S v1sq = v1 * v1, v1cu = v1sq * v1;
  return 2 * (v1sq * b2) - 2 * (v1 * a1 * b1) + (a1 * a1 + 8 * (sq2 * v1cu) - 4 * (s_var() * v1sq)) * v2 + 2 * v1cu;
}

/// (ws) multiplied by 2 v1^3, with (v1')^2 / (2 v1^2) as the v3 coefficient's first term.
inline S ws(const S& v1, const S& v2, const S& v3) {
  S a1 = v1.derivative(), b1 = v2.derivative(), c1 = v3.derivative(), c2 = c1.derivative();
  S sq2 = konst(SeriesVariable::kInvS, AlgebraicNumber::sqrt2());
  S s = s_var();
  S v1sq = v1 * v1, v1cu = v1sq * v1, v1q = v1cu * v1;
  S out = 2 * (v1cu * c2) - 2 * (v1sq * a1 * c1) + (v1 * a1 * a1 + 8 * (sq2 * v1q) - 4 * (s * v1cu)) * v3;
  out = out - v1sq * b1 * b1 + 2 * (v1 * a1 * v2 * b1) - a1 * a1 * v2 * v2;
  out = out - s * s * v1q + 2 * (sq2 * s * v1q * v1) -
        konst(SeriesVariable::kInvS, AlgebraicNumber::ratio(3, 2)) * v1cu * v1cu;
  out = out + 2 * (v1cu * v2) + 4 * (sq2 * v1cu * v2 * v2);
  return out;
}

/// (p34) multiplied by 2 vhat.
inline S p34(const S& vh) {
  S d1 = vh.derivative(), d2 = d1.derivative();
  S vsq = vh * vh;
  return 2 * (vh * d2) - 8 * (vsq * vh) - 4 * (s_var() * vsq) - d1 * d1;
}

}  // namespace series_ode

/// Residual series of `ode` on the bundle; exact zero through (trunc - 1) means the series solves it.
inline AlgebraicSeries series_ode_residual(const SeriesBundle& b, SeriesOde ode) {
  auto need = [](const AlgebraicSeries& x, const char* what) {
    if (x.last() < x.lead() || x.exact()) throw SeriesError(std::string("series_ode_residual: missing ") + what);
  };
  switch (ode) {
    case SeriesOde::kSodLargeN:
      need(b.R, "R");
      return series_ode::sod_large_n(b.R);
    case SeriesOde::kUS:
      need(b.v1, "v1");
      return series_ode::us(b.v1);
    case SeriesOde::kVS:
      need(b.v1, "v1");
      need(b.v2, "v2");
      return series_ode::vs(b.v1, b.v2);
    case SeriesOde::kWS:
      need(b.v1, "v1");
      need(b.v2, "v2");
      need(b.v3, "v3");
      return series_ode::ws(b.v1, b.v2, b.v3);
    case SeriesOde::kP34: {
      if (b.vhat.last() >= b.vhat.lead() && !b.vhat.exact()) return series_ode::p34(b.vhat);
      need(b.v1, "v1 or vhat");
      AlgebraicSeries vh = series_ode::konst(SeriesVariable::kInvS, -(AlgebraicNumber::sqrt2().inverse())) * b.v1;
      return series_ode::p34(vh);
    }
  }
  throw SeriesError("series_ode_residual: unknown ODE");
}

/// R_n = sum_j a_j(t) n^{(1-j)/2}, j < order, from (sod); sign selects the leading root.
inline AlgebraicSeries derive_large_n_series(int sign, int order = 7) {
  if (sign != 1 && sign != -1) throw std::invalid_argument("derive_large_n_series: sign must be +1 or -1");
  if (order < 1 || order > 8) throw std::invalid_argument("derive_large_n_series: order must be in [1, 8]");
  const auto X = SeriesVariable::kInvSqrtN;
  // Leading balance -3 a0^4 + 8 a0^2 = 0.
  AlgebraicNumber a0 = AlgebraicNumber(0, 0, 0, Rational(2 * sign, 3));
  AlgebraicSeries R(X, -1, {TPoly(a0)}, 0);
  for (int e = 0; e < order - 1; ++e) solve_next(R, e, series_ode::sod_large_n);
  return R.with_trunc(order - 1);
}

struct ScalingSeries {
  AlgebraicSeries v1, v2, v3;
};

/// v1, v2, v3 in powers of 1/s through s^{-order}, from (us), (vs), (ws).
inline ScalingSeries derive_scaling_series(int order = 13) {
  if (order < 1 || order > 14) throw std::invalid_argument("derive_scaling_series: order must be in [1, 14]");
  const auto X = SeriesVariable::kInvS;
  const int inner = order + 6;
  AlgebraicSeries v1(X, -1, {TPoly(over_sqrt2(1, 1))}, 0);
  for (int e = 0; e <= inner; ++e) solve_next(v1, e, series_ode::us);
  AlgebraicSeries v2(X, 0, {}, 0);
  auto fv = [&](const AlgebraicSeries& x) { return series_ode::vs(v1, x); };
  for (int e = 0; e <= inner; ++e) solve_next(v2, e, fv);
  AlgebraicSeries v3(X, -2, {}, -2);
  auto fw = [&](const AlgebraicSeries& x) { return series_ode::ws(v1, v2, x); };
  for (int e = -2; e <= order; ++e) solve_next(v3, e, fw);
  return {v1.with_trunc(order + 1), v2.with_trunc(order + 1), v3.with_trunc(order + 1)};
}

// Printed coefficient tables.

struct GoldenTerm {
  int exponent;  // power of X
  TPoly coeff;
};

struct GoldenTable {
  std::string name;
  SeriesVariable variable;
  std::vector<GoldenTerm> terms;  // printed (nonzero) terms; unlisted exponents in range are zero
};

namespace golden {

inline TPoly poly(std::vector<long> c) {
  std::vector<AlgebraicNumber> out;
  for (long x : c) out.emplace_back(x);
  return TPoly(std::move(out));
}
inline TPoly times(const AlgebraicNumber& k, const TPoly& p) { return TPoly(k) * p; }
inline AlgebraicNumber sqrt6_over(long p, long q) { return AlgebraicNumber(0, 0, 0, Rational(p, q)); }

inline GoldenTable ex(int sign) {
  GoldenTable g{sign > 0 ? "ex1" : "ex2", SeriesVariable::kInvSqrtN, {}};
  long s = sign;
  g.terms.push_back({-1, TPoly(sqrt6_over(2 * s, 3))});
  g.terms.push_back({0, times(AlgebraicNumber::ratio(4, 3), TPoly::t())});
  g.terms.push_back({1, times(sqrt6_over(s, 18), poly({3, 0, 1}))});
  g.terms.push_back({3, times(sqrt6_over(-s, 432), poly({15, 0, 6, 0, 1}))});
  g.terms.push_back({4, times(AlgebraicNumber::ratio(1, 18), TPoly::t())});
  g.terms.push_back({5, times(sqrt6_over(s, 5184), poly({81, 0, -117, 0, 9, 0, 1}))});
  return g;
}

inline GoldenTable us1() {
  return {"us1",
          SeriesVariable::kInvS,
          {{-1, over_sqrt2(1, 1)},
           {2, over_sqrt2(1, 4)},
           {5, over_sqrt2(-9, 8)},
           {8, over_sqrt2(1323, 64)},
           {11, over_sqrt2(-108315, 128)}}};
}

inline GoldenTable vs1() {
  return {"vs1",
          SeriesVariable::kInvS,
          {{0, over_sqrt2(-1, 2)},
           {3, over_sqrt2(1, 4)},
           {6, over_sqrt2(-45, 16)},
           {9, over_sqrt2(1323, 16)},
           {12, over_sqrt2(-1191465, 256)}}};
}

inline GoldenTable ws1() {
  return {"ws1",
          SeriesVariable::kInvS,
          {{-2, over_sqrt2(-1, 16)},
           {4, over_sqrt2(73, 256)},
           {7, over_sqrt2(-1791, 256)},
           {10, over_sqrt2(686745, 2048)},
           {13, over_sqrt2(-383291217, 16384)}}};
}

}  // namespace golden

struct GoldenMatch {
  std::string name;
  int matched = 0;
  int total = 0;
  std::vector<std::string> mismatches;  // printed terms that differ, and unexpected nonzero gap terms

  bool exact() const { return mismatches.empty() && matched == total; }
  std::string verdict() const {
    std::string counts = "(" + std::to_string(matched) + "/" + std::to_string(total) + ")";
    return "(" + name + ") coefficients: " + (exact() ? "EXACT MATCH " : "MISMATCH ") + counts;
  }
};

inline GoldenMatch compare_with_golden(const AlgebraicSeries& series, const GoldenTable& g) {
  GoldenMatch m;
  m.name = g.name;
  m.total = static_cast<int>(g.terms.size());
  if (series.variable() != g.variable) throw SeriesError("compare_with_golden: variable mismatch");
  int lo = g.terms.front().exponent, hi = g.terms.back().exponent;
  for (int e = std::min(lo, series.lead()); e <= hi; ++e) {
    const GoldenTerm* printed = nullptr;
    for (const auto& t : g.terms) {
      if (t.exponent == e) printed = &t;
    }
    if (e >= series.trunc()) {
      if (printed) m.mismatches.push_back(series.power_text(e) + ": beyond derived order");
      continue;
    }
    TPoly got = series.coeff(e);
    if (printed) {
      if (got == printed->coeff) {
        ++m.matched;
      } else {
        m.mismatches.push_back(series.power_text(e) + ": derived " + got.to_string() + ", printed " +
                               printed->coeff.to_string());
      }
    } else if (!got.is_zero()) {
      m.mismatches.push_back(series.power_text(e) + ": derived " + got.to_string() + " where no term is printed");
    }
  }
  return m;
}

/// All five printed tables against freshly derived series.
inline std::vector<GoldenMatch> verify_printed_series() {
  std::vector<GoldenMatch> out;
  out.push_back(compare_with_golden(derive_large_n_series(1, 7), golden::ex(1)));
  out.push_back(compare_with_golden(derive_large_n_series(-1, 7), golden::ex(-1)));
  ScalingSeries sc = derive_scaling_series(13);
  out.push_back(compare_with_golden(sc.v1, golden::us1()));
  out.push_back(compare_with_golden(sc.v2, golden::vs1()));
  out.push_back(compare_with_golden(sc.v3, golden::ws1()));
  return out;
}

// Numeric comparisons.

/// Least-squares slope of log(err) against log(n). NaN when fewer than two positive errors.
inline double fitted_exponent(const std::vector<int>& ns, const std::vector<Real>& errs) {
  std::vector<double> x, y;
  for (std::size_t i = 0; i < ns.size(); ++i) {
    if (!(errs[i] > 0)) continue;
    x.push_back(std::log(static_cast<double>(ns[i])));
    y.push_back(log(errs[i]).to_double());
  }
  if (x.size() < 2) return std::nan("");
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= x.size();
  my /= y.size();
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  return sxy / sxx;
}

struct LargeNRecord {
  int n = 0;
  Real R;              // engine value
  Real series;         // truncated expansion
  Real err;            // |R - series|
  Real leading_rel;    // |R - 2 sign sqrt(6n)/3| / |R|
};

struct LargeNReport {
  Real t;
  int sign = 1;
  int order = 7;
  std::vector<LargeNRecord> records;
  double exponent = 0;  // fitted decay of err
};

namespace detail {

inline Real residue_R(const OrthoSystem& sys, int n) {
  std::vector<Real> R, r;
  residues_at(sys, sys.spec.B1, sys.spec.t1, R, r);
  return R.at(n);
}

}  // namespace detail

/// |R_n(t) - truncated (ex1)/(ex2)| over ns, from a single build up to max(ns).
inline LargeNReport numeric_large_n_fixed_t(const WeightSpec& spec, const std::vector<int>& ns, const Real& t,
                                            const PrecisionContext& ctx, int order = 7) {
  if (spec.B1.is_zero()) throw std::invalid_argument("numeric_large_n_fixed_t: B1 = 0 has no expansion");
  if (!spec.single_jump()) throw std::invalid_argument("numeric_large_n_fixed_t: single-jump weights only");
  if (ns.empty()) throw std::invalid_argument("numeric_large_n_fixed_t: empty n list");
  LargeNReport rep;
  rep.sign = spec.B1.sign();
  rep.order = order;
  int n_max = *std::max_element(ns.begin(), ns.end());
  WeightSpec w = spec;
  w.t1 = t;
  OrthoSystem sys = build_system(w, n_max, ctx);
  PrecisionScope scope(sys.working_bits);
  rep.t = t;
  AlgebraicSeries ser = derive_large_n_series(rep.sign, order);
  std::vector<Real> R, r;
  detail::residues_at(sys, w.B1, w.t1, R, r);
  std::vector<Real> errs;
  for (int n : ns) {
    LargeNRecord rec;
    rec.n = n;
    rec.R = R.at(n);
    Real x = 1 / sqrt(Real(n));
    rec.series = ser.evaluate(x, t, sys.working_bits);
    rec.err = abs(rec.R - rec.series);
    Real lead = rep.sign * 2 * sqrt(6 * Real(n)) / 3;
    rec.leading_rel = rec.R.is_zero() ? Real(0) : abs(rec.R - lead) / abs(rec.R);
    errs.push_back(rec.err);
    rep.records.push_back(std::move(rec));
  }
  rep.exponent = fitted_exponent(ns, errs);
  return rep;
}

/// v1, v2, v3 and their s-derivatives at a point, from truncated series.
struct ScalingValues {
  Real v1, v2, v3, d1, d2, d3;
};

inline ScalingValues evaluate_scaling(const ScalingSeries& sc, const Real& s, long bits) {
  PrecisionScope scope(bits);
  Real x = 1 / s, zero(0);
  return {sc.v1.evaluate(x, zero, bits),
          sc.v2.evaluate(x, zero, bits),
          sc.v3.evaluate(x, zero, bits),
          sc.v1.derivative().evaluate(x, zero, bits),
          sc.v2.derivative().evaluate(x, zero, bits),
          sc.v3.derivative().evaluate(x, zero, bits)};
}

/// The three (sigma1) bracket terms, multiplying n^{1/6}, n^{-1/6}, n^{-1/2}.
inline std::array<Real, 3> sigma_terms(const ScalingValues& v, const Real& s) {
  Real rt2 = sqrt(Real(2));
  const Real &v1 = v.v1, &v2 = v.v2, &v3 = v.v3, &a = v.d1, &b = v.d2, &c = v.d3;
  Real t1 = s * v1 - sqr(v1) / rt2 - sqr(a) / (4 * v1);
  Real t2 = s * v2 - rt2 * v1 * v2 - a * b / (2 * v1) + sqr(a) * v2 / (4 * sqr(v1));
  Real t3 = sqr(s) * v1 / 4 - rt2 * v1 * v3 - s * sqr(v1) / (2 * rt2) + pow(v1, 3L) / 8 - sqr(v2) / rt2 + s * v3 -
            (2 * a * c + sqr(b)) / (4 * v1) + a * (a * v3 + 2 * v2 * b) / (4 * sqr(v1)) -
            sqr(a) * sqr(v2) / (4 * pow(v1, 3L));
  return {t1, t2, t3};
}

/// The three (r1) terms, multiplying n^{1/3}, 1, n^{-1/3}.
inline std::array<Real, 3> r_terms(const ScalingValues& v, const Real& s) {
  Real rt2 = sqrt(Real(2));
  return {v.v1 / rt2, rt2 / 4 * (v.d1 + 2 * v.v2), (rt2 * s * v.v1 - sqr(v.v1) + rt2 * v.d2 + 2 * rt2 * v.v3) / 4};
}

struct ScalingRecord {
  int n = 0;
  Real t1;
  Real R, r, sigma;
  std::array<Real, 3> R_approx, r_approx, sigma_approx;  // one, two, three terms
  std::array<Real, 3> R_err, r_err, sigma_err;
  Real scaled_R;  // n^{1/6} R_n
  Real lead_rel;  // |n^{1/6} R_n - v1(s)| / |v1(s)|
};

struct ScalingReport {
  Real s;
  ScalingValues v;
  std::vector<ScalingRecord> records;
  double R_exponent = 0, r_exponent = 0, sigma_exponent = 0;  // fitted decay of the three-term errors
};

/// Engine values at t1 = sqrt(2n) + s / (sqrt2 n^{1/6}) against the double-scaling expansions.
inline ScalingReport numeric_double_scaling(const WeightSpec& spec, const std::vector<int>& ns, const Real& s,
                                            const PrecisionContext& ctx, int jobs = 1) {
  if (!spec.single_jump()) throw std::invalid_argument("numeric_double_scaling: single-jump weights only");
  if (spec.B1.is_zero()) throw std::invalid_argument("numeric_double_scaling: B1 = 0 has no jump");
  if (s < 5) throw std::invalid_argument("numeric_double_scaling: s must be >= 5 for the large-s series");
  if (ns.empty()) throw std::invalid_argument("numeric_double_scaling: empty n list");
  ScalingReport rep;
  rep.s = s;
  ScalingSeries sc = derive_scaling_series(13);
  rep.v = evaluate_scaling(sc, s, ctx.bits);
  rep.records.resize(ns.size());
  parallel_for(static_cast<int>(ns.size()), jobs, [&](int i) {
    const int n = ns[i];
    long bits = working_bits_for(n, ctx);
    WeightSpec w = spec;
    {
      PrecisionScope scope(bits);
      Real nn(n);
      w.t1 = sqrt(2 * nn) + rounded(s, bits) / (sqrt(Real(2)) * pow(nn, Real(1) / 6));
    }
    OrthoSystem sys = build_system(w, n, ctx);
    PrecisionScope scope(sys.working_bits);
    std::vector<Real> R, r;
    detail::residues_at(sys, w.B1, w.t1, R, r);
    ScalingRecord rec;
    rec.n = n;
    rec.t1 = w.t1;
    rec.R = R[n];
    rec.r = r[n];
    rec.sigma = 2 * sys.p1[n];
    Real nn(n);
    ScalingValues v = evaluate_scaling(sc, rounded(s, sys.working_bits), sys.working_bits);
    Real sr = rounded(s, sys.working_bits);
    std::array<Real, 3> Rt{v.v1 * pow(nn, Real(-1) / 6), v.v2 * pow(nn, Real(-1) / 2), v.v3 * pow(nn, Real(-5) / 6)};
    auto rt = r_terms(v, sr);
    rt[0] *= pow(nn, Real(1) / 3);
    rt[2] *= pow(nn, Real(-1) / 3);
    auto st = sigma_terms(v, sr);
    st[0] *= pow(nn, Real(1) / 6);
    st[1] *= pow(nn, Real(-1) / 6);
    st[2] *= pow(nn, Real(-1) / 2);
    Real accR(0), accr(0), accs(0);
    for (int k = 0; k < 3; ++k) {
      accR += Rt[k];
      accr += rt[k];
      accs += st[k];
      rec.R_approx[k] = accR;
      rec.r_approx[k] = accr;
      rec.sigma_approx[k] = accs;
      rec.R_err[k] = abs(rec.R - accR);
      rec.r_err[k] = abs(rec.r - accr);
      rec.sigma_err[k] = abs(rec.sigma - accs);
    }
    rec.scaled_R = pow(nn, Real(1) / 6) * rec.R;
    rec.lead_rel = abs(rec.scaled_R - v.v1) / abs(v.v1);
    rep.records[i] = std::move(rec);
  });
  std::vector<Real> eR, er, es;
  for (const auto& rec : rep.records) {
    eR.push_back(rec.R_err[2]);
    er.push_back(rec.r_err[2]);
    es.push_back(rec.sigma_err[2]);
  }
  rep.R_exponent = fitted_exponent(ns, eR);
  rep.r_exponent = fitted_exponent(ns, er);
  rep.sigma_exponent = fitted_exponent(ns, es);
  return rep;
}

}  // namespace hpk
