#include <gtest/gtest.h>

#include "hpk/ladder.hpp"
#include "hpk/ortho.hpp"
#include "oracles.hpp"

using namespace hpk;

namespace {

WeightSpec half_line(double A, double B1, double t1) {
  WeightSpec w;
  w.A = A;
  w.B1 = B1;
  w.t1 = t1;
  return w;
}

Real worst_gap(const std::vector<Real>& a, const std::vector<Real>& b, int from = 0) {
  Real worst(0);
  for (std::size_t i = from; i < std::min(a.size(), b.size()); ++i) worst = max(worst, relative_gap(a[i], b[i]));
  return worst;
}

}  // namespace

TEST(GaussianSystem, ClosedForms) {
  PrecisionContext ctx{256, 12};
  OrthoSystem sys = build_system(WeightSpec{}, 40, ctx);
  PrecisionScope scope(sys.working_bits);
  Real h = sqrt_pi(sys.working_bits);
  for (int n = 0; n <= 40; ++n) {
    EXPECT_LE(abs(sys.alpha[n]), tolerance(ctx)) << n;
    if (n > 0) EXPECT_LE(abs(sys.beta[n] - Real(n) / 2), tolerance(ctx) * n) << n;
    EXPECT_LE(relative_gap(sys.h[n], h), tolerance(ctx)) << n;
    h = h * (n + 1) / 2;
  }
}

TEST(GaussianSystem, BarnesGHankelDeterminant) {
  PrecisionContext ctx{256, 12};
  OrthoSystem sys = build_system(WeightSpec{}, 30, ctx);
  PrecisionScope scope(sys.working_bits);
  for (int n = 1; n <= 31; ++n) {
    Real ref = oracle::gaussian_log_hankel(n, sys.working_bits);
    EXPECT_LE(abs(sys.logD[n] - ref) / abs(ref), tolerance(ctx)) << n;
  }
}

TEST(HalfLineWeight, FirstRecurrenceCoefficient) {
  PrecisionContext ctx{256, 12};
  OrthoSystem sys = build_system(half_line(1, 1, 0), 2, ctx);
  PrecisionScope scope(sys.working_bits);
  // alpha_0 = mu_1 / mu_0 = (1/2) / (3 sqrt(pi) / 2)
  Real expect = 1 / (3 * sqrt_pi(sys.working_bits));
  EXPECT_LE(relative_gap(sys.alpha[0], expect), tolerance(ctx));
  EXPECT_EQ(sys.alpha[0].to_string(9), "1.88063195e-01");
}

TEST(BuildRoutes, CholeskyAndChebyshevAgree) {
  PrecisionContext ctx{256, 12};
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 6; ++trial) {
    WeightSpec w = oracle::random_weight(rng, trial >= 3);
    OrthoSystem a = build_system(w, 80, ctx, BuildMethod::kCholesky);
    OrthoSystem b = build_system(w, 80, ctx, BuildMethod::kModifiedChebyshev);
    PrecisionScope scope(a.working_bits);
    EXPECT_LE(worst_gap(a.h, b.h), tolerance(ctx)) << trial;
    EXPECT_LE(worst_gap(a.beta, b.beta, 1), tolerance(ctx)) << trial;
    // alpha_n can pass through zero; compare against the scale of the sequence.
    for (int n = 0; n <= 80; ++n) {
      EXPECT_LE(abs(a.alpha[n] - b.alpha[n]), tolerance(ctx) * (1 + sqrt(Real(n)))) << trial << " n=" << n;
    }
  }
}

TEST(BuildRoutes, AutoSwitchesAboveCholeskyLimit) {
  PrecisionContext ctx{128, 12};
  EXPECT_EQ(build_system(half_line(1, 1, 0.5), kCholeskyMaxN, ctx).method, BuildMethod::kCholesky);
  EXPECT_EQ(build_system(half_line(1, 1, 0.5), kCholeskyMaxN + 1, ctx).method, BuildMethod::kModifiedChebyshev);
  EXPECT_EQ(working_bits_for(100, ctx), 128 + 200 + 128);
}

TEST(BuildRoutes, RejectsBadInput) {
  PrecisionContext ctx{256, 12};
  EXPECT_THROW(build_system(WeightSpec{}, -1, ctx), std::invalid_argument);
  EXPECT_THROW(build_system(half_line(1, -2, 0), 3, ctx), InvalidWeight);
  EXPECT_THROW(build_system(WeightSpec{}, 3, PrecisionContext{32, 12}), std::invalid_argument);
}

TEST(DeterminantOracle, RecurrenceMatchesOnRandomWeights) {
  PrecisionContext ctx{256, 12};
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 4; ++trial) {
    WeightSpec w = oracle::random_weight(rng, trial % 2 == 1);
    OrthoSystem sys = build_system(w, 29, ctx);
    OracleRecurrence orc = recurrence_oracle(w, 29, ctx);
    PrecisionScope scope(sys.working_bits);
    EXPECT_LE(worst_gap(sys.h, orc.h), tolerance(ctx)) << trial;
    EXPECT_LE(worst_gap(sys.beta, orc.beta, 1), tolerance(ctx)) << trial;
    for (int n = 0; n <= 29; ++n) {
      EXPECT_LE(abs(sys.alpha[n] - orc.alpha[n]), tolerance(ctx) * (1 + abs(orc.alpha[n]))) << trial << " " << n;
      EXPECT_LE(relative_gap(exp(sys.logD[n + 1]), orc.D[n + 1]), tolerance(ctx)) << trial << " " << n;
    }
  }
}

TEST(DeterminantOracle, DirectHankelMatchesProductOfNorms) {
  PrecisionContext ctx{256, 12};
  WeightSpec w = half_line(0.7, 0.9, -0.4);
  OrthoSystem sys = build_system(w, 12, ctx);
  PrecisionScope scope(sys.working_bits);
  for (int n : {0, 1, 5, 13}) EXPECT_LE(relative_gap(hankel_oracle(w, n, ctx), exp(sys.logD[n])), tolerance(ctx));
  EXPECT_THROW(hankel_oracle(w, 31, ctx), std::out_of_range);
  EXPECT_THROW(recurrence_oracle(w, 30, ctx), std::out_of_range);
}

TEST(ExpectationOracle, MatchesHankelRatio) {
  PrecisionContext ctx{256, 12};
  WeightSpec w;
  w.A = 0.6;
  w.B1 = 0.9;
  w.B2 = -1.2;
  w.t1 = -0.5;
  w.t2 = 0.7;
  PrecisionScope scope(512);
  for (int n = 1; n <= 3; ++n) {
    Real ratio = hankel_oracle(w, n, ctx) / hankel_oracle(WeightSpec{}, n, ctx);
    EXPECT_LE(relative_gap(ratio, Real(expectation_oracle(w, n))), Real(1e-8)) << n;
  }
  EXPECT_THROW(expectation_oracle(w, 4), std::out_of_range);
}

TEST(Polynomials, OrthogonalUnderGaussQuadrature) {
  // Zeros of P_N with Christoffel weights integrate P_m P_k exactly for m + k < 2N.
  PrecisionContext ctx{256, 12};
  WeightSpec w = half_line(1, 1, 0.5);
  const int N = 12;
  OrthoSystem sys = build_system(w, N, ctx);
  PrecisionScope scope(sys.working_bits);
  // Bracket zeros of P_N by scanning and bisecting.
  std::vector<Real> zeros;
  Real a(-8), step(0.01);
  Real fa = eval_poly(sys, N, a).first;
  while (a < 8 && static_cast<int>(zeros.size()) < N) {
    Real b = a + step;
    Real fb = eval_poly(sys, N, b).first;
    if (fa.sign() * fb.sign() < 0) {
      Real lo = a, hi = b;
      for (int it = 0; it < 400; ++it) {
        Real mid = (lo + hi) / 2;
        if (eval_poly(sys, N, mid).first.sign() == eval_poly(sys, N, lo).first.sign()) lo = mid;
        else hi = mid;
      }
      zeros.push_back((lo + hi) / 2);
    }
    a = b;
    fa = fb;
  }
  ASSERT_EQ(static_cast<int>(zeros.size()), N);
  std::vector<Real> lambda;
  for (const Real& x : zeros) {
    Real s(0);
    Real pm1(0), p(1);
    for (int k = 0; k < N; ++k) {
      s += sqr(p) / sys.h[k];
      Real next = (x - sys.alpha[k]) * p;
      if (k > 0) next -= sys.beta[k] * pm1;
      pm1 = p;
      p = next;
    }
    lambda.push_back(1 / s);
  }
  for (int m = 0; m < N; ++m) {
    for (int k = 0; k < N; ++k) {
      Real s(0);
      for (int i = 0; i < N; ++i) s += lambda[i] * eval_poly(sys, m, zeros[i]).first * eval_poly(sys, k, zeros[i]).first;
      if (m == k) EXPECT_LE(relative_gap(s, sys.h[m]), Real(1e-60));
      else EXPECT_LE(abs(s), Real(1e-60) * sqrt(sys.h[m] * sys.h[k]));
    }
  }
}

TEST(Polynomials, DerivativesMatchFiniteDifferences) {
  PrecisionContext ctx{256, 12};
  OrthoSystem sys = build_system(half_line(1, -0.5, 0.2), 10, ctx);
  PrecisionScope scope(sys.working_bits);
  Real x(0.37);
  PolyDerivs d = eval_poly_derivs(sys, 9, x);
  auto p = [&](const Real& y) { return eval_poly(sys, 9, y).first; };
  EXPECT_EQ(d.p, p(x));
  EXPECT_LE(relative_gap(d.dp, fd_derivative(p, x, 1, ctx)), tolerance_root(ctx, 1));
  EXPECT_LE(relative_gap(d.d2p, fd_derivative(p, x, 2, ctx)), tolerance_root(ctx, 1));
  EXPECT_THROW(eval_poly(sys, 12, x), std::out_of_range);
}
