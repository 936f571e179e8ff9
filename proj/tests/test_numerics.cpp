#include <gtest/gtest.h>

#include "hpk/numerics.hpp"
#include "hpk/residual.hpp"
#include "oracles.hpp"

using namespace hpk;

TEST(Tolerance, MatchesTrustedDigits) {
  PrecisionContext ctx{256, 12};
  PrecisionScope scope(256);
  Real expected = pow(Real(10), Real(-(0.3010 * 256 - 12)));
  EXPECT_LE(relative_residual(Tracked(tolerance(ctx)) - Tracked(expected)), Real(1e-70));
  EXPECT_EQ(ctx.render_digits(), 77 - 12);
}

TEST(Tolerance, RootsAreOrdered) {
  PrecisionContext ctx{512, 12};
  PrecisionScope scope(512);
  Real t0 = tolerance_root(ctx, 0), t1 = tolerance_root(ctx, 1), t2 = tolerance_root(ctx, 2);
  EXPECT_LT(t0, t1);
  EXPECT_LT(t1, t2);
  EXPECT_LE(abs(sqr(t1) - t0) / t0, Real(1e-100));
}

TEST(Tolerance, RejectsBadContexts) {
  EXPECT_THROW(validate(PrecisionContext{64, 12}), std::invalid_argument);
  EXPECT_THROW(validate(PrecisionContext{256, 0}), std::invalid_argument);
  EXPECT_THROW(validate(PrecisionContext{128, 60}), std::invalid_argument);
  EXPECT_NO_THROW(validate(PrecisionContext{128, 12}));
}

TEST(RealText, RoundTripsAndRejectsGarbage) {
  Real x("0.1", 400);
  EXPECT_EQ(x.precision(), 400);
  EXPECT_EQ(Real(x.to_string(130), 400), x);
  EXPECT_THROW(Real("0.1x", 100), std::invalid_argument);
  EXPECT_THROW(Real("", 100), std::invalid_argument);
}

TEST(RealScope, NestsAndRestores) {
  long before = default_precision();
  {
    PrecisionScope a(1000);
    EXPECT_EQ(Real(1).precision(), 1000);
    {
      PrecisionScope b(200);
      EXPECT_EQ(Real(1).precision(), 200);
    }
    EXPECT_EQ(Real(1).precision(), 1000);
  }
  EXPECT_EQ(default_precision(), before);
}

class ErfcAgainstBoost : public ::testing::TestWithParam<const char*> {};

TEST_P(ErfcAgainstBoost, AgreesTo95Digits) {
  PrecisionContext ctx{384, 12};
  PrecisionScope scope(384);
  Real x(GetParam(), 384);
  Real got = erfc_mp(x, ctx);
  Real ref = oracle::from_float(oracle::erfc_reference(oracle::Float100(GetParam())), 384);
  EXPECT_LE(abs(got - ref) / ref, Real(1e-95)) << "x = " << GetParam();
}

INSTANTIATE_TEST_SUITE_P(Points, ErfcAgainstBoost,
                         ::testing::Values("-3", "-0.5", "0", "0.3", "1.999", "2.001", "5.5", "12", "27"));

TEST(Erfc, KeepsRelativeAccuracyDeepInTail) {
  PrecisionContext ctx{256, 12};
  PrecisionScope scope(256);
  // erfc(x) ~ e^{-x^2} / (x sqrt(pi)) (1 - 1/(2x^2) + 3/(4x^4) - ...)
  Real x(90);
  Real asym = exp(-sqr(x)) / (x * sqrt_pi(256)) * (1 - 1 / (2 * sqr(x)) + Real(3) / (4 * pow(x, 4L)));
  EXPECT_LE(abs(erfc_mp(x, ctx) - asym) / asym, Real(1e-11));
  EXPECT_THROW(erfc_mp(Real(1) / Real(0), ctx), std::invalid_argument);
}

TEST(FiniteDifference, FirstAndSecondDerivativesOfExpSquare) {
  PrecisionContext ctx{256, 12};
  PrecisionScope scope(256);
  auto f = [](const Real& t) { return exp(sqr(t)); };
  for (double tv : {-1.3, 0.0, 0.4, 3.0}) {
    Real t(tv);
    Real d1 = fd_derivative(f, t, 1, ctx);
    Real d2 = fd_derivative(f, t, 2, ctx);
    Real e1 = 2 * t * f(t), e2 = (2 + 4 * sqr(t)) * f(t);
    EXPECT_LE(abs(d1 - e1) / max(abs(e1), f(t)), tolerance_root(ctx, 1)) << tv;
    EXPECT_LE(abs(d2 - e2) / abs(e2), tolerance_root(ctx, 1)) << tv;
  }
}

TEST(FiniteDifference, MixedPartial) {
  PrecisionContext ctx{256, 12};
  PrecisionScope scope(256);
  auto f = [](const Real& x, const Real& y) { return exp(x * y) + sqr(x) * pow(y, 3L); };
  Real x(0.7), y(-0.4);
  Real expect = exp(x * y) * (1 + x * y) + 6 * x * sqr(y);
  EXPECT_LE(abs(fd_mixed_partial(f, x, y, ctx) - expect) / abs(expect), tolerance_root(ctx, 1));
}

TEST(FiniteDifference, ErrorEstimateTracksTruth) {
  PrecisionContext ctx{256, 12};
  PrecisionScope scope(256);
  auto f = [](const Real& t) { return exp(3 * t); };
  FdEstimate est = fd_derivative_estimate(f, Real(0.2), 1, ctx);
  Real truth = 3 * exp(3 * Real(0.2));
  EXPECT_LE(abs(est.value - truth), max(est.error * 1000, tolerance(ctx)));
}

TEST(FiniteDifference, RejectsUnsupportedOrderAndRoughFunctions) {
  PrecisionContext ctx{256, 12};
  auto f = [](const Real& t) { return t; };
  EXPECT_THROW(fd_derivative(f, Real(0), 3, ctx), std::invalid_argument);
  // A jump inside the stencil does not converge.
  auto step = [](const Real& t) { return t > 0 ? Real(1) : Real(0); };
  EXPECT_THROW(fd_derivative(step, Real(0), 1, ctx), PrecisionError);
}
