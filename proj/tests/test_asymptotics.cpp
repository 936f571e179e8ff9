#include <gtest/gtest.h>

#include <cmath>

#include "hpk/asymptotics.hpp"
#include "hpk/identities.hpp"

using namespace hpk;

namespace {

WeightSpec half_line(double A, double B1, double t1) {
  WeightSpec w;
  w.A = A;
  w.B1 = B1;
  w.t1 = t1;
  return w;
}

}  // namespace

TEST(FittedExponent, RecoversPowerLaw) {
  PrecisionScope scope(128);
  std::vector<int> ns{10, 100, 1000};
  std::vector<Real> errs;
  for (int n : ns) errs.push_back(7 * pow(Real(n), Real(-2.5)));
  EXPECT_NEAR(fitted_exponent(ns, errs), -2.5, 1e-12);
  std::vector<Real> zeros{Real(0), Real(0), Real(1)};
  EXPECT_TRUE(std::isnan(fitted_exponent(ns, zeros)));
}

TEST(ScalingValues, LeadingBehaviourAtLargeS) {
  ScalingSeries sc = derive_scaling_series(13);
  PrecisionScope scope(256);
  Real s(40);
  ScalingValues v = evaluate_scaling(sc, s, 256);
  Real rt2 = sqrt(Real(2));
  EXPECT_LE(abs(v.v1 - s / rt2) / v.v1, Real(1e-4));
  EXPECT_LE(abs(v.v2 + 1 / (2 * rt2)), Real(1e-4));
  EXPECT_LE(abs(v.v3 + sqr(s) / (16 * rt2)) / abs(v.v3), Real(1e-4));
  EXPECT_LE(abs(v.d1 - 1 / rt2), Real(1e-4));
}

TEST(ScalingValues, DerivativesConsistentWithFiniteDifferences) {
  ScalingSeries sc = derive_scaling_series(13);
  PrecisionContext ctx{256, 12};
  PrecisionScope scope(256);
  Real s(7);
  ScalingValues v = evaluate_scaling(sc, s, 256);
  auto v2 = [&](const Real& x) { return evaluate_scaling(sc, x, 256).v2; };
  EXPECT_LE(abs(v.d2 - fd_derivative(v2, s, 1, ctx)) / abs(v.d2), tolerance_root(ctx, 1));
}

TEST(ScalingExpansions, LeadingTermsOfR_r_sigma) {
  ScalingSeries sc = derive_scaling_series(13);
  PrecisionScope scope(256);
  Real s(9);
  ScalingValues v = evaluate_scaling(sc, s, 256);
  auto r = r_terms(v, s);
  auto sg = sigma_terms(v, s);
  Real rt2 = sqrt(Real(2));
  EXPECT_EQ(r[0], v.v1 / rt2);
  EXPECT_LE(abs(sg[0] - (s * v.v1 - sqr(v.v1) / rt2 - sqr(v.d1) / (4 * v.v1))), Real(1e-60));
}

TEST(LargeNFixedT, RecordsAndLeadingBehaviour) {
  PrecisionContext ctx{256, 12};
  auto rep = numeric_large_n_fixed_t(half_line(1, 1, 0), {16, 32, 64}, Real(0), ctx);
  ASSERT_EQ(rep.records.size(), 3u);
  EXPECT_EQ(rep.sign, 1);
  for (const auto& r : rep.records) {
    PrecisionScope scope(512);
    EXPECT_EQ(r.err, abs(r.R - r.series));
    EXPECT_GT(r.R, 0);
  }
  // R_n from the engine agrees with the definition-route residue.
  OrthoSystem sys = build_system(half_line(1, 1, 0), 64, ctx);
  AuxSingle aux = reconciled_aux_single(sys);
  PrecisionScope scope(sys.working_bits);
  EXPECT_LE(relative_gap(rep.records.back().R, aux.R[64]), tolerance(ctx));
  EXPECT_FALSE(std::isnan(rep.exponent));
}

TEST(LargeNFixedT, RejectsUnsupportedWeights) {
  PrecisionContext ctx{256, 12};
  EXPECT_THROW(numeric_large_n_fixed_t(WeightSpec{}, {8}, Real(0), ctx), std::invalid_argument);
  WeightSpec two = half_line(1, 1, 0);
  two.B2 = 0.5;
  two.t2 = 1;
  EXPECT_THROW(numeric_large_n_fixed_t(two, {8}, Real(0), ctx), std::invalid_argument);
  EXPECT_THROW(numeric_large_n_fixed_t(half_line(1, 1, 0), {}, Real(0), ctx), std::invalid_argument);
}

TEST(DoubleScaling, RecordsAtEdgeLocation) {
  PrecisionContext ctx{256, 12};
  auto rep = numeric_double_scaling(half_line(1, 1, 0), {16, 32}, Real(6), ctx, 2);
  ASSERT_EQ(rep.records.size(), 2u);
  for (std::size_t i = 0; i < rep.records.size(); ++i) {
    const auto& r = rep.records[i];
    PrecisionScope scope(512);
    EXPECT_LE(abs(r.t1 - edge_location(r.n, Real(6))), Real(1e-60));
    EXPECT_EQ(r.R_err[0], abs(r.R - r.R_approx[0]));
    EXPECT_LE(abs(r.scaled_R - pow(Real(r.n), Real(1) / 6) * r.R) / abs(r.scaled_R), Real(1e-60));
  }
  EXPECT_THROW(numeric_double_scaling(half_line(1, 1, 0), {16}, Real(2), ctx), std::invalid_argument);
}
