#include <gtest/gtest.h>

#include <cmath>

#include "hpk/identities.hpp"
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

WeightSpec two_jump(double A, double B1, double B2, double t1, double t2) {
  WeightSpec w = half_line(A, B1, t1);
  w.B2 = B2;
  w.t2 = t2;
  return w;
}

const IdentityReport& find(const std::vector<IdentityReport>& reps, const std::string& label, int n = -1) {
  for (const auto& r : reps) {
    if (r.label == label && (n < 0 || r.n == n)) return r;
  }
  throw std::runtime_error("no report " + label);
}

std::string failures(const std::vector<IdentityReport>& reps) {
  std::string out;
  for (const auto& r : reps) {
    if (!r.pass()) out += r.label + " n=" + std::to_string(r.n) + " residual " + r.residual.to_string(4) + "; ";
  }
  return out;
}

SuiteOptions quick(std::vector<int> ns) {
  SuiteOptions o;
  o.ns = std::move(ns);
  o.limits = false;
  o.scaled_pde = false;
  return o;
}

}  // namespace

TEST(ToleranceClasses, NestedRoots) {
  PrecisionContext ctx{256, 12};
  EXPECT_LT(class_tolerance(ToleranceClass::kAlgebraic, ctx), class_tolerance(ToleranceClass::kSingleFd, ctx));
  EXPECT_LT(class_tolerance(ToleranceClass::kSingleFd, ctx), class_tolerance(ToleranceClass::kDoubleFd, ctx));
  EXPECT_EQ(class_tolerance(ToleranceClass::kTrend, ctx), 1);
  EXPECT_STREQ(to_string(Status::kSkippedDegenerate), "SKIPPED-DEGENERATE");
}

TEST(IdentityParameters, NamedEquationConstants) {
  PrecisionScope scope(256);
  IdentitySpec p = IdentitySpec::make(3, Real(0.5), 1);
  EXPECT_EQ(p.piv_alpha1, 7);
  EXPECT_EQ(p.chazy_alpha2, -24);
  EXPECT_EQ(p.chazy_beta2, -64);
  EXPECT_EQ(p.nu2, 6);
  EXPECT_LE(abs(p.bhe_delta - sqrt(Real(2)) / 2), Real(1e-70));
  EXPECT_LE(abs(p.bhe_q + 4 * sqrt(Real(3)) * pow(Real(3), Real(1.5)) / 9), Real(1e-70));
  EXPECT_EQ(IdentitySpec::make(3, Real(0.5), -1).bhe_q, -p.bhe_q);
}

class SingleJumpSuite : public ::testing::TestWithParam<std::tuple<double, double, double>> {};

TEST_P(SingleJumpSuite, AllIdentitiesHold) {
  auto [A, B1, t] = GetParam();
  PrecisionContext ctx{256, 12};
  auto reps = run_suite(half_line(A, B1, t), ctx, quick({3, 8}));
  EXPECT_TRUE(all_pass(reps)) << failures(reps);
  EXPECT_GT(reps.size(), 100u);
}

INSTANTIATE_TEST_SUITE_P(Weights, SingleJumpSuite,
                         ::testing::Values(std::make_tuple(1.0, 1.0, 0.0), std::make_tuple(1.0, 1.0, 0.5),
                                           std::make_tuple(0.3, 2.0, -1.0), std::make_tuple(1.0, -0.6, 0.4),
                                           std::make_tuple(0.0, 1.0, 0.2)));

TEST(SingleJumpSuite, PureGaussianSkipsDegenerateForms) {
  PrecisionContext ctx{256, 12};
  auto reps = run_suite(WeightSpec{}, ctx, quick({4}));
  EXPECT_TRUE(all_pass(reps)) << failures(reps);
  EXPECT_EQ(find(reps, "s22").status, Status::kSkippedDegenerate);
  EXPECT_EQ(find(reps, "ri1").status, Status::kSkippedDegenerate);
  EXPECT_EQ(find(reps, "s11").residual, 0);
}

TEST(Mutation, PerturbedResidueBreaksStringEquations) {
  PrecisionContext ctx{256, 12};
  OrthoSystem sys = build_system(half_line(1, 1, 0.5), 8, ctx);
  AuxSingle aux = reconciled_aux_single(sys);
  PrecisionScope scope(sys.working_bits);
  auto clean = check_string_single(aux, sys, 4);
  EXPECT_TRUE(all_pass(clean)) << failures(clean);
  aux.R[4] *= 1 + Real(1e-30);
  auto bad = check_string_single(aux, sys, 4);
  EXPECT_EQ(find(bad, "s11").status, Status::kFail);
  EXPECT_EQ(find(bad, "s12").status, Status::kFail);
  EXPECT_EQ(find(bad, "s21").status, Status::kFail);
  EXPECT_EQ(find(bad, "s23").status, Status::kPass);
}

TEST(Mutation, PerturbedRBreaksDifferenceEquations) {
  PrecisionContext ctx{256, 12};
  OrthoSystem sys = build_system(half_line(1, 1, 0.5), 8, ctx);
  AuxSingle aux = reconciled_aux_single(sys);
  PrecisionScope scope(sys.working_bits);
  aux.r[5] += Real(1e-25);
  aux.R[5] *= 1 + Real(1e-25);
  aux.sigma[5] += Real(1e-25);
  auto bad = check_difference(aux, 5, ctx);
  for (const auto& r : bad) EXPECT_EQ(r.status, Status::kFail) << r.label;
}

TEST(Mutation, WrongIndexBreaksSigmaForm) {
  PrecisionContext ctx{256, 12};
  Family fam = family_for(half_line(1, 1, 0.5), 5, ctx);
  const auto& c = fam.center();
  PrecisionScope scope(c.sys.working_bits);
  Real s = c.aux.sigma[5], s1 = fam.d(Quantity::kSigma, 5), s2 = fam.d(Quantity::kSigma, 5, 1, 2);
  EXPECT_LE(relative_residual(formula::jmo(s, s1, s2, fam.base().t1, 5)), tolerance_root(ctx, 1));
  EXPECT_GT(relative_residual(formula::jmo(s, s1, s2, fam.base().t1, 6)), Real(1e-3));
}

TEST(ExactOde, HoldsAtSeveralPoints) {
  PrecisionContext ctx{256, 12};
  OrthoSystem sys = build_system(half_line(1, 1, 0.5), 11, ctx);
  AuxSingle aux = reconciled_aux_single(sys);
  for (double z : {0.3, 0.7, 1.5, -2.0}) {
    PrecisionScope scope(sys.working_bits);
    IdentityReport r = check_ode1(sys, aux, 10, Real(z));
    EXPECT_EQ(r.status, Status::kPass) << z << " " << r.residual.to_string(4);
  }
  PrecisionScope scope(sys.working_bits);
  EXPECT_EQ(check_ode1(sys, aux, 10, Real(0.5)).status, Status::kSkippedDegenerate);
}

TEST(TwoJumpSuite, GenericWeight) {
  PrecisionContext ctx{256, 12};
  WeightSpec w = two_jump(std::exp(0.3), 1 - std::exp(0.3), std::exp(-0.3) - 1, -0.5, 0.7);
  for (int n : {3, 6}) {
    auto reps = check_two_jump(Family(w, n + 2, ctx), n);
    EXPECT_TRUE(all_pass(reps)) << failures(reps);
    EXPECT_EQ(find(reps, "equ").cls, ToleranceClass::kDoubleFd);
  }
}

TEST(TwoJumpSuite, SymmetricWeightHasVanishingSigma) {
  PrecisionContext ctx{256, 12};
  WeightSpec w = two_jump(1, -0.5, 0.5, -0.6, 0.6);
  auto reps = check_two_jump(Family(w, 6, ctx), 4);
  EXPECT_TRUE(all_pass(reps)) << failures(reps);
  EXPECT_EQ(find(reps, "symmetric-sigma").status, Status::kPass);
  OrthoSystem sys = build_system(w, 8, ctx);
  PrecisionScope scope(sys.working_bits);
  for (int n = 0; n <= 8; ++n) EXPECT_LE(abs(sys.alpha[n]), tolerance(ctx)) << n;
}

TEST(TwoJumpSuite, ReductionIsBitIdenticalToSingleJump) {
  PrecisionContext ctx{256, 12};
  WeightSpec single = half_line(1, 1, 0.5);
  WeightSpec reduced = single;
  reduced.t2 = 1.5;  // B2 = 0
  const int n = 4;
  auto two = check_two_jump(Family(reduced, n + 2, ctx), n);
  auto one = check_ode(family_for(single, n, ctx), n);
  const IdentityReport& p41 = find(two, "p41");
  const IdentityReport& jmo = find(one, "jmo");
  EXPECT_EQ(p41.residual, jmo.residual);
  EXPECT_EQ(p41.residual.to_string(40), jmo.residual.to_string(40));
  EXPECT_EQ(find(two, "sig2").status, Status::kSkippedDegenerate);

  auto a = run_single_jump_checks(single, n, ctx);
  auto b = run_single_jump_checks(reduced, n, ctx);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].label, b[i].label);
    EXPECT_EQ(a[i].residual, b[i].residual) << a[i].label;
  }
}

TEST(Suite, RejectsBadIndices) {
  PrecisionContext ctx{256, 12};
  OrthoSystem sys = build_system(half_line(1, 1, 0.5), 4, ctx);
  AuxSingle aux = reconciled_aux_single(sys);
  EXPECT_THROW(check_string_single(aux, sys, 0), std::out_of_range);
  EXPECT_THROW(check_string_single(aux, sys, 4), std::out_of_range);
  EXPECT_THROW(run_suite(half_line(1, 1, 0.5), ctx, quick({0})), std::invalid_argument);
}

TEST(Limits, HermiteTrendConverges) {
  PrecisionContext ctx{256, 12};
  LimitOptions opts;
  opts.ns = {32, 128};
  auto reps = check_limits(half_line(1, 1, 0.5), ctx, opts);
  const IdentityReport& h = find(reps, "hermite");
  EXPECT_EQ(h.status, Status::kPass) << h.reason;
  EXPECT_LT(h.residual, Real(0.2));
  for (const auto& r : reps) {
    if (r.label == "ode1") EXPECT_EQ(r.status, Status::kPass) << r.residual.to_string(4);
  }
}

TEST(Limits, EdgeLocation) {
  PrecisionScope scope(256);
  EXPECT_EQ(edge_location(8, Real(0)), 4);
  Real expect = sqrt(Real(128)) + Real(2) / (sqrt(Real(2)) * 2);
  EXPECT_LE(abs(edge_location(64, Real(2)) - expect), Real(1e-70));
}
