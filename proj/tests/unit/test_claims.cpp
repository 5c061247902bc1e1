#include <cmath>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "extropy/claims.hpp"
#include "extropy/errors.hpp"
#include "oracle.hpp"

namespace ex = extropy;

namespace {
double detail(const ex::ClaimReport& r, const std::string& key) {
  for (const auto& [k, v] : r.details) {
    if (k == key) return v;
  }
  ADD_FAILURE() << "missing detail " << key;
  return std::nan("");
}
}  // namespace

TEST(Claims, ResidualBoundOnExponential) {
  for (double t : {0.5, 1.0, 2.0, 4.0}) {
    const auto r = ex::residual_bound_check(ex::exponential(1.0), t);
    EXPECT_EQ(r.verdict, ex::Verdict::holds);
    EXPECT_NEAR(r.gap, 0.125, 1e-8);
  }
  const auto r = ex::residual_bound_check(ex::exponential(1.0), 1.0);
  EXPECT_NEAR(r.lhs, -0.375, 1e-10);
  EXPECT_NEAR(r.rhs, -0.25, 1e-10);
}

TEST(Claims, ResidualBoundNeedsMonotoneHazard) {
  // Pareto hazard k/t decreases.
  EXPECT_EQ(ex::residual_bound_check(ex::pareto(2.0, 1.0), 2.0).verdict,
            ex::Verdict::indeterminate);
}

TEST(Claims, PastBoundExpressions) {
  const auto e = ex::past_bound_expressions(1.0, 1.0);
  EXPECT_DOUBLE_EQ(e.printed, -0.5);
  EXPECT_DOUBLE_EQ(e.re_derived, -0.25);
  EXPECT_DOUBLE_EQ(e.mutual_gap, 0.25);
  const auto f = ex::past_bound_expressions(2.0, 0.5);
  EXPECT_DOUBLE_EQ(f.printed, -0.25);
  EXPECT_DOUBLE_EQ(f.re_derived, -0.25);
}

TEST(Claims, PastBoundReportsBothExpressions) {
  const auto r = ex::past_bound_check(ex::exponential(1.0), 1.0, 5.0);
  EXPECT_EQ(r.verdict, ex::Verdict::indeterminate);  // q decreases
  const double q = detail(r, "reversed_hazard");
  EXPECT_NEAR(detail(r, "printed"), -q * q / 2, 1e-12);
  EXPECT_NEAR(detail(r, "re_derived"), -q * q / 4, 1e-12);
  EXPECT_THROW(ex::past_bound_check(ex::exponential(1.0), 1.0, 0.5), ex::ValidationError);
}

TEST(Claims, SumBoundCounterexample) {
  // X + Y ~ gamma(2, 1): J^w = -1/2 ∫ z³ e^(-2z) dz = -3/16.
  const auto r = ex::sum_bound_check(ex::exponential(1.0), ex::exponential(1.0));
  EXPECT_EQ(r.verdict, ex::Verdict::violated);
  EXPECT_NEAR(r.lhs, -0.1875, 1e-6);
  EXPECT_DOUBLE_EQ(r.rhs, -0.125);
  EXPECT_NEAR(r.gap, -0.0625, 1e-6);
}

TEST(Claims, SumBoundOtherPairs) {
  // Frozen from the oracle below.
  const auto uu = ex::sum_bound_check(ex::uniform(0.0, 1.0), ex::uniform(0.0, 1.0));
  EXPECT_EQ(uu.verdict, ex::Verdict::holds);
  EXPECT_NEAR(uu.lhs, -1.0 / 3.0, 1e-6);
  EXPECT_NEAR(uu.rhs, -0.5, 1e-12);
  const auto eu = ex::sum_bound_check(ex::exponential(1.0), ex::uniform(0.0, 1.0));
  EXPECT_NEAR(eu.lhs, -0.209849301464, 1e-6);
  EXPECT_EQ(eu.verdict, ex::Verdict::holds);
}

TEST(Claims, SumBoundOracle) {
  // Triangular density of U + U, integrated independently.
  const double uu = -0.5 * (oracle::integrate([](double z) { return z * z * z; }, 0.0, 1.0) +
                            oracle::integrate([](double z) { return z * (2 - z) * (2 - z); },
                                              1.0, 2.0));
  EXPECT_NEAR(uu, -1.0 / 3.0, 1e-12);
  // Exp + U: f(z) = 1 - e^(-z) on (0, 1), (e - 1) e^(-z) beyond.
  const double e1 = std::exp(1.0) - 1.0;
  const double eu =
      -0.5 * (oracle::integrate([](double z) { return z * std::pow(1 - std::exp(-z), 2); }, 0.0, 1.0) +
              oracle::integrate([&](double z) { return z * std::pow(e1 * std::exp(-z), 2); }, 1.0,
                                INFINITY));
  EXPECT_NEAR(eu, -0.209849301464, 1e-11);
}

TEST(Claims, ConvolutionDensity) {
  const auto e = ex::exponential(1.0);
  for (double z : {0.1, 1.0, 3.5}) {
    EXPECT_NEAR(ex::convolution_density(e, e, z), z * std::exp(-z), 1e-9);
  }
  EXPECT_EQ(ex::convolution_density(e, e, -1.0), 0.0);
}

TEST(Claims, DerivativeIdentityChecks) {
  const auto r = ex::derivative_residual_check(ex::exponential(1.0), 1.0);
  EXPECT_EQ(r.verdict, ex::Verdict::holds);
  EXPECT_NEAR(detail(r, "printed"), 0.3125, 1e-10);
  EXPECT_NEAR(detail(r, "printed_gap"), 0.5625, 1e-7);
  for (const auto& d : {ex::gamma(2.0, 1.0), ex::uniform(0.0, 1.0)}) {
    EXPECT_EQ(ex::derivative_residual_check(d, 0.5).verdict, ex::Verdict::holds);
    EXPECT_EQ(ex::derivative_past_check(d, 0.5).verdict, ex::Verdict::holds);
  }
}

TEST(Claims, HazardPointInversion) {
  // Exponential rate 2 at t = 1: J = -2/4 - 1/8, D = -1/2.
  const double r = ex::invert_hazard_point(1.0, -0.625, -0.5, ex::DerivativeIdentity::corrected);
  EXPECT_NEAR(r, 2.0, 1e-12);
  EXPECT_THROW(ex::invert_hazard_point(1.0, -0.1, -10.0, ex::DerivativeIdentity::corrected),
               ex::InversionInfeasibleError);
  try {
    ex::invert_hazard_point(3.0, -0.1, -10.0, ex::DerivativeIdentity::corrected);
  } catch (const ex::InversionInfeasibleError& e) {
    EXPECT_EQ(e.t(), 3.0);
  }
}

TEST(Claims, InversionFromAnalyticCurve) {
  std::vector<ex::CurvePoint> curve;
  for (int i = 0; i <= 45; ++i) {
    const double t = 0.5 + 0.1 * i;
    curve.push_back({t, -t / 4 - 0.125, -0.25});
  }
  const auto inv = ex::invert_weighted_residual(curve);
  for (const auto& p : inv.hazard.points()) EXPECT_NEAR(p.r, 1.0, 1e-12);
  const auto sf = ex::reconstruct_survival(inv.hazard, 0.5, std::exp(-0.5), 0.2);
  for (double t : {0.5, 1.23, 4.9}) EXPECT_NEAR(sf(t), std::exp(-t), 1e-12);
  EXPECT_THROW(sf(6.0), ex::DomainError);
  EXPECT_THROW(ex::reconstruct_survival(inv.hazard, 0.5, 0.6, 0.05), ex::ResolutionError);
}

TEST(Claims, InversionAmbiguityIsReported) {
  // For rate 1/2 the smaller root 1/(2t) is the true hazard when t < 1.
  const auto r = ex::inversion_round_trip(ex::exponential(0.5), {0.4, 0.6, 0.8});
  EXPECT_EQ(r.verdict, ex::Verdict::violated);
  EXPECT_NE(r.notes.find("both roots"), std::string::npos);
  const auto ok = ex::inversion_round_trip(ex::exponential(0.5), {1.0, 2.0, 3.0, 4.0, 5.0});
  EXPECT_EQ(ok.verdict, ex::Verdict::holds);
}

TEST(Claims, HazardCurveValidation) {
  EXPECT_THROW(ex::HazardCurve({{1.0, 1.0}, {0.5, 1.0}}), ex::ValidationError);
  EXPECT_THROW(ex::HazardCurve({{1.0, -1.0}, {2.0, 1.0}}), ex::ValidationError);
}

TEST(Claims, ConstancyOdeFamily) {
  const ex::ConstancyOdeFamily f{1.0, 1.0};
  EXPECT_NEAR(f.c(), 2.0, 1e-15);
  EXPECT_NEAR(f.hazard(1.0), 1.0, 1e-15);
  EXPECT_NEAR(f.window_upper(), std::exp(2.0 / 3.0), 1e-15);
  const auto d = ex::constancy_ode_distribution(f, 0.2);
  for (double t : {0.3, 1.0, 1.8}) {
    EXPECT_NEAR(d.hazard(t), f.hazard(t), 1e-9 * f.hazard(t));
  }
  const auto rep = ex::constancy_explorer(f, {0.2, 0.5, 1.0, 1.5, 1.9});
  EXPECT_NEAR(rep.values[2], -1.0, 1e-8);
  EXPECT_EQ(ex::constancy_claim(rep).verdict, ex::Verdict::holds);
}

TEST(Claims, ParetoWeightedResidualIsConstant) {
  for (double k : {1.0, 2.0, 3.5}) {
    const auto rep = ex::constancy_explorer(k, 1.0, {1.5, 2.0, 3.0, 6.0});
    EXPECT_LE(rep.spread, 1e-6);
    ASSERT_TRUE(rep.reference);
    EXPECT_NEAR(*rep.reference, -k / 4, 1e-15);
    EXPECT_LE(*rep.max_deviation, 1e-6);
    EXPECT_EQ(ex::constancy_claim(rep).verdict, ex::Verdict::violated);
  }
}
