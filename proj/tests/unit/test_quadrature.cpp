#include <cmath>
#include <limits>

#include <gtest/gtest.h>

#include "extropy/errors.hpp"
#include "extropy/quadrature.hpp"

namespace q = extropy::quad;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

q::Integrand make(q::RealFunction f, double a, double b) {
  q::Integrand g;
  g.evaluator = std::move(f);
  g.lower = a;
  g.upper = b;
  return g;
}
}  // namespace

TEST(Quadrature, Polynomial) {
  const auto r = q::integrate(make([](double x) { return x * x; }, 0.0, 1.0), 1e-12);
  EXPECT_NEAR(r.value, 1.0 / 3.0, 1e-14);
  EXPECT_FALSE(r.diverged);
}

TEST(Quadrature, SemiInfiniteAndInfinite) {
  EXPECT_NEAR(q::integrate(make([](double x) { return std::exp(-x); }, 0.0, kInf), 1e-12).value,
              1.0, 1e-12);
  EXPECT_NEAR(
      q::integrate(make([](double x) { return std::exp(-x * x); }, -kInf, kInf), 1e-12).value,
      std::sqrt(M_PI), 1e-12);
  EXPECT_NEAR(q::integrate(make([](double x) { return std::exp(x); }, -kInf, 0.0), 1e-12).value,
              1.0, 1e-12);
}

TEST(Quadrature, IntegrableEndpointSingularity) {
  auto g = make([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0);
  g.singular_lower = true;
  EXPECT_NEAR(q::integrate(g, 1e-11).value, 2.0, 1e-10);
}

TEST(Quadrature, UpperSingularityWithOffsetEvaluator) {
  // (2 - x)^(-0.7) on (1, 2): near x = 2 the distance cannot be formed
  // from x without cancellation, so it is supplied directly.
  auto g = make([](double x) { return std::pow(2.0 - x, -0.7); }, 1.0, 2.0);
  g.singular_upper = true;
  g.from_upper = [](double s) { return std::pow(s, -0.7); };
  EXPECT_NEAR(q::integrate(g, 1e-11).value, 1.0 / 0.3, 1e-9);
}

TEST(Quadrature, LowerSingularityWithOffsetEvaluator) {
  auto g = make([](double x) { return std::pow(x - 3.0, -0.6); }, 3.0, 4.0);
  g.singular_lower = true;
  g.from_lower = [](double s) { return std::pow(s, -0.6); };
  EXPECT_NEAR(q::integrate(g, 1e-11).value, 1.0 / 0.4, 1e-9);
}

TEST(Quadrature, DetectsDivergence) {
  auto g = make([](double x) { return std::pow(x, -1.5); }, 0.0, 1.0);
  g.singular_lower = true;
  const auto r = q::integrate(g, 1e-10);
  EXPECT_TRUE(r.diverged);
  EXPECT_EQ(r.value, kInf);

  const auto tail = q::integrate(make([](double x) { return -1.0 / std::sqrt(x); }, 1.0, kInf), 1e-10);
  EXPECT_TRUE(tail.diverged);
  EXPECT_EQ(tail.value, -kInf);
}

TEST(Quadrature, DivergenceReportExponents) {
  auto g = make([](double x) { return std::pow(x, -0.5); }, 0.0, 1.0);
  g.singular_lower = true;
  auto rep = q::detect_divergence(g);
  EXPECT_EQ(rep.lower.behavior, q::EndpointBehavior::convergent);
  EXPECT_NEAR(rep.lower.exponent, -0.5, 1e-3);
  EXPECT_EQ(rep.upper.behavior, q::EndpointBehavior::not_examined);

  g.evaluator = [](double x) { return 1.0 / x; };
  rep = q::detect_divergence(g);
  EXPECT_EQ(rep.lower.behavior, q::EndpointBehavior::inconclusive);
}

TEST(Quadrature, BreakpointsHandleJumps) {
  auto g = make([](double x) { return x < 0.3 ? 1.0 : 5.0; }, 0.0, 1.0);
  g.breakpoints = {0.3};
  EXPECT_NEAR(q::integrate(g, 1e-12).value, 0.3 + 3.5, 1e-12);
}

TEST(Quadrature, BudgetExhaustion) {
  q::Options o;
  o.abs_tol = o.rel_tol = 1e-14;
  o.max_evaluations = 200;
  const auto g = make([](double x) { return std::sin(1.0 / x); }, 1e-4, 1.0);
  EXPECT_THROW(q::integrate(g, o), extropy::BudgetExhaustedError);
}

TEST(Quadrature, RejectsMalformedIntegrand) {
  EXPECT_THROW(q::integrate(make([](double) { return 1.0; }, 1.0, 0.0), 1e-8),
               extropy::ValidationError);
  EXPECT_THROW(q::integrate(make({}, 0.0, 1.0), 1e-8), extropy::ValidationError);
  EXPECT_THROW(q::integrate(make([](double) { return 1.0; }, 0.0, 1.0), 0.0),
               extropy::ValidationError);
}

TEST(Quadrature, DifferentiateIsAccurate) {
  const auto d = q::differentiate([](double x) { return std::sin(x); }, 1.0, 0.1);
  EXPECT_NEAR(d.value, std::cos(1.0), 1e-11);
  EXPECT_LT(d.error_estimate, 1e-9);
  // The stencil stays inside [t - scale, t + scale].
  auto log_guarded = [](double x) {
    if (x <= 0.0) throw std::domain_error("left of zero");
    return std::log(x);
  };
  EXPECT_NEAR(q::differentiate(log_guarded, 0.2, 0.1).value, 5.0, 1e-10);
  // A stencil reaching almost to the singularity is poor, and says so.
  const auto rough = q::differentiate(log_guarded, 0.2, 0.19);
  EXPECT_GE(rough.error_estimate, std::abs(rough.value - 5.0));
}

// Property: integrating a sum of monomials term by term and at once agree.
TEST(Quadrature, LinearityOverRandomPolynomials) {
  unsigned state = 12345u;
  auto next = [&] {
    state = state * 1103515245u + 12345u;
    return static_cast<double>((state >> 8) % 1000) / 100.0 - 5.0;
  };
  for (int trial = 0; trial < 20; ++trial) {
    const double c0 = next(), c1 = next(), c3 = next();
    const double b = 0.5 + std::abs(next());
    const double expected = c0 * b + c1 * b * b / 2 + c3 * std::pow(b, 4) / 4;
    const auto r = q::integrate(
        make([=](double x) { return c0 + c1 * x + c3 * x * x * x; }, 0.0, b), 1e-12);
    EXPECT_NEAR(r.value, expected, 1e-10 * std::max(1.0, std::abs(expected)));
  }
}
