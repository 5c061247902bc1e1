#include <cmath>
#include <limits>
#include <random>
#include <string>

#include <gtest/gtest.h>

#include "extropy/distributions.hpp"
#include "extropy/errors.hpp"
#include "extropy/measures.hpp"
#include "oracle.hpp"

namespace ex = extropy;

namespace {

ex::MeasureOptions quadrature() {
  ex::MeasureOptions o;
  o.policy = ex::MethodPolicy::quadrature;
  return o;
}

// -1/2 ∫ w(x) f(x)² over the support, by the oracle.
double oracle_measure(const ex::UnivariateDistribution& d, bool weighted) {
  const auto s = d.support();
  std::vector<double> cuts{s.lower};
  for (double b : d.breakpoints()) cuts.push_back(b);
  cuts.push_back(s.upper);
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    total += oracle::integrate(
        [&](double x) {
          const double f = d.pdf(x);
          return (weighted ? x : 1.0) * f * f;
        },
        cuts[i], cuts[i + 1]);
  }
  return -0.5 * total;
}

}  // namespace

TEST(Measures, ExponentialWeightedExtropyIsScaleFree) {
  for (double rate : {0.5, 1.0, 5.0}) {
    const auto v = ex::weighted_extropy(ex::exponential(rate), quadrature());
    EXPECT_EQ(v.method, ex::Method::quadrature);
    EXPECT_NEAR(v.value, -0.125, 1e-10) << "rate=" << rate;
  }
}

TEST(Measures, UniformClosedForms) {
  for (auto [a, b] : {std::pair{0.0, 1.0}, {1.0, 3.0}, {2.5, 7.0}}) {
    const auto u = ex::uniform(a, b);
    EXPECT_NEAR(ex::weighted_extropy(u, quadrature()).value, -(b + a) / (4 * (b - a)), 1e-10);
    EXPECT_NEAR(ex::extropy(u, quadrature()).value, -1.0 / (2 * (b - a)), 1e-10);
  }
  // (b + a)/(b - a) >= 1 on a non-negative support, so no uniform law
  // reaches the exponential's -1/8; U(1, 3) sits at -1/2.
  EXPECT_NEAR(ex::weighted_extropy(ex::uniform(1.0, 3.0), quadrature()).value, -0.5, 1e-10);
  for (double b : {0.5, 1.0, 10.0}) {
    EXPECT_NEAR(ex::weighted_extropy(ex::uniform(0.0, b), quadrature()).value, -0.25, 1e-10);
  }
}

TEST(Measures, GammaWeightedExtropyIndependentOfScale) {
  for (double shape : {1.0, 2.0, 3.0, 2.5}) {
    const double expected =
        -std::exp(std::lgamma(2 * shape) - (2 * shape + 1) * std::log(2.0) -
                  2 * std::lgamma(shape));
    for (double scale : {0.5, 1.0, 2.0}) {
      EXPECT_NEAR(ex::weighted_extropy(ex::gamma(shape, scale), quadrature()).value, expected,
                  1e-10)
          << shape << " " << scale;
    }
  }
}

TEST(Measures, BetaWeightedExtropy) {
  for (auto [a, b] : {std::pair{2.0, 3.0}, {1.0, 1.0}, {2.0, 0.7}, {0.8, 1.5}}) {
    const double expected = -std::exp(std::lgamma(2 * a) + std::lgamma(2 * b - 1) -
                                      std::lgamma(2 * a + 2 * b - 1)) /
                            (2 * std::pow(std::exp(std::lgamma(a) + std::lgamma(b) -
                                                   std::lgamma(a + b)),
                                          2));
    EXPECT_NEAR(ex::weighted_extropy(ex::beta(a, b), quadrature()).value, expected, 1e-9)
        << a << " " << b;
  }
}

TEST(Measures, BetaDivergenceIsAValue) {
  for (double b : {0.3, 0.4}) {
    const auto d = ex::beta(1.0, b);
    const auto closed = ex::weighted_extropy(d);
    EXPECT_TRUE(closed.diverged);
    EXPECT_EQ(closed.value, -std::numeric_limits<double>::infinity());
    const auto quad = ex::weighted_extropy(d, quadrature());
    EXPECT_TRUE(quad.diverged);
    EXPECT_EQ(quad.value, -std::numeric_limits<double>::infinity());
  }
  // Exponent 2(b - 1) = -1 exactly: the catalog knows it diverges.
  EXPECT_TRUE(ex::weighted_extropy(ex::beta(1.0, 0.5)).diverged);
}

TEST(Measures, PiecewiseConstant) {
  auto expected = [](const std::vector<double>& c, bool weighted) {
    double s = 0.0;
    for (std::size_t k = 1; k <= c.size(); ++k) {
      s += c[k - 1] * c[k - 1] * (weighted ? (2.0 * k - 1.0) : 1.0);
    }
    return weighted ? -0.25 * s : -0.5 * s;
  };
  const std::vector<std::vector<double>> cases = {
      {0.2, 0.5, 0.3}, {0.3, 0.5, 0.2}, {0.1, 0.1, 0.1, 0.7}};
  for (const auto& c : cases) {
    const auto d = ex::piecewise_constant(c);
    EXPECT_NEAR(ex::extropy(d, quadrature()).value, expected(c, false), 1e-10);
    EXPECT_NEAR(ex::weighted_extropy(d, quadrature()).value, expected(c, true), 1e-10);
  }
  // A permutation keeps J and moves J^w.
  const auto p = ex::piecewise_constant(cases[0]);
  const auto q = ex::piecewise_constant(cases[1]);
  EXPECT_NEAR(ex::extropy(p).value, ex::extropy(q).value, 1e-12);
  EXPECT_GT(std::abs(ex::weighted_extropy(p).value - ex::weighted_extropy(q).value), 0.01);
}

TEST(Measures, AgreeWithIndependentOracle) {
  const ex::UnivariateDistribution dists[] = {
      ex::gamma(2.5, 1.3), ex::beta(2.0, 3.0), ex::pareto(3.0, 2.0),
      ex::tabulated({{0.0, 0.0}, {1.0, 2.0}, {2.0, 0.0}})};
  for (const auto& d : dists) {
    EXPECT_NEAR(ex::extropy(d, quadrature()).value, oracle_measure(d, false), 1e-9)
        << d.describe();
    EXPECT_NEAR(ex::weighted_extropy(d, quadrature()).value, oracle_measure(d, true), 1e-9)
        << d.describe();
  }
}

TEST(Measures, ExponentialResidualCurve) {
  for (double rate : {0.5, 2.0}) {
    const auto d = ex::exponential(rate);
    for (int i = 0; i < 10; ++i) {
      const double t = 0.25 + 0.5 * i;
      EXPECT_NEAR(ex::weighted_residual_extropy(d, t, quadrature()).value,
                  -rate * t / 4 - 0.125, 1e-9)
          << rate << " " << t;
    }
  }
}

TEST(Measures, ResidualAndPastLimits) {
  const auto d = ex::gamma(2.0, 1.0);
  const double full = ex::weighted_extropy(d, quadrature()).value;
  EXPECT_NEAR(ex::weighted_residual_extropy(d, 1e-6, quadrature()).value, full, 1e-5);
  const auto u = ex::uniform(0.0, 2.0);
  EXPECT_NEAR(ex::weighted_past_extropy(u, 2.0 - 1e-6, quadrature()).value,
              ex::weighted_extropy(u, quadrature()).value, 1e-5);
}

TEST(Measures, UniformPastWeightedIsConstant) {
  const auto u = ex::uniform(0.0, 1.0);
  for (double t : {0.1, 0.4, 0.9, 1.0}) {
    EXPECT_NEAR(ex::weighted_past_extropy(u, t, quadrature()).value, -0.25, 1e-10);
  }
}

TEST(Measures, DynamicSurvivalExtropy) {
  for (double rate : {0.5, 1.0, 4.0}) {
    for (double t : {0.0, 0.7, 3.0}) {
      EXPECT_NEAR(ex::dynamic_survival_extropy(ex::exponential(rate), t, quadrature()).value,
                  -1.0 / (4 * rate), 1e-10);
    }
  }
  for (double b : {1.0, 3.0}) {
    for (double frac : {0.0, 0.25, 0.8}) {
      const double t = frac * b;
      EXPECT_NEAR(ex::dynamic_survival_extropy(ex::uniform(0.0, b), t, quadrature()).value,
                  -(b - t) / 6, 1e-10);
    }
  }
}

TEST(Measures, ConditionalOutsideSupportIsADomainError) {
  const auto u = ex::uniform(0.0, 1.0);
  EXPECT_THROW(ex::weighted_residual_extropy(u, 1.0), ex::DomainError);
  EXPECT_THROW(ex::residual_extropy(u, 2.0), ex::DomainError);
  EXPECT_THROW(ex::past_extropy(u, 0.0), ex::DomainError);
  EXPECT_THROW(ex::ConditionalLifetime(u, ex::LifetimeMode::residual, 1.5), ex::DomainError);
}

TEST(Measures, ConditionalLifetimeMatchesDirectFormula) {
  const auto d = ex::gamma(2.0, 1.0);
  const ex::ConditionalLifetime res(d, ex::LifetimeMode::residual, 1.2);
  EXPECT_NEAR(ex::weighted_extropy(res, quadrature()).value,
              ex::weighted_residual_extropy(d, 1.2, quadrature()).value, 1e-10);
  const ex::ConditionalLifetime past(d, ex::LifetimeMode::past, 1.2);
  EXPECT_NEAR(ex::extropy(past, quadrature()).value, ex::past_extropy(d, 1.2, quadrature()).value,
              1e-10);
}

TEST(Measures, DispatchById) {
  const auto d = ex::exponential(1.0);
  EXPECT_NEAR(ex::measure(d, ex::MeasureId::weighted_residual_extropy, 1.0).value, -0.375,
              1e-12);
  EXPECT_THROW(ex::measure(d, ex::MeasureId::residual_extropy), ex::ValidationError);
  for (auto id : ex::kAllMeasures) {
    EXPECT_EQ(ex::parse_measure_id(ex::to_string(id)), id);
  }
  try {
    ex::parse_measure_id("entropy");
    FAIL();
  } catch (const ex::ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("dynamic_survival_extropy"), std::string::npos);
  }
}

TEST(Measures, DerivativeIdentity) {
  EXPECT_EQ(ex::validated_derivative_identity(), ex::DerivativeIdentity::corrected);
  const auto tri = ex::weighted_residual_derivative(ex::exponential(1.0), 1.0);
  EXPECT_NEAR(tri.numeric, -0.25, 1e-8);
  EXPECT_NEAR(tri.corrected_formula, -0.25, 1e-10);
  EXPECT_NEAR(tri.printed_formula, 0.3125, 1e-10);
  EXPECT_NEAR(tri.printed_formula - tri.numeric, 0.5625, 1e-8);
}

// Property: the corrected identity matches finite differences on random
// members of three families.
TEST(Measures, DerivativeIdentityProperty) {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u01(0.15, 0.85);
  for (int trial = 0; trial < 6; ++trial) {
    const double p = u01(rng);
    const ex::UnivariateDistribution ds[] = {
        ex::exponential(0.5 + 2 * p), ex::gamma(2.0, 0.5 + p), ex::uniform(0.0, 1.0 + p)};
    for (const auto& d : ds) {
      const double t = d.quantile(p);
      const auto r = ex::weighted_residual_derivative(d, t);
      EXPECT_NEAR(r.numeric, r.corrected_formula, 1e-5) << d.describe() << " t=" << t;
      const auto q = ex::weighted_past_derivative(d, t);
      EXPECT_NEAR(q.numeric, q.corrected_formula, 1e-5) << d.describe() << " t=" << t;
    }
  }
}

TEST(Measures, DecompositionHoldsAcrossCatalog) {
  const ex::UnivariateDistribution ds[] = {
      ex::exponential(1.0), ex::uniform(0.5, 2.0), ex::gamma(3.0, 1.0), ex::beta(2.0, 2.0),
      ex::piecewise_constant({0.5, 0.25, 0.25}), ex::pareto(3.0, 1.0)};
  for (const auto& d : ds) {
    for (double t : ex::default_t_grid(d, 4)) {
      const auto rep = ex::decomposition_check(d, t);
      EXPECT_EQ(rep.verdict, ex::Verdict::holds) << rep.subject;
      EXPECT_NEAR(rep.gap, 0.0, 1e-7);
    }
  }
}

TEST(Measures, DefaultGridSpansQuantiles) {
  const auto d = ex::exponential(1.0);
  const auto g = ex::default_t_grid(d);
  ASSERT_EQ(g.size(), 20u);
  EXPECT_NEAR(g.front(), d.quantile(0.01), 1e-12);
  EXPECT_NEAR(g.back(), d.quantile(0.99), 1e-12);
  // Geometric spacing: constant ratio.
  EXPECT_NEAR(g[1] / g[0], g[19] / g[18], 1e-9);
}
