#include <cmath>
#include <string>

#include <gtest/gtest.h>

#include "extropy/errors.hpp"
#include "extropy/transforms.hpp"

namespace ex = extropy;

namespace {
ex::MeasureOptions quadrature() {
  ex::MeasureOptions o;
  o.policy = ex::MethodPolicy::quadrature;
  return o;
}

const ex::UnivariateDistribution& member(int i) {
  static const ex::UnivariateDistribution all[] = {
      ex::exponential(2.0),
      ex::uniform(1.0, 4.0),
      ex::gamma(2.5, 1.0),
      ex::beta(2.0, 0.7),
      ex::piecewise_constant({0.2, 0.5, 0.3}),
      ex::pareto(3.0, 1.0),
      ex::tabulated({{0.0, 0.0}, {1.0, 2.0}, {2.0, 0.0}}),
  };
  return all[i];
}
constexpr int kMembers = 7;
}  // namespace

TEST(Transforms, ProbabilityIntegralTransformGivesUniformValue) {
  for (int i = 0; i < kMembers; ++i) {
    const auto& d = member(i);
    const auto phi = ex::pit_transform(d);
    EXPECT_NEAR(ex::transformed_weighted_extropy(d, phi, quadrature()).value, -0.25, 1e-8)
        << d.describe();
  }
}

TEST(Transforms, LinearIdentities) {
  const ex::UnivariateDistribution ds[] = {ex::exponential(1.0), ex::uniform(0.0, 2.0)};
  for (const auto& d : ds) {
    const double j = ex::extropy(d, quadrature()).value;
    const double jw = ex::weighted_extropy(d, quadrature()).value;
    for (auto [a, b] : {std::pair{2.0, 0.0}, {1.0, 3.0}, {2.0, 3.0}}) {
      const auto phi = ex::affine_transform(a, b);
      const auto image = ex::pushforward(d, phi);
      EXPECT_NEAR(ex::extropy(image, quadrature()).value, j / a, 1e-8);
      EXPECT_NEAR(ex::weighted_extropy(image, quadrature()).value, jw + (b / a) * j, 1e-8);
      const auto lin = ex::linear_transform_extropy(d, a, b, quadrature());
      EXPECT_NEAR(lin.extropy.value, j / a, 1e-10);
      EXPECT_NEAR(lin.weighted.value, jw + (b / a) * j, 1e-10);
    }
  }
}

TEST(Transforms, XDomainEqualsPushforward) {
  for (int i = 0; i < kMembers; ++i) {
    const auto& d = member(i);
    for (const char* spec : {"scale:2", "affine:1,3", "square", "exp", "pit"}) {
      if (std::string(spec) == "exp" && d.family() == "pareto") continue;
      const auto phi = ex::parse_transform(spec, d);
      ex::validate_transform(d, phi);
      const auto x_domain = ex::transformed_weighted_extropy(d, phi, quadrature());
      const auto direct = ex::weighted_extropy(ex::pushforward(d, phi), quadrature());
      EXPECT_NEAR(x_domain.value, direct.value, 1e-7 * std::max(1.0, std::abs(direct.value)))
          << d.describe() << " " << spec;
    }
  }
}

TEST(Transforms, HeavyTailUnderExpDiverges) {
  // e^X with X Pareto has no finite weighted extropy integral near
  // infinity only if the tail is heavy enough; both paths must agree.
  const auto d = ex::pareto(3.0, 1.0);
  const auto phi = ex::exp_transform();
  const auto x_domain = ex::transformed_weighted_extropy(d, phi, quadrature());
  const auto direct = ex::weighted_extropy(ex::pushforward(d, phi), quadrature());
  EXPECT_EQ(x_domain.diverged, direct.diverged);
  if (!direct.diverged) EXPECT_NEAR(x_domain.value, direct.value, 1e-7);
}

TEST(Transforms, DecreasingTransform) {
  const auto d = ex::exponential(1.0);
  const auto phi = ex::negative_exp_transform();
  EXPECT_EQ(phi.direction, ex::Direction::decreasing);
  // e^(-X) is uniform on (0, 1).
  EXPECT_NEAR(ex::transformed_weighted_extropy(d, phi, quadrature()).value, -0.25, 1e-9);
}

TEST(Transforms, ResidualAndPastOfTransform) {
  const auto d = ex::exponential(1.0);
  const auto phi = ex::scale_transform(2.0);
  // 2X is exponential with rate 1/2.
  const auto out = ex::transformed_residual_past(d, phi, 2.0, quadrature());
  ASSERT_TRUE(out.residual.value);
  EXPECT_NEAR(out.residual.value->value, -0.5 * 2.0 / 4 - 0.125, 1e-9);
  ASSERT_TRUE(out.past.value);
  EXPECT_NEAR(out.past.value->value,
              ex::weighted_past_extropy(ex::exponential(0.5), 2.0, quadrature()).value, 1e-9);

  const auto outside = ex::transformed_residual_past(d, ex::pit_transform(d), 2.0);
  EXPECT_FALSE(outside.residual.value);
  EXPECT_FALSE(outside.residual.error.empty());
  const auto at_zero = ex::transformed_residual_past(d, phi, 0.0);
  EXPECT_FALSE(at_zero.past.value);
  EXPECT_TRUE(at_zero.residual.value);
}

TEST(Transforms, Validation) {
  const auto d = ex::exponential(1.0);
  EXPECT_THROW(ex::scale_transform(0.0), ex::ValidationError);
  EXPECT_THROW(ex::affine_transform(-1.0, 0.0), ex::ValidationError);
  EXPECT_THROW(ex::parse_transform("rotate:3", d), ex::ValidationError);
  EXPECT_THROW(ex::parse_transform("affine:2", d), ex::ValidationError);
  EXPECT_THROW(ex::linear_transform_extropy(d, 2.0, -1.0), ex::ValidationError);
  // Maps part of the support below zero.
  EXPECT_THROW(ex::validate_transform(d, ex::affine_transform(1.0, -5.0)),
               ex::ValidationError);

  ex::MonotoneTransform flat = ex::identity_transform();
  flat.name = "flat";
  flat.derivative = [](double) { return 0.0; };
  EXPECT_THROW(ex::validate_transform(d, flat), ex::TransformDegeneracyError);

  ex::MonotoneTransform wrong = ex::square_transform();
  wrong.inverse = [](double y) { return y; };
  EXPECT_THROW(ex::validate_transform(d, wrong), ex::ValidationError);
}
