#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>

#include "extropy/distributions.hpp"
#include "extropy/measures.hpp"

namespace extropy {

enum class Direction { increasing, decreasing };

// A strictly monotone map supplied as an evaluator triple.
struct MonotoneTransform {
  std::string name;
  std::function<double(double)> forward;
  std::function<double(double)> inverse;
  std::function<double(double)> derivative;
  Direction direction = Direction::increasing;
  // Optional (x, dy) -> phi^-1(phi(x) + dy) - x evaluated without
  // cancellation. Keeps pushforward densities accurate next to a
  // transformed endpoint.
  std::function<double(double, double)> inverse_offset;
};

MonotoneTransform identity_transform();
// x -> a x, a > 0.
MonotoneTransform scale_transform(double a);
// x -> a x + b, a > 0.
MonotoneTransform affine_transform(double a, double b);
// x -> x² on [0, inf).
MonotoneTransform square_transform();
// x -> e^x.
MonotoneTransform exp_transform();
// x -> e^(-x); decreasing.
MonotoneTransform negative_exp_transform();
// x -> F(x), the probability integral transform of `dist`.
MonotoneTransform pit_transform(const UnivariateDistribution& dist);

// Parses "scale:a", "affine:a,b", "square", "exp" or "pit". `base` is the
// distribution the transform will be applied to (needed for "pit").
MonotoneTransform parse_transform(std::string_view text,
                                  const UnivariateDistribution& base);

// Checks that phi maps the support of dist into [0, inf), that the
// inverse round-trips within 1e-9 and that the derivative has the
// declared sign on a grid of quantiles. Throws ValidationError, or
// TransformDegeneracyError for a vanishing derivative.
void validate_transform(const UnivariateDistribution& dist,
                        const MonotoneTransform& phi);

// Law of phi(X), built from the base density by change of variables.
UnivariateDistribution pushforward(const UnivariateDistribution& dist,
                                   const MonotoneTransform& phi);

// J^w(phi(X)) = -1/2 ∫ phi(x)/|phi'(x)| f(x)² dx, integrated in x.
MeasureValue transformed_weighted_extropy(const UnivariateDistribution& dist,
                                          const MonotoneTransform& phi,
                                          const MeasureOptions& opt = {});

struct LinearTransformMeasures {
  MeasureValue extropy;   // J(aX + b) = J(X) / a
  MeasureValue weighted;  // J^w(aX + b) = J^w(X) + (b/a) J(X)
};

LinearTransformMeasures linear_transform_extropy(
    const UnivariateDistribution& dist, double a, double b,
    const MeasureOptions& opt = {});

// One side of a transformed residual/past evaluation. Exactly one of
// `value` and `error` is set.
struct TransformOutcome {
  std::optional<MeasureValue> value;
  std::string error;
};

struct TransformedConditional {
  TransformOutcome residual;  // J^w(Y_t)
  TransformOutcome past;      // J^w(tY)
};

// Weighted residual and past extropy of Y = phi(X) at t, integrated in
// the x-domain between phi^-1(t) and the matching support edge.
TransformedConditional transformed_residual_past(
    const UnivariateDistribution& dist, const MonotoneTransform& phi, double t,
    const MeasureOptions& opt = {});

}  // namespace extropy
