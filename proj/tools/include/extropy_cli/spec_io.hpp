#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "extropy/bivariate.hpp"
#include "extropy/claims.hpp"
#include "extropy/distributions.hpp"

namespace extropy_cli {

// What a --dist argument describes.
enum class SpecKind { univariate, bivariate, constancy_ode };

struct ParsedSpec {
  SpecKind kind = SpecKind::univariate;
  std::optional<extropy::DistributionSpec> univariate;
  std::optional<extropy::BivariateSpec> bivariate;
  std::optional<extropy::ConstancyOdeFamily> ode;
};

// Inline JSON when the argument starts with '{', otherwise a file path.
std::string load_spec_text(const std::string& arg);

// Accepted shapes:
//   {"family": "exponential", "params": {"lambda": 1}}
//   {"family": "piecewise_constant", "weights": [0.2, 0.5, 0.3]}
//   {"family": "tabulated", "grid": [[0, 1], [1, 1]]}
//   {"family": "bivariate_beta", "params": {"alpha": 1, "beta": 1, "gamma": 1}}
//   {"family": "product", "x": {...}, "y": {...}}
//   {"family": "constancy_ode", "params": {"t0": 1, "r0": 1}}
// Throws extropy::ValidationError on anything else.
ParsedSpec parse_spec(const std::string& text);

// "lo:hi:n" (linear) or "geometric:lo:hi:n".
std::vector<double> parse_grid(std::string_view text);

// A weighted residual extropy curve, either JSON (an array of
// {"t", "value", "derivative"?} objects, or an object holding such an
// array under "rows") or CSV with a header naming t, value and optionally
// derivative.
std::vector<extropy::CurvePoint> load_curve(const std::string& path);

}  // namespace extropy_cli
