#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace extropy::quad {

using RealFunction = std::function<double(double)>;

// A definite integral of a real function over (lower, upper). Either limit
// may be infinite. Endpoints flagged singular are probed for power-law
// blow-up before integration and graded geometrically when the integrand
// grows toward them.
struct Integrand {
  RealFunction evaluator;
  double lower = 0.0;
  double upper = 0.0;
  bool singular_lower = false;
  bool singular_upper = false;
  // Optional s -> g(upper - s) and s -> g(lower + s). Let a singularity at
  // a finite, non-zero limit be resolved below the spacing of doubles
  // near that limit.
  RealFunction from_upper;
  RealFunction from_lower;
  // Interior points where the integrand is not smooth (jumps, kinks).
  std::vector<double> breakpoints;
};

struct Options {
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  std::size_t max_evaluations = 1'000'000;
};

struct QuadratureResult {
  double value = 0.0;
  double abs_error_estimate = 0.0;
  std::size_t evaluations = 0;
  // When set, value is +inf or -inf (sign of the integrand near the
  // offending endpoint) and the error estimate is meaningless.
  bool diverged = false;
};

// Integrates to |error| <= max(tol, tol * |value|).
// Throws BudgetExhaustedError when that cannot be reached within the
// evaluation budget, ValidationError on a malformed integrand.
QuadratureResult integrate(const Integrand& g, double tol);
QuadratureResult integrate(const Integrand& g, const Options& options);

enum class EndpointBehavior {
  not_examined,  // finite endpoint not flagged singular
  convergent,
  divergent,
  inconclusive,
};

struct EndpointStatus {
  EndpointBehavior behavior = EndpointBehavior::not_examined;
  // Fitted exponent p of |g| ~ distance^p (finite endpoint) or
  // |g| ~ x^p (infinite endpoint). NaN when no fit was possible.
  double exponent = 0.0;
};

struct DivergenceReport {
  EndpointStatus lower;
  EndpointStatus upper;
};

// Decides integrability at each flagged finite endpoint and at every
// infinite endpoint by a least-squares power-law fit of |g| over three
// decades of geometric approach. Exponents within 0.05 of -1 are
// reported inconclusive.
DivergenceReport detect_divergence(const Integrand& g);

struct Derivative {
  double value = 0.0;
  double error_estimate = 0.0;
};

// Central differences with Richardson extrapolation (Ridders' scheme).
// The stencil never extends beyond [t - scale, t + scale]. Exceptions
// thrown by h propagate.
Derivative differentiate(const RealFunction& h, double t, double scale);

}  // namespace extropy::quad
