#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "extropy/claim_report.hpp"
#include "extropy/distributions.hpp"
#include "extropy/measure_id.hpp"

namespace extropy {

enum class Method { closed_form, quadrature };

std::string_view to_string(Method m);

// How a measure may be evaluated. `automatic` prefers the catalog's
// closed form and falls back to quadrature.
enum class MethodPolicy { automatic, quadrature };

struct MeasureOptions {
  MethodPolicy policy = MethodPolicy::automatic;
  // Accuracy promised for the reported value; the quadrature engine runs
  // a hundred times tighter.
  double tol = 1e-8;
};

// Extended-real value of an information measure.
struct MeasureValue {
  double value = 0.0;
  Method method = Method::quadrature;
  double abs_error = 0.0;
  bool diverged = false;
};

enum class LifetimeMode { residual, past };

// X_t = (X | X > t) or tX = (X | X <= t), viewed as a distribution in its
// own right.
class ConditionalLifetime {
 public:
  // Throws DomainError when the conditioning event has probability
  // below 1e-12.
  ConditionalLifetime(UnivariateDistribution base, LifetimeMode mode,
                      double t);

  const UnivariateDistribution& base() const { return base_; }
  LifetimeMode mode() const { return mode_; }
  double t() const { return t_; }
  // P(X > t) for residual, P(X <= t) for past.
  double normalizer() const { return normalizer_; }
  Support support() const;
  double pdf(double x) const;

 private:
  UnivariateDistribution base_;
  LifetimeMode mode_;
  double t_;
  double normalizer_;
};

// J(X) = -1/2 ∫ f².
MeasureValue extropy(const UnivariateDistribution& dist,
                     const MeasureOptions& opt = {});
// J^w(X) = -1/2 ∫ x f². Divergence is reported as -inf, not an error.
MeasureValue weighted_extropy(const UnivariateDistribution& dist,
                              const MeasureOptions& opt = {});
// -1/(2 F̄²(t)) ∫_t^∞ f².
MeasureValue residual_extropy(const UnivariateDistribution& dist, double t,
                              const MeasureOptions& opt = {});
// -1/(2 F²(t)) ∫_0^t f².
MeasureValue past_extropy(const UnivariateDistribution& dist, double t,
                          const MeasureOptions& opt = {});
// -1/(2 F̄²(t)) ∫_t^∞ x f².
MeasureValue weighted_residual_extropy(const UnivariateDistribution& dist,
                                       double t,
                                       const MeasureOptions& opt = {});
// -1/(2 F²(t)) ∫_0^t x f².
MeasureValue weighted_past_extropy(const UnivariateDistribution& dist,
                                   double t, const MeasureOptions& opt = {});
// -1/(2 F̄²(t)) ∫_t^∞ F̄².
MeasureValue dynamic_survival_extropy(const UnivariateDistribution& dist,
                                      double t,
                                      const MeasureOptions& opt = {});

// Dispatch by identifier; `t` is required for time-indexed measures.
MeasureValue measure(const UnivariateDistribution& dist, MeasureId id,
                     std::optional<double> t = {},
                     const MeasureOptions& opt = {});

// Extropy and weighted extropy of a conditional lifetime.
MeasureValue extropy(const ConditionalLifetime& x,
                     const MeasureOptions& opt = {});
MeasureValue weighted_extropy(const ConditionalLifetime& x,
                              const MeasureOptions& opt = {});

// Time derivative of a weighted residual/past extropy curve at t, next to
// two closed expressions for it:
//   residual  printed:   (r/2)[J + t r]      corrected:  2 r J + t r²/2
//   past      printed:  -(q/2)[J + t q]      corrected: -2 q J - t q²/2
// The printed forms are reported, never trusted.
struct DerivativeTriple {
  double numeric = 0.0;
  double numeric_error = 0.0;
  double printed_formula = 0.0;
  double corrected_formula = 0.0;
  double value = 0.0;  // J at t
  double rate = 0.0;   // r(t) or q(t)
};

DerivativeTriple weighted_residual_derivative(
    const UnivariateDistribution& dist, double t,
    const MeasureOptions& opt = {});
DerivativeTriple weighted_past_derivative(const UnivariateDistribution& dist,
                                          double t,
                                          const MeasureOptions& opt = {});

enum class DerivativeIdentity { printed, corrected };

// The derivative identity that agrees with finite differences on the
// exponential, gamma and uniform reference curves. Decided once per
// process; downstream inversion uses whichever one passes.
DerivativeIdentity validated_derivative_identity();

// J^w(X) = F²(t) J^w(tX) + F̄²(t) J^w(X_t), both sides by quadrature.
ClaimReport decomposition_check(const UnivariateDistribution& dist, double t,
                                const MeasureOptions& opt = {});

// n points spaced geometrically between the 1% and 99% quantiles
// (linearly if the 1% quantile is not positive).
std::vector<double> default_t_grid(const UnivariateDistribution& dist,
                                   int n = 20);

}  // namespace extropy
