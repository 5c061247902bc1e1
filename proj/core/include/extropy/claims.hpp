#pragma once

#include <optional>
#include <string>
#include <vector>

#include "extropy/claim_report.hpp"
#include "extropy/distributions.hpp"
#include "extropy/measures.hpp"

namespace extropy {

// J^w(X_t) <= t r²(t) J_s(X_t) for a non-decreasing hazard. The hazard is
// sampled at 50 points on [t, quantile(0.999)]; if it drops, the verdict
// is indeterminate. gap = rhs - lhs.
ClaimReport residual_bound_check(const UnivariateDistribution& dist, double t,
                                 const MeasureOptions& opt = {});

// Two closed expressions offered as lower bounds for J^w(tX) when the
// reversed hazard is non-decreasing: -t q²/2 and -t² q²/4.
struct PastBoundExpressions {
  double printed = 0.0;
  double re_derived = 0.0;
  double mutual_gap = 0.0;  // re_derived - printed
};

PastBoundExpressions past_bound_expressions(double t, double q);

// J^w(tX) against both expressions, with the reversed hazard sampled at 50
// points on (lower, T). lhs/rhs/gap refer to the printed expression;
// the re-derived one is reported in details.
ClaimReport past_bound_check(const UnivariateDistribution& dist, double t,
                             double horizon, const MeasureOptions& opt = {});

// J^w(X + Y) >= -2 (J(X) J^w(Y) + J^w(X) J(Y)) for independent X, Y. The
// density of X + Y comes from an inner convolution integral; the marginal
// measures use closed forms where available.
ClaimReport sum_bound_check(const UnivariateDistribution& x,
                            const UnivariateDistribution& y);

// Density of X + Y at z for independent X, Y.
double convolution_density(const UnivariateDistribution& x,
                           const UnivariateDistribution& y, double z,
                           double tol = 1e-9);

// Finite-difference derivative of J^w(X_t) (resp. J^w(tX)) against the
// identity chosen by validated_derivative_identity(); holds within 1e-5.
ClaimReport derivative_residual_check(const UnivariateDistribution& dist, double t);
ClaimReport derivative_past_check(const UnivariateDistribution& dist, double t);

struct HazardPoint {
  double t = 0.0;
  double r = 0.0;
};

// Hazard rate on a grid; t strictly increasing, r finite and >= 0.
class HazardCurve {
 public:
  explicit HazardCurve(std::vector<HazardPoint> points);
  const std::vector<HazardPoint>& points() const { return points_; }

 private:
  std::vector<HazardPoint> points_;
};

// One sample of a weighted residual extropy curve.
struct CurvePoint {
  double t = 0.0;
  double value = 0.0;                 // J^w(X_t)
  std::optional<double> derivative;   // dJ^w(X_t)/dt
};

struct InversionResult {
  HazardCurve hazard;
  std::vector<std::string> warnings;
};

// Hazard rate at t from J = J^w(X_t) and D = dJ/dt, as the larger root of
// the quadratic the derivative identity gives. Throws
// InversionInfeasibleError for a negative discriminant or when no root is
// non-negative.
double invert_hazard_point(double t, double value, double derivative,
                           DerivativeIdentity identity);

// Inverts a whole curve. Missing derivatives are taken from centered
// differences of the values; supplied derivatives win over differences
// that disagree by more than 1e-4, with a warning. A warning also notes
// points where both roots were admissible.
InversionResult invert_weighted_residual(const std::vector<CurvePoint>& curve);

// Survival function rebuilt from a hazard curve by trapezoid integration,
// anchored at F̄(t_start).
class SurvivalCurve {
 public:
  SurvivalCurve(HazardCurve hazard, double t_start, double sf_start);
  // Valid on the span of the hazard grid; throws DomainError outside.
  double operator()(double t) const;
  double lower() const;
  double upper() const;

 private:
  double cumulative(double t) const;

  HazardCurve hazard_;
  std::vector<double> cumulative_;
  double anchor_ = 0.0;
  double log_sf_start_ = 0.0;
};

// Throws ResolutionError if adjacent grid points are further apart than
// max_spacing.
SurvivalCurve reconstruct_survival(const HazardCurve& hazard, double t_start,
                                   double sf_start, double max_spacing);

// Hazard r(t) = 2/(t (C - 3 log t)) with C = 2/(t0 r0) + 3 log t0, positive
// for t < e^(C/3).
struct ConstancyOdeFamily {
  double t0 = 1.0;
  double r0 = 1.0;

  double c() const;
  double hazard(double t) const;
  double window_upper() const;
};

// The law with hazard from `family`, survival 1 at `lower` and support
// [lower, e^(C/3)).
UnivariateDistribution constancy_ode_distribution(const ConstancyOdeFamily& family,
                                                  double lower);

struct ConstancyReport {
  std::string family;
  std::vector<double> grid;
  std::vector<double> values;  // J^w(X_t) on the grid
  double spread = 0.0;         // max - min
  std::optional<double> reference;
  std::optional<double> max_deviation;
  std::string notes;
};

// J^w(X_t) over a grid for the Pareto family, whose hazard k/t gives the
// constant -k/4.
ConstancyReport constancy_explorer(double pareto_shape, double pareto_scale,
                                   const std::vector<double>& grid,
                                   const MeasureOptions& opt = {});
// The same for the ODE family, restricted to its positivity window.
ConstancyReport constancy_explorer(const ConstancyOdeFamily& family,
                                   const std::vector<double>& grid,
                                   const MeasureOptions& opt = {});

// Reads a constancy report as the statement "J^w(X_t) is not constant":
// holds iff the spread exceeds 1e-6. gap = spread - 1e-6.
ClaimReport constancy_claim(const ConstancyReport& report);

// Inverts the weighted residual extropy curve of `dist` on `grid` and
// rebuilds the survival function. Holds iff the recovered hazard is within
// 1e-6 and the survival within 1e-4 of the truth. `curve` overrides the
// computed curve when supplied. lhs is the largest hazard error, rhs the
// largest survival error.
ClaimReport inversion_round_trip(const UnivariateDistribution& dist,
                                 const std::vector<double>& grid,
                                 const std::vector<CurvePoint>& curve = {});

}  // namespace extropy
