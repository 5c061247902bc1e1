#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "extropy/claim_report.hpp"
#include "extropy/distributions.hpp"
#include "extropy/measures.hpp"

namespace extropy {

enum class RegionKind { rectangle, triangle, product };

struct Rectangle {
  double x_lo = 0.0;
  double x_hi = 1.0;
  double y_lo = 0.0;
  double y_hi = 1.0;
};

// Density on 0 < x < y < u, evaluated as f(x, y, y - x, u - y). The two
// gaps are passed separately so that factors like (y - x)^(b-1) stay
// accurate when x is within rounding of y.
using TriangleDensity =
    std::function<double(double x, double y, double gap, double upper_gap)>;

using PlanarDensity = std::function<double(double x, double y)>;

// Sampler for a joint law; returns (x, y).
using PlanarSampler = std::function<std::pair<double, double>(std::mt19937_64&)>;

// A joint density together with the shape of its support. Copies share
// the underlying state.
class BivariateDistribution {
 public:
  // Independent pair, f(x, y) = f_X(x) f_Y(y).
  static BivariateDistribution product(UnivariateDistribution x,
                                       UnivariateDistribution y);
  static BivariateDistribution on_rectangle(std::string name, PlanarDensity f,
                                            Rectangle region,
                                            PlanarSampler sampler = {});
  static BivariateDistribution on_triangle(std::string name, TriangleDensity f,
                                           double upper,
                                           PlanarSampler sampler = {});

  RegionKind region() const;
  std::string describe() const;
  double pdf(double x, double y) const;
  // Throws ValidationError when no sampler was supplied.
  std::pair<double, double> sample(std::mt19937_64& rng) const;

  // Only for product distributions.
  const UnivariateDistribution& x_marginal() const;
  const UnivariateDistribution& y_marginal() const;

  // Analytic J(X, Y) and J^w(X, Y) where the catalog has them.
  std::optional<double> closed_form_extropy() const;
  std::optional<double> closed_form_weighted_extropy() const;

  struct State;
  explicit BivariateDistribution(std::shared_ptr<const State> s);
  const State& state() const { return *state_; }

 private:
  std::shared_ptr<const State> state_;
};

// x^(a-1) (y-x)^(b-1) (1-y)^(c-1) / B(a, b, c) on 0 < x < y < 1.
BivariateDistribution bivariate_beta(double a, double b, double c);

struct BivariateSpec {
  std::string family;  // "bivariate_beta" or "product"
  std::map<std::string, double> params;
  std::optional<DistributionSpec> x;
  std::optional<DistributionSpec> y;
};

BivariateDistribution make_bivariate(const BivariateSpec& spec);

// Iterated quadrature runs more loosely than 1D by default.
inline MeasureOptions bivariate_defaults() {
  MeasureOptions o;
  o.tol = 1e-7;
  return o;
}

// J(X, Y) = 1/4 ∬ f². Non-negative; divergence reported as +inf.
MeasureValue bivariate_extropy(const BivariateDistribution& bd,
                               const MeasureOptions& opt = bivariate_defaults());
// J^w(X, Y) = 1/4 ∬ x y f². Needs a support in the non-negative quadrant.
MeasureValue bivariate_weighted_extropy(
    const BivariateDistribution& bd,
    const MeasureOptions& opt = bivariate_defaults());

// J(X,Y) = J(X) J(Y) and J^w(X,Y) = J^w(X) J^w(Y) for an independent pair,
// joint side by 2D quadrature. One report per identity.
std::vector<ClaimReport> independence_factorization_check(
    const UnivariateDistribution& x, const UnivariateDistribution& y);

}  // namespace extropy
