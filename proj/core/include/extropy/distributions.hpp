#pragma once

#include <map>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "extropy/measure_id.hpp"

namespace extropy {

// Closed support interval; upper may be +infinity.
struct Support {
  double lower = 0.0;
  double upper = 0.0;
};

// Implementation interface for a univariate lifetime law. Models are
// immutable once built; every method must be safe to call concurrently.
class DistributionModel {
 public:
  virtual ~DistributionModel() = default;

  virtual std::string family() const = 0;
  virtual std::string describe() const = 0;
  virtual Support support() const = 0;
  virtual double pdf(double x) const = 0;
  virtual double cdf(double x) const = 0;
  virtual double sf(double x) const { return 1.0 - cdf(x); }

  virtual double hazard(double x) const;
  virtual double reversed_hazard(double x) const;

  // Bisection on cdf to 1e-12 unless a model has an analytic inverse.
  virtual double quantile(double p) const;
  virtual double sample(std::mt19937_64& rng) const;

  // f(upper - s), for models whose density is singular at a finite upper
  // endpoint and needs the distance kept exact.
  virtual double pdf_from_upper(double s) const;
  // f(lower + s), the same for the lower endpoint.
  virtual double pdf_from_lower(double s) const;

  // Interior points where the density is not smooth.
  virtual std::vector<double> breakpoints() const { return {}; }

  // Analytic values of measures where the catalog carries them. `t` is
  // consulted only for time-indexed measures.
  virtual std::optional<double> closed_form(MeasureId /*id*/,
                                            std::optional<double> /*t*/) const {
    return std::nullopt;
  }
};

// Shared, immutable handle to a DistributionModel.
class UnivariateDistribution {
 public:
  explicit UnivariateDistribution(std::shared_ptr<const DistributionModel> m);

  std::string family() const { return model_->family(); }
  std::string describe() const { return model_->describe(); }
  Support support() const { return model_->support(); }
  double pdf(double x) const { return model_->pdf(x); }
  double cdf(double x) const { return model_->cdf(x); }
  double sf(double x) const { return model_->sf(x); }
  double hazard(double x) const { return model_->hazard(x); }
  double reversed_hazard(double x) const { return model_->reversed_hazard(x); }
  double quantile(double p) const;
  double sample(std::mt19937_64& rng) const { return model_->sample(rng); }
  double pdf_from_upper(double s) const { return model_->pdf_from_upper(s); }
  double pdf_from_lower(double s) const { return model_->pdf_from_lower(s); }
  std::vector<double> breakpoints() const { return model_->breakpoints(); }
  std::optional<double> closed_form(MeasureId id,
                                    std::optional<double> t = {}) const {
    return model_->closed_form(id, t);
  }

  const DistributionModel& model() const { return *model_; }

 private:
  std::shared_ptr<const DistributionModel> model_;
};

// Catalog constructors. All throw ValidationError naming the violated
// constraint.
UnivariateDistribution exponential(double rate);
UnivariateDistribution uniform(double a, double b);
// Scale parameterization: f(x) = x^(shape-1) e^(-x/scale) / (scale^shape Γ(shape)).
UnivariateDistribution gamma(double shape, double scale);
UnivariateDistribution beta(double alpha, double beta);
// Density c_k on [k-1, k), k = 1..n.
UnivariateDistribution piecewise_constant(std::vector<double> weights);
// Survival (scale/x)^shape on [scale, inf); hazard shape/x.
UnivariateDistribution pareto(double shape, double scale);
// Linear interpolation of (x, f(x)) pairs, renormalized to unit mass.
UnivariateDistribution tabulated(std::vector<std::pair<double, double>> grid);

// Plain-data description of a catalog member, as read from a spec document.
struct DistributionSpec {
  std::string family;
  std::map<std::string, double> params;
  std::vector<double> weights;                    // piecewise_constant
  std::vector<std::pair<double, double>> grid;    // tabulated
};

UnivariateDistribution make_distribution(const DistributionSpec& spec);

// Family names accepted by make_distribution.
const std::vector<std::string>& catalog_families();

// Kolmogorov-Smirnov statistic of a sample against dist's cdf.
double ks_distance(const UnivariateDistribution& dist,
                   std::vector<double> sample);

}  // namespace extropy
