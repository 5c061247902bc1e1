#include "extropy/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "extropy/errors.hpp"
#include "extropy/special_functions.hpp"

namespace extropy {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(12);
  s << v;
  return s.str();
}

void require(bool ok, const std::string& family, const std::string& what) {
  if (!ok) throw ValidationError(family + ": " + what);
}

void require_positive(double v, const std::string& family,
                      const std::string& name) {
  require(v > 0.0 && std::isfinite(v), family,
          name + " must be a positive finite number (got " + fmt(v) + ")");
}

double uniform01(std::mt19937_64& rng) {
  // (0, 1): both endpoints excluded so quantile() stays finite.
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double v = u(rng);
  while (v <= 0.0) v = u(rng);
  return v;
}

class Exponential final : public DistributionModel {
 public:
  explicit Exponential(double rate) : rate_(rate) {}
  std::string family() const override { return "exponential"; }
  std::string describe() const override {
    return "exponential(lambda=" + fmt(rate_) + ")";
  }
  Support support() const override { return {0.0, kInf}; }
  double pdf(double x) const override {
    return x < 0.0 ? 0.0 : rate_ * std::exp(-rate_ * x);
  }
  double cdf(double x) const override {
    return x <= 0.0 ? 0.0 : -std::expm1(-rate_ * x);
  }
  double sf(double x) const override {
    return x <= 0.0 ? 1.0 : std::exp(-rate_ * x);
  }
  double hazard(double x) const override { return x < 0.0 ? 0.0 : rate_; }
  double quantile(double p) const override { return -std::log1p(-p) / rate_; }
  double sample(std::mt19937_64& rng) const override {
    std::exponential_distribution<double> d(rate_);
    return d(rng);
  }
  std::optional<double> closed_form(MeasureId id,
                                    std::optional<double> t) const override {
    switch (id) {
      case MeasureId::extropy:
        return -rate_ / 4.0;
      case MeasureId::weighted_extropy:
        return -0.125;
      case MeasureId::weighted_residual_extropy:
        if (!t) return std::nullopt;
        return -rate_ * std::max(*t, 0.0) / 4.0 - 0.125;
      default:
        return std::nullopt;
    }
  }

 private:
  double rate_;
};

class Uniform final : public DistributionModel {
 public:
  Uniform(double a, double b) : a_(a), b_(b) {}
  std::string family() const override { return "uniform"; }
  std::string describe() const override {
    return "uniform(a=" + fmt(a_) + ", b=" + fmt(b_) + ")";
  }
  Support support() const override { return {a_, b_}; }
  double pdf(double x) const override {
    return (x < a_ || x > b_) ? 0.0 : 1.0 / (b_ - a_);
  }
  double cdf(double x) const override {
    if (x <= a_) return 0.0;
    if (x >= b_) return 1.0;
    return (x - a_) / (b_ - a_);
  }
  double sf(double x) const override {
    if (x <= a_) return 1.0;
    if (x >= b_) return 0.0;
    return (b_ - x) / (b_ - a_);
  }
  double quantile(double p) const override { return a_ + p * (b_ - a_); }
  double sample(std::mt19937_64& rng) const override {
    return quantile(uniform01(rng));
  }
  std::optional<double> closed_form(MeasureId id,
                                    std::optional<double>) const override {
    switch (id) {
      case MeasureId::extropy:
        return -1.0 / (2.0 * (b_ - a_));
      case MeasureId::weighted_extropy:
        return -0.25 * (b_ + a_) / (b_ - a_);
      default:
        return std::nullopt;
    }
  }

 private:
  double a_, b_;
};

class Gamma final : public DistributionModel {
 public:
  Gamma(double shape, double scale)
      : shape_(shape),
        scale_(scale),
        log_norm_(shape * std::log(scale) + special::log_gamma(shape)) {}
  std::string family() const override { return "gamma"; }
  std::string describe() const override {
    return "gamma(alpha=" + fmt(shape_) + ", beta=" + fmt(scale_) + ")";
  }
  Support support() const override { return {0.0, kInf}; }
  double pdf(double x) const override {
    if (x <= 0.0) {
      if (x < 0.0 || shape_ > 1.0) return 0.0;
      return shape_ == 1.0 ? 1.0 / scale_ : kInf;
    }
    return std::exp((shape_ - 1.0) * std::log(x) - x / scale_ - log_norm_);
  }
  double cdf(double x) const override {
    return special::gamma_p(shape_, x / scale_);
  }
  double sf(double x) const override {
    return special::gamma_q(shape_, x / scale_);
  }
  double quantile(double p) const override {
    if (p <= 0.0) return 0.0;
    if (p >= 1.0) return kInf;
    return scale_ * special::gamma_p_inv(shape_, p);
  }
  double sample(std::mt19937_64& rng) const override {
    std::gamma_distribution<double> d(shape_, scale_);
    return d(rng);
  }
  std::optional<double> closed_form(MeasureId id,
                                    std::optional<double>) const override {
    if (id != MeasureId::weighted_extropy) return std::nullopt;
    // -Γ(2α) / (2^(2α+1) Γ²(α)); free of the scale.
    return -std::exp(special::log_gamma(2.0 * shape_) -
                     (2.0 * shape_ + 1.0) * std::log(2.0) -
                     2.0 * special::log_gamma(shape_));
  }

 private:
  double shape_, scale_, log_norm_;
};

class Beta final : public DistributionModel {
 public:
  Beta(double a, double b)
      : a_(a), b_(b), log_b_(special::log_beta2(a, b)) {}
  std::string family() const override { return "beta"; }
  std::string describe() const override {
    return "beta(alpha=" + fmt(a_) + ", beta=" + fmt(b_) + ")";
  }
  Support support() const override { return {0.0, 1.0}; }
  double pdf(double x) const override {
    if (x < 0.0 || x > 1.0) return 0.0;
    if (x == 0.0) return edge(a_);
    if (x == 1.0) return edge(b_);
    return std::exp((a_ - 1.0) * std::log(x) + (b_ - 1.0) * std::log1p(-x) -
                    log_b_);
  }
  double pdf_from_upper(double s) const override {
    if (s <= 0.0) return s < 0.0 ? 0.0 : edge(b_);
    if (s >= 1.0) return s > 1.0 ? 0.0 : edge(a_);
    return std::exp((a_ - 1.0) * std::log1p(-s) + (b_ - 1.0) * std::log(s) -
                    log_b_);
  }
  double cdf(double x) const override { return special::ibeta(a_, b_, x); }
  double sf(double x) const override { return special::ibetac(a_, b_, x); }
  double quantile(double p) const override {
    if (p <= 0.0) return 0.0;
    if (p >= 1.0) return 1.0;
    return special::ibeta_inv(a_, b_, p);
  }
  double sample(std::mt19937_64& rng) const override {
    std::gamma_distribution<double> ga(a_, 1.0);
    std::gamma_distribution<double> gb(b_, 1.0);
    const double x = ga(rng);
    const double y = gb(rng);
    return x / (x + y);
  }
  std::optional<double> closed_form(MeasureId id,
                                    std::optional<double>) const override {
    if (id != MeasureId::weighted_extropy) return std::nullopt;
    // Finite iff 2β - 1 > 0; β = 1/2 itself is divergent.
    if (b_ <= 0.5) return -kInf;
    return -0.5 * std::exp(special::log_beta2(2.0 * a_, 2.0 * b_ - 1.0) -
                           2.0 * log_b_);
  }

 private:
  double edge(double exponent) const {
    if (exponent > 1.0) return 0.0;
    if (exponent == 1.0) return std::exp(-log_b_);
    return kInf;
  }
  double a_, b_, log_b_;
};

class PiecewiseConstant final : public DistributionModel {
 public:
  explicit PiecewiseConstant(std::vector<double> c) : c_(std::move(c)) {
    cum_.resize(c_.size() + 1, 0.0);
    for (std::size_t k = 0; k < c_.size(); ++k) cum_[k + 1] = cum_[k] + c_[k];
  }
  std::string family() const override { return "piecewise_constant"; }
  std::string describe() const override {
    std::string s = "piecewise_constant(c=[";
    for (std::size_t k = 0; k < c_.size(); ++k) {
      if (k) s += ", ";
      s += fmt(c_[k]);
    }
    return s + "])";
  }
  Support support() const override {
    return {0.0, static_cast<double>(c_.size())};
  }
  double pdf(double x) const override {
    if (x < 0.0 || x >= static_cast<double>(c_.size())) return 0.0;
    return c_[static_cast<std::size_t>(std::floor(x))];
  }
  double cdf(double x) const override {
    if (x <= 0.0) return 0.0;
    if (x >= static_cast<double>(c_.size())) return 1.0;
    const auto k = static_cast<std::size_t>(std::floor(x));
    return std::min(1.0, cum_[k] + c_[k] * (x - static_cast<double>(k)));
  }
  double quantile(double p) const override {
    if (p <= 0.0) {
      for (std::size_t k = 0; k < c_.size(); ++k) {
        if (c_[k] > 0.0) return static_cast<double>(k);
      }
    }
    for (std::size_t k = 0; k < c_.size(); ++k) {
      if (c_[k] > 0.0 && p <= cum_[k + 1]) {
        return static_cast<double>(k) + (p - cum_[k]) / c_[k];
      }
    }
    return static_cast<double>(c_.size());
  }
  double sample(std::mt19937_64& rng) const override {
    return quantile(uniform01(rng));
  }
  std::vector<double> breakpoints() const override {
    std::vector<double> b;
    for (std::size_t k = 1; k < c_.size(); ++k) {
      b.push_back(static_cast<double>(k));
    }
    return b;
  }
  std::optional<double> closed_form(MeasureId id,
                                    std::optional<double>) const override {
    double s = 0.0;
    switch (id) {
      case MeasureId::extropy:
        for (double c : c_) s += c * c;
        return -0.5 * s;
      case MeasureId::weighted_extropy:
        for (std::size_t k = 0; k < c_.size(); ++k) {
          s += c_[k] * c_[k] * static_cast<double>(2 * k + 1);
        }
        return -0.25 * s;
      default:
        return std::nullopt;
    }
  }

 private:
  std::vector<double> c_;
  std::vector<double> cum_;
};

class Pareto final : public DistributionModel {
 public:
  Pareto(double shape, double scale) : k_(shape), sigma_(scale) {}
  std::string family() const override { return "pareto"; }
  std::string describe() const override {
    return "pareto(k=" + fmt(k_) + ", sigma=" + fmt(sigma_) + ")";
  }
  Support support() const override { return {sigma_, kInf}; }
  double pdf(double x) const override {
    if (x < sigma_) return 0.0;
    return k_ / x * std::pow(sigma_ / x, k_);
  }
  double cdf(double x) const override { return 1.0 - sf(x); }
  double sf(double x) const override {
    return x <= sigma_ ? 1.0 : std::pow(sigma_ / x, k_);
  }
  double hazard(double x) const override { return x < sigma_ ? 0.0 : k_ / x; }
  double quantile(double p) const override {
    if (p >= 1.0) return kInf;
    return sigma_ * std::pow(1.0 - p, -1.0 / k_);
  }
  double sample(std::mt19937_64& rng) const override {
    return sigma_ * std::pow(uniform01(rng), -1.0 / k_);
  }

 private:
  double k_, sigma_;
};

class Tabulated final : public DistributionModel {
 public:
  explicit Tabulated(std::vector<std::pair<double, double>> grid) {
    double mass = 0.0;
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
      mass += 0.5 * (grid[i].second + grid[i + 1].second) *
              (grid[i + 1].first - grid[i].first);
    }
    for (auto& [x, f] : grid) {
      x_.push_back(x);
      f_.push_back(f / mass);
    }
    cum_.resize(x_.size(), 0.0);
    for (std::size_t i = 0; i + 1 < x_.size(); ++i) {
      cum_[i + 1] = cum_[i] + 0.5 * (f_[i] + f_[i + 1]) * (x_[i + 1] - x_[i]);
    }
  }
  std::string family() const override { return "tabulated"; }
  std::string describe() const override {
    return "tabulated(" + std::to_string(x_.size()) + " points on [" +
           fmt(x_.front()) + ", " + fmt(x_.back()) + "])";
  }
  Support support() const override { return {x_.front(), x_.back()}; }
  double pdf(double x) const override {
    if (x < x_.front() || x > x_.back()) return 0.0;
    const std::size_t i = segment(x);
    const double w = (x - x_[i]) / (x_[i + 1] - x_[i]);
    return f_[i] + w * (f_[i + 1] - f_[i]);
  }
  double cdf(double x) const override {
    if (x <= x_.front()) return 0.0;
    if (x >= x_.back()) return 1.0;
    const std::size_t i = segment(x);
    const double h = x_[i + 1] - x_[i];
    const double d = x - x_[i];
    const double v =
        cum_[i] + f_[i] * d + 0.5 * (f_[i + 1] - f_[i]) / h * d * d;
    return std::clamp(v, 0.0, 1.0);
  }
  std::vector<double> breakpoints() const override {
    return {x_.begin() + 1, x_.end() - 1};
  }

 private:
  std::size_t segment(double x) const {
    auto it = std::upper_bound(x_.begin(), x_.end(), x);
    std::size_t i = static_cast<std::size_t>(it - x_.begin());
    i = i == 0 ? 0 : i - 1;
    return std::min(i, x_.size() - 2);
  }
  std::vector<double> x_, f_, cum_;
};

}  // namespace

double DistributionModel::hazard(double x) const {
  const double s = sf(x);
  if (!(s > 0.0)) {
    throw DomainError("hazard rate undefined where survival is zero (x=" +
                      fmt(x) + ")");
  }
  return pdf(x) / s;
}

double DistributionModel::reversed_hazard(double x) const {
  const double c = cdf(x);
  if (!(c > 0.0)) {
    throw DomainError("reversed hazard rate undefined where cdf is zero (x=" +
                      fmt(x) + ")");
  }
  return pdf(x) / c;
}

double DistributionModel::quantile(double p) const {
  const Support s = support();
  if (p <= 0.0) return s.lower;
  if (p >= 1.0) return s.upper;
  double lo = s.lower;
  double hi = s.upper;
  if (std::isinf(hi)) {
    hi = std::max(1.0, 2.0 * std::abs(lo));
    while (cdf(hi) < p) {
      lo = hi;
      hi *= 2.0;
      if (!std::isfinite(hi)) return hi;
    }
  }
  for (int i = 0; i < 2000 && hi - lo > 1e-12 * std::max(1.0, std::abs(hi));
       ++i) {
    const double mid = lo + 0.5 * (hi - lo);
    if (cdf(mid) < p) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo + 0.5 * (hi - lo);
}

double DistributionModel::sample(std::mt19937_64& rng) const {
  return quantile(uniform01(rng));
}

double DistributionModel::pdf_from_upper(double s) const {
  return pdf(support().upper - s);
}

double DistributionModel::pdf_from_lower(double s) const {
  return pdf(support().lower + s);
}

UnivariateDistribution::UnivariateDistribution(
    std::shared_ptr<const DistributionModel> m)
    : model_(std::move(m)) {
  if (!model_) throw ValidationError("distribution model is null");
}

double UnivariateDistribution::quantile(double p) const {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw ValidationError("quantile level must lie in [0, 1] (got " + fmt(p) +
                          ")");
  }
  return model_->quantile(p);
}

UnivariateDistribution exponential(double rate) {
  require_positive(rate, "exponential", "lambda");
  return UnivariateDistribution(std::make_shared<Exponential>(rate));
}

UnivariateDistribution uniform(double a, double b) {
  require(std::isfinite(a) && std::isfinite(b), "uniform",
          "a and b must be finite");
  require(a >= 0.0, "uniform", "a must be >= 0 (got " + fmt(a) + ")");
  require(b > a, "uniform",
          "b must be greater than a (got a=" + fmt(a) + ", b=" + fmt(b) + ")");
  return UnivariateDistribution(std::make_shared<Uniform>(a, b));
}

UnivariateDistribution gamma(double shape, double scale) {
  require_positive(shape, "gamma", "alpha");
  require_positive(scale, "gamma", "beta");
  return UnivariateDistribution(std::make_shared<Gamma>(shape, scale));
}

UnivariateDistribution beta(double alpha, double beta) {
  require_positive(alpha, "beta", "alpha");
  require_positive(beta, "beta", "beta");
  return UnivariateDistribution(std::make_shared<Beta>(alpha, beta));
}

UnivariateDistribution piecewise_constant(std::vector<double> weights) {
  require(!weights.empty(), "piecewise_constant", "weights must be non-empty");
  double sum = 0.0;
  for (double c : weights) {
    require(c >= 0.0 && std::isfinite(c), "piecewise_constant",
            "weights must be non-negative (got " + fmt(c) + ")");
    sum += c;
  }
  require(std::abs(sum - 1.0) <= 1e-9, "piecewise_constant",
          "weights must sum to 1 within 1e-9 (sum=" + fmt(sum) + ")");
  return UnivariateDistribution(
      std::make_shared<PiecewiseConstant>(std::move(weights)));
}

UnivariateDistribution pareto(double shape, double scale) {
  require_positive(shape, "pareto", "k");
  require_positive(scale, "pareto", "sigma");
  return UnivariateDistribution(std::make_shared<Pareto>(shape, scale));
}

UnivariateDistribution tabulated(std::vector<std::pair<double, double>> grid) {
  require(grid.size() >= 2, "tabulated", "grid needs at least two points");
  double mass = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto [x, f] = grid[i];
    require(std::isfinite(x) && std::isfinite(f), "tabulated",
            "grid entries must be finite");
    require(f >= 0.0, "tabulated",
            "density values must be non-negative (got " + fmt(f) + ")");
    if (i > 0) {
      require(x > grid[i - 1].first, "tabulated",
              "x values must be strictly increasing");
      mass += 0.5 * (f + grid[i - 1].second) * (x - grid[i - 1].first);
    }
  }
  require(grid.front().first >= 0.0, "tabulated",
          "support must lie in [0, inf) (first x=" + fmt(grid.front().first) +
              ")");
  require(mass > 0.0, "tabulated", "density must have positive mass");
  return UnivariateDistribution(std::make_shared<Tabulated>(std::move(grid)));
}

namespace {

double param(const DistributionSpec& spec, const std::string& name) {
  auto it = spec.params.find(name);
  if (it == spec.params.end()) {
    throw ValidationError(spec.family + ": missing parameter \"" + name +
                          "\"");
  }
  return it->second;
}

void only_params(const DistributionSpec& spec,
                 std::initializer_list<const char*> names) {
  for (const auto& [key, value] : spec.params) {
    bool known = false;
    for (const char* n : names) known = known || key == n;
    if (!known) {
      throw ValidationError(spec.family + ": unknown parameter \"" + key +
                            "\"");
    }
  }
}

}  // namespace

const std::vector<std::string>& catalog_families() {
  static const std::vector<std::string> families = {
      "exponential", "uniform", "gamma",    "beta",
      "piecewise_constant", "pareto", "tabulated"};
  return families;
}

UnivariateDistribution make_distribution(const DistributionSpec& spec) {
  const std::string& f = spec.family;
  if (f == "exponential") {
    only_params(spec, {"lambda"});
    return exponential(param(spec, "lambda"));
  }
  if (f == "uniform") {
    only_params(spec, {"a", "b"});
    return uniform(param(spec, "a"), param(spec, "b"));
  }
  if (f == "gamma") {
    only_params(spec, {"alpha", "beta"});
    return gamma(param(spec, "alpha"), param(spec, "beta"));
  }
  if (f == "beta") {
    only_params(spec, {"alpha", "beta"});
    return beta(param(spec, "alpha"), param(spec, "beta"));
  }
  if (f == "piecewise_constant") {
    only_params(spec, {});
    return piecewise_constant(spec.weights);
  }
  if (f == "pareto") {
    only_params(spec, {"k", "sigma"});
    return pareto(param(spec, "k"), param(spec, "sigma"));
  }
  if (f == "tabulated") {
    only_params(spec, {});
    return tabulated(spec.grid);
  }
  std::string valid;
  for (const auto& name : catalog_families()) {
    valid += valid.empty() ? name : ", " + name;
  }
  throw ValidationError("unknown distribution family \"" + f +
                        "\"; valid families: " + valid);
}

double ks_distance(const UnivariateDistribution& dist,
                   std::vector<double> sample) {
  std::sort(sample.begin(), sample.end());
  const double n = static_cast<double>(sample.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const double f = dist.cdf(sample[i]);
    d = std::max({d, f - static_cast<double>(i) / n,
                  static_cast<double>(i + 1) / n - f});
  }
  return d;
}

}  // namespace extropy
