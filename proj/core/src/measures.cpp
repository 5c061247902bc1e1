#include "extropy/measures.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>
#include <string>

#include "extropy/errors.hpp"
#include "extropy/quadrature.hpp"

namespace extropy {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kMinProbability = 1e-12;

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(12);
  s << v;
  return s.str();
}

enum class Weight { none, x };

double engine_tol(const MeasureOptions& opt) {
  if (!(opt.tol > 0.0)) throw ValidationError("measure tolerance must be > 0");
  return opt.tol / 100.0;
}

// ∫_lo^hi w(x) f(x)² dx over the part of [lo, hi] inside the support.
quad::QuadratureResult integrate_density_squared(
    const UnivariateDistribution& dist, double lo, double hi, Weight weight,
    const quad::Options& options) {
  const Support s = dist.support();
  lo = std::max(lo, s.lower);
  hi = std::min(hi, s.upper);
  if (!(lo < hi)) return {};
  if (weight == Weight::x && lo < 0.0) {
    throw ValidationError("weighted measures need a non-negative support");
  }
  quad::Integrand g;
  if (weight == Weight::x) {
    g.evaluator = [&dist](double x) {
      const double f = dist.pdf(x);
      return f == 0.0 ? 0.0 : x * f * f;
    };
  } else {
    g.evaluator = [&dist](double x) {
      const double f = dist.pdf(x);
      return f * f;
    };
  }
  g.lower = lo;
  g.upper = hi;
  g.singular_lower = lo == s.lower;
  g.singular_upper = hi == s.upper && std::isfinite(hi);
  if (g.singular_lower && std::isfinite(lo) && lo != 0.0) {
    const double lower = s.lower;
    if (weight == Weight::x) {
      g.from_lower = [&dist, lower](double d) {
        const double f = dist.pdf_from_lower(d);
        return f == 0.0 ? 0.0 : (lower + d) * f * f;
      };
    } else {
      g.from_lower = [&dist](double d) {
        const double f = dist.pdf_from_lower(d);
        return f * f;
      };
    }
  }
  if (g.singular_upper) {
    const double upper = s.upper;
    if (weight == Weight::x) {
      g.from_upper = [&dist, upper](double d) {
        const double f = dist.pdf_from_upper(d);
        return f == 0.0 ? 0.0 : (upper - d) * f * f;
      };
    } else {
      g.from_upper = [&dist](double d) {
        const double f = dist.pdf_from_upper(d);
        return f * f;
      };
    }
  }
  for (double b : dist.breakpoints()) {
    if (b > lo && b < hi) g.breakpoints.push_back(b);
  }
  return quad::integrate(g, options);
}

MeasureValue closed(double v) {
  return {v, Method::closed_form, 0.0, std::isinf(v)};
}

// value = -I / (2 n²) for I = ∫ w f² over [lo, hi].
MeasureValue scaled_measure(const UnivariateDistribution& dist, double lo,
                            double hi, Weight weight, double normalizer,
                            const MeasureOptions& opt) {
  const double tol = engine_tol(opt);
  quad::Options options;
  options.abs_tol = tol * 2.0 * normalizer * normalizer;
  options.rel_tol = tol;
  const quad::QuadratureResult r =
      integrate_density_squared(dist, lo, hi, weight, options);
  const double k = 0.5 / (normalizer * normalizer);
  if (r.diverged) return {-kInf, Method::quadrature, 0.0, true};
  return {-k * r.value, Method::quadrature, k * r.abs_error_estimate, false};
}

std::optional<MeasureValue> try_closed_form(const UnivariateDistribution& dist,
                                            MeasureId id,
                                            std::optional<double> t,
                                            const MeasureOptions& opt) {
  if (opt.policy != MethodPolicy::automatic) return std::nullopt;
  if (auto v = dist.closed_form(id, t)) return closed(*v);
  return std::nullopt;
}

double residual_normalizer(const UnivariateDistribution& dist, double t) {
  const double s = dist.sf(t);
  if (!(s >= kMinProbability)) {
    throw DomainError("residual measure undefined at t=" + fmt(t) +
                      ": survival probability " + fmt(s) + " below 1e-12");
  }
  return s;
}

double past_normalizer(const UnivariateDistribution& dist, double t) {
  const double c = dist.cdf(t);
  if (!(c >= kMinProbability)) {
    throw DomainError("past measure undefined at t=" + fmt(t) +
                      ": distribution function " + fmt(c) + " below 1e-12");
  }
  return c;
}

// Half-width for a derivative stencil around t that stays inside the
// support and away from density breakpoints.
double stencil_scale(const UnivariateDistribution& dist, double t) {
  const Support s = dist.support();
  double room = std::min(t - s.lower, s.upper - t);
  for (double b : dist.breakpoints()) room = std::min(room, std::abs(t - b));
  if (!(room > 0.0)) {
    throw StencilError("no room for a finite-difference stencil at t=" +
                       fmt(t));
  }
  return 0.5 * std::min(room, 0.2 * std::max(1.0, std::abs(t)));
}

MeasureOptions derivative_options(const MeasureOptions& opt) {
  MeasureOptions tight = opt;
  tight.tol = std::min(opt.tol, 1e-10);
  return tight;
}

}  // namespace

std::string_view to_string(MeasureId id) {
  switch (id) {
    case MeasureId::extropy:
      return "extropy";
    case MeasureId::weighted_extropy:
      return "weighted_extropy";
    case MeasureId::residual_extropy:
      return "residual_extropy";
    case MeasureId::past_extropy:
      return "past_extropy";
    case MeasureId::weighted_residual_extropy:
      return "weighted_residual_extropy";
    case MeasureId::weighted_past_extropy:
      return "weighted_past_extropy";
    case MeasureId::dynamic_survival_extropy:
      return "dynamic_survival_extropy";
  }
  return "unknown";
}

MeasureId parse_measure_id(std::string_view name) {
  for (MeasureId id : kAllMeasures) {
    if (to_string(id) == name) return id;
  }
  std::string valid;
  for (MeasureId id : kAllMeasures) {
    if (!valid.empty()) valid += ", ";
    valid += to_string(id);
  }
  throw ValidationError("unknown measure \"" + std::string(name) +
                        "\"; valid measures: " + valid);
}

bool is_time_indexed(MeasureId id) {
  return id != MeasureId::extropy && id != MeasureId::weighted_extropy;
}

std::string_view to_string(Method m) {
  return m == Method::closed_form ? "closed_form" : "quadrature";
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::holds:
      return "holds";
    case Verdict::violated:
      return "violated";
    case Verdict::indeterminate:
      return "indeterminate";
  }
  return "unknown";
}

ConditionalLifetime::ConditionalLifetime(UnivariateDistribution base,
                                         LifetimeMode mode, double t)
    : base_(std::move(base)), mode_(mode), t_(t) {
  normalizer_ = mode == LifetimeMode::residual ? residual_normalizer(base_, t)
                                               : past_normalizer(base_, t);
}

Support ConditionalLifetime::support() const {
  const Support s = base_.support();
  if (mode_ == LifetimeMode::residual) return {std::max(t_, s.lower), s.upper};
  return {s.lower, std::min(t_, s.upper)};
}

double ConditionalLifetime::pdf(double x) const {
  const Support s = support();
  if (x < s.lower || x > s.upper) return 0.0;
  if (mode_ == LifetimeMode::residual && x <= t_) return 0.0;
  return base_.pdf(x) / normalizer_;
}

MeasureValue extropy(const UnivariateDistribution& dist,
                     const MeasureOptions& opt) {
  if (auto v = try_closed_form(dist, MeasureId::extropy, std::nullopt, opt)) {
    return *v;
  }
  const Support s = dist.support();
  return scaled_measure(dist, s.lower, s.upper, Weight::none, 1.0, opt);
}

MeasureValue weighted_extropy(const UnivariateDistribution& dist,
                              const MeasureOptions& opt) {
  if (auto v = try_closed_form(dist, MeasureId::weighted_extropy, std::nullopt,
                               opt)) {
    return *v;
  }
  const Support s = dist.support();
  return scaled_measure(dist, s.lower, s.upper, Weight::x, 1.0, opt);
}

MeasureValue residual_extropy(const UnivariateDistribution& dist, double t,
                              const MeasureOptions& opt) {
  const double n = residual_normalizer(dist, t);
  if (auto v = try_closed_form(dist, MeasureId::residual_extropy, t, opt)) {
    return *v;
  }
  return scaled_measure(dist, t, dist.support().upper, Weight::none, n, opt);
}

MeasureValue past_extropy(const UnivariateDistribution& dist, double t,
                          const MeasureOptions& opt) {
  const double n = past_normalizer(dist, t);
  if (auto v = try_closed_form(dist, MeasureId::past_extropy, t, opt)) {
    return *v;
  }
  return scaled_measure(dist, dist.support().lower, t, Weight::none, n, opt);
}

MeasureValue weighted_residual_extropy(const UnivariateDistribution& dist,
                                       double t, const MeasureOptions& opt) {
  const double n = residual_normalizer(dist, t);
  if (auto v = try_closed_form(dist, MeasureId::weighted_residual_extropy, t,
                               opt)) {
    return *v;
  }
  return scaled_measure(dist, t, dist.support().upper, Weight::x, n, opt);
}

MeasureValue weighted_past_extropy(const UnivariateDistribution& dist,
                                   double t, const MeasureOptions& opt) {
  const double n = past_normalizer(dist, t);
  if (auto v =
          try_closed_form(dist, MeasureId::weighted_past_extropy, t, opt)) {
    return *v;
  }
  return scaled_measure(dist, dist.support().lower, t, Weight::x, n, opt);
}

MeasureValue dynamic_survival_extropy(const UnivariateDistribution& dist,
                                      double t, const MeasureOptions& opt) {
  const double n = residual_normalizer(dist, t);
  if (auto v = try_closed_form(dist, MeasureId::dynamic_survival_extropy, t,
                               opt)) {
    return *v;
  }
  const Support s = dist.support();
  const double lo = std::max(t, s.lower);
  if (!(lo < s.upper)) return {0.0, Method::quadrature, 0.0, false};
  const double tol = engine_tol(opt);
  quad::Integrand g;
  g.evaluator = [&dist](double x) {
    const double v = dist.sf(x);
    return v * v;
  };
  g.lower = lo;
  g.upper = s.upper;
  for (double b : dist.breakpoints()) {
    if (b > lo && b < s.upper) g.breakpoints.push_back(b);
  }
  quad::Options options;
  options.abs_tol = tol * 2.0 * n * n;
  options.rel_tol = tol;
  const quad::QuadratureResult r = quad::integrate(g, options);
  const double k = 0.5 / (n * n);
  if (r.diverged) return {-kInf, Method::quadrature, 0.0, true};
  return {-k * r.value, Method::quadrature, k * r.abs_error_estimate, false};
}

MeasureValue measure(const UnivariateDistribution& dist, MeasureId id,
                     std::optional<double> t, const MeasureOptions& opt) {
  if (is_time_indexed(id) && !t) {
    throw ValidationError(std::string(to_string(id)) +
                          " needs a time argument t");
  }
  switch (id) {
    case MeasureId::extropy:
      return extropy(dist, opt);
    case MeasureId::weighted_extropy:
      return weighted_extropy(dist, opt);
    case MeasureId::residual_extropy:
      return residual_extropy(dist, *t, opt);
    case MeasureId::past_extropy:
      return past_extropy(dist, *t, opt);
    case MeasureId::weighted_residual_extropy:
      return weighted_residual_extropy(dist, *t, opt);
    case MeasureId::weighted_past_extropy:
      return weighted_past_extropy(dist, *t, opt);
    case MeasureId::dynamic_survival_extropy:
      return dynamic_survival_extropy(dist, *t, opt);
  }
  throw ValidationError("unknown measure id");
}

MeasureValue extropy(const ConditionalLifetime& x, const MeasureOptions& opt) {
  return x.mode() == LifetimeMode::residual
             ? residual_extropy(x.base(), x.t(), opt)
             : past_extropy(x.base(), x.t(), opt);
}

MeasureValue weighted_extropy(const ConditionalLifetime& x,
                              const MeasureOptions& opt) {
  return x.mode() == LifetimeMode::residual
             ? weighted_residual_extropy(x.base(), x.t(), opt)
             : weighted_past_extropy(x.base(), x.t(), opt);
}

DerivativeTriple weighted_residual_derivative(
    const UnivariateDistribution& dist, double t, const MeasureOptions& opt) {
  const MeasureOptions tight = derivative_options(opt);
  const double scale = stencil_scale(dist, t);
  const quad::Derivative d = quad::differentiate(
      [&](double u) { return weighted_residual_extropy(dist, u, tight).value; },
      t, scale);
  DerivativeTriple out;
  out.numeric = d.value;
  out.numeric_error = d.error_estimate;
  out.value = weighted_residual_extropy(dist, t, tight).value;
  out.rate = dist.hazard(t);
  const double r = out.rate;
  const double j = out.value;
  out.printed_formula = 0.5 * r * (j + t * r);
  out.corrected_formula = 2.0 * r * j + 0.5 * t * r * r;
  return out;
}

DerivativeTriple weighted_past_derivative(const UnivariateDistribution& dist,
                                          double t,
                                          const MeasureOptions& opt) {
  const MeasureOptions tight = derivative_options(opt);
  const double scale = stencil_scale(dist, t);
  const quad::Derivative d = quad::differentiate(
      [&](double u) { return weighted_past_extropy(dist, u, tight).value; }, t,
      scale);
  DerivativeTriple out;
  out.numeric = d.value;
  out.numeric_error = d.error_estimate;
  out.value = weighted_past_extropy(dist, t, tight).value;
  out.rate = dist.reversed_hazard(t);
  const double q = out.rate;
  const double j = out.value;
  out.printed_formula = -0.5 * q * (j + t * q);
  out.corrected_formula = -2.0 * q * j - 0.5 * t * q * q;
  return out;
}

DerivativeIdentity validated_derivative_identity() {
  static const DerivativeIdentity chosen = [] {
    MeasureOptions opt;
    opt.policy = MethodPolicy::quadrature;
    const std::vector<DerivativeTriple> cases = {
        weighted_residual_derivative(exponential(1.0), 1.0, opt),
        weighted_residual_derivative(gamma(2.0, 1.0), 1.0, opt),
        weighted_residual_derivative(uniform(0.0, 1.0), 0.5, opt),
        weighted_past_derivative(exponential(1.0), 1.0, opt),
        weighted_past_derivative(uniform(0.0, 1.0), 0.5, opt),
    };
    bool corrected_ok = true;
    bool printed_ok = true;
    for (const DerivativeTriple& c : cases) {
      corrected_ok = corrected_ok &&
                     std::abs(c.corrected_formula - c.numeric) <= 1e-5;
      printed_ok = printed_ok && std::abs(c.printed_formula - c.numeric) <= 1e-5;
    }
    if (corrected_ok) return DerivativeIdentity::corrected;
    if (printed_ok) return DerivativeIdentity::printed;
    throw NumericalError(
        "neither derivative identity agrees with finite differences");
  }();
  return chosen;
}

ClaimReport decomposition_check(const UnivariateDistribution& dist, double t,
                                const MeasureOptions& opt) {
  ClaimReport rep;
  rep.claim_id = "decomposition";
  rep.subject = dist.describe() + " t=" + fmt(t);
  const double f = dist.cdf(t);
  const double s = dist.sf(t);
  if (!(f > 0.0 && s > 0.0)) {
    rep.notes = "precondition 0 < F(t) < 1 fails";
    return rep;
  }
  MeasureOptions q = opt;
  q.policy = MethodPolicy::quadrature;
  try {
    const MeasureValue whole = weighted_extropy(dist, q);
    const MeasureValue past = weighted_past_extropy(dist, t, q);
    const MeasureValue residual = weighted_residual_extropy(dist, t, q);
    rep.details = {{"weighted_extropy", whole.value},
                   {"weighted_past_extropy", past.value},
                   {"weighted_residual_extropy", residual.value},
                   {"F", f},
                   {"survival", s}};
    if (whole.diverged || past.diverged || residual.diverged) {
      rep.lhs = whole.value;
      rep.rhs = -kInf;
      rep.notes = "a piece diverged";
      return rep;
    }
    rep.lhs = whole.value;
    rep.rhs = f * f * past.value + s * s * residual.value;
    rep.gap = rep.lhs - rep.rhs;
    rep.verdict = std::abs(rep.gap) <= 1e-7 * std::max(1.0, std::abs(rep.lhs))
                      ? Verdict::holds
                      : Verdict::violated;
  } catch (const DomainError& e) {
    rep.notes = e.what();
  }
  return rep;
}

std::vector<double> default_t_grid(const UnivariateDistribution& dist, int n) {
  if (n < 2) throw ValidationError("a t-grid needs at least two points");
  const double lo = dist.quantile(0.01);
  const double hi = dist.quantile(0.99);
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double w = static_cast<double>(i) / (n - 1);
    grid.push_back(lo > 0.0 ? lo * std::pow(hi / lo, w) : lo + w * (hi - lo));
  }
  return grid;
}

}  // namespace extropy
