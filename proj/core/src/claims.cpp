#include "extropy/claims.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <memory>
#include <sstream>
#include <utility>

#include "extropy/errors.hpp"
#include "extropy/quadrature.hpp"

namespace extropy {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(12);
  s << v;
  return s.str();
}

MeasureOptions quadrature_policy() {
  MeasureOptions q;
  q.policy = MethodPolicy::quadrature;
  return q;
}

// True when h sampled at 50 evenly spaced points on [lo, hi] never drops
// by more than rounding.
bool sampled_non_decreasing(const std::function<double(double)>& h, double lo,
                            double hi) {
  double prev = h(lo);
  for (int i = 1; i < 50; ++i) {
    const double v = h(lo + (hi - lo) * i / 49.0);
    if (v < prev - 1e-9 * std::max(1.0, std::abs(prev))) return false;
    prev = v;
  }
  return true;
}

struct Roots {
  double larger = 0.0;
  double smaller = 0.0;
};

Roots hazard_roots(double t, double value, double derivative,
                   DerivativeIdentity identity) {
  if (!(t > 0.0) || !std::isfinite(t)) {
    throw InversionInfeasibleError(
        "hazard inversion needs a positive t (got " + fmt(t) + ")", t);
  }
  // identity: D = c r J + t r²/2 with c = 2 (corrected) or 1/2 (printed),
  // the latter after expanding (r/2)(J + t r).
  const double c = identity == DerivativeIdentity::corrected ? 2.0 : 0.5;
  const double b = c * value;
  double disc = b * b + 2.0 * t * derivative;
  if (disc < 0.0) {
    if (disc >= -1e-12 * (b * b + std::abs(2.0 * t * derivative))) {
      disc = 0.0;
    } else {
      throw InversionInfeasibleError(
          "hazard quadratic has a negative discriminant at t=" + fmt(t), t);
    }
  }
  const double s = std::sqrt(disc);
  Roots r{(-b + s) / t, (-b - s) / t};
  if (r.larger < 0.0) {
    if (r.larger >= -1e-12 * (std::abs(b) / t + 1.0)) {
      r.larger = 0.0;
    } else {
      throw InversionInfeasibleError(
          "both roots of the hazard quadratic are negative at t=" + fmt(t), t);
    }
  }
  return r;
}

// Second-order differences on a possibly uneven grid.
std::vector<double> grid_derivative(const std::vector<CurvePoint>& c) {
  const std::size_t n = c.size();
  std::vector<double> d(n);
  if (n == 2) {
    d[0] = d[1] = (c[1].value - c[0].value) / (c[1].t - c[0].t);
    return d;
  }
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double h1 = c[i].t - c[i - 1].t;
    const double h2 = c[i + 1].t - c[i].t;
    d[i] = -h2 / (h1 * (h1 + h2)) * c[i - 1].value +
           (h2 - h1) / (h1 * h2) * c[i].value +
           h1 / (h2 * (h1 + h2)) * c[i + 1].value;
  }
  {
    const double h1 = c[1].t - c[0].t;
    const double h2 = c[2].t - c[1].t;
    d[0] = -(2 * h1 + h2) / (h1 * (h1 + h2)) * c[0].value +
           (h1 + h2) / (h1 * h2) * c[1].value -
           h1 / (h2 * (h1 + h2)) * c[2].value;
  }
  {
    const double h1 = c[n - 2].t - c[n - 3].t;
    const double h2 = c[n - 1].t - c[n - 2].t;
    d[n - 1] = h2 / (h1 * (h1 + h2)) * c[n - 3].value -
               (h1 + h2) / (h1 * h2) * c[n - 2].value +
               (h1 + 2 * h2) / (h2 * (h1 + h2)) * c[n - 1].value;
  }
  return d;
}

class ConstancyOdeModel final : public DistributionModel {
 public:
  ConstancyOdeModel(ConstancyOdeFamily family, double lower)
      : family_(family),
        c_(family.c()),
        lo_(lower),
        hi_(family.window_upper()),
        a_lo_(c_ - 3.0 * std::log(lower)) {}

  std::string family() const override { return "constancy_ode"; }
  std::string describe() const override {
    return "constancy_ode(t0=" + fmt(family_.t0) + ", r0=" + fmt(family_.r0) +
           ", lower=" + fmt(lo_) + ")";
  }
  Support support() const override { return {lo_, hi_}; }

  double pdf(double x) const override {
    if (!(x > lo_ && x < hi_)) return 0.0;
    return density(x, c_ - 3.0 * std::log(x));
  }
  double pdf_from_upper(double s) const override {
    if (!(s > 0.0 && s < hi_ - lo_)) return 0.0;
    return density(hi_ - s, -3.0 * std::log1p(-s / hi_));
  }
  double sf(double x) const override {
    if (x <= lo_) return 1.0;
    if (x >= hi_) return 0.0;
    return std::pow((c_ - 3.0 * std::log(x)) / a_lo_, 2.0 / 3.0);
  }
  double cdf(double x) const override {
    if (x <= lo_) return 0.0;
    if (x >= hi_) return 1.0;
    // 1 - (A/A_lo)^(2/3) with A - A_lo = -3 log(x/lo).
    return -std::expm1(2.0 / 3.0 *
                       std::log1p(-3.0 * std::log(x / lo_) / a_lo_));
  }
  double hazard(double x) const override {
    if (x < lo_) return 0.0;
    return family_.hazard(x);
  }
  double quantile(double p) const override {
    if (p <= 0.0) return lo_;
    if (p >= 1.0) return hi_;
    const double a = a_lo_ * std::pow(1.0 - p, 1.5);
    return std::exp((c_ - a) / 3.0);
  }

 private:
  double density(double x, double a) const {
    return 2.0 * std::pow(a, -1.0 / 3.0) / (x * std::pow(a_lo_, 2.0 / 3.0));
  }

  ConstancyOdeFamily family_;
  double c_, lo_, hi_, a_lo_;
};

ConstancyReport explore(std::string family, const UnivariateDistribution& dist,
                        const std::vector<double>& grid,
                        const MeasureOptions& opt) {
  if (grid.empty()) throw ValidationError("constancy grid is empty");
  MeasureOptions q = opt;
  q.policy = MethodPolicy::quadrature;
  ConstancyReport rep;
  rep.family = std::move(family);
  rep.grid = grid;
  for (double t : grid) rep.values.push_back(weighted_residual_extropy(dist, t, q).value);
  const auto [mn, mx] = std::minmax_element(rep.values.begin(), rep.values.end());
  rep.spread = *mx - *mn;
  return rep;
}

}  // namespace

ClaimReport residual_bound_check(const UnivariateDistribution& dist, double t,
                                 const MeasureOptions& opt) {
  ClaimReport rep;
  rep.claim_id = "residual_bound";
  rep.subject = dist.describe() + " t=" + fmt(t);
  MeasureOptions q = opt;
  q.policy = MethodPolicy::quadrature;
  try {
    const double hi = std::max(t, dist.quantile(0.999));
    const bool monotone = sampled_non_decreasing(
        [&](double x) { return dist.hazard(x); }, t, hi);
    const MeasureValue lhs = weighted_residual_extropy(dist, t, q);
    const MeasureValue js = dynamic_survival_extropy(dist, t, q);
    const double r = dist.hazard(t);
    rep.lhs = lhs.value;
    rep.rhs = t * r * r * js.value;
    rep.details = {{"hazard", r}, {"dynamic_survival_extropy", js.value}};
    if (lhs.diverged || js.diverged) {
      rep.notes = "a side diverged";
      return rep;
    }
    rep.gap = rep.rhs - rep.lhs;
    if (!monotone) {
      rep.notes = "precondition unverified: hazard rate decreases on [t, "
                  "quantile(0.999)]";
      return rep;
    }
    rep.verdict = rep.lhs <= rep.rhs + 1e-8 ? Verdict::holds : Verdict::violated;
  } catch (const DomainError& e) {
    rep.notes = e.what();
  }
  return rep;
}

PastBoundExpressions past_bound_expressions(double t, double q) {
  PastBoundExpressions e;
  e.printed = -t * q * q / 2.0;
  e.re_derived = -t * t * q * q / 4.0;
  e.mutual_gap = e.re_derived - e.printed;
  return e;
}

ClaimReport past_bound_check(const UnivariateDistribution& dist, double t,
                             double horizon, const MeasureOptions& opt) {
  if (!(horizon > t)) {
    throw ValidationError("past bound needs a horizon T > t (got T=" +
                          fmt(horizon) + ", t=" + fmt(t) + ")");
  }
  ClaimReport rep;
  rep.claim_id = "past_bound";
  rep.subject = dist.describe() + " t=" + fmt(t) + " T=" + fmt(horizon);
  MeasureOptions q = opt;
  q.policy = MethodPolicy::quadrature;
  const MeasureValue lhs = weighted_past_extropy(dist, t, q);
  const Support s = dist.support();
  const double lo = s.lower;
  const double hi = std::min(horizon, s.upper);
  // Open interval (lower, T): stay one grid step inside both ends.
  const double step = (hi - lo) / 51.0;
  bool monotone = true;
  try {
    monotone = sampled_non_decreasing(
        [&](double x) { return dist.reversed_hazard(x); }, lo + step,
        hi - step);
  } catch (const DomainError&) {
    monotone = false;
  }
  const double rate = dist.reversed_hazard(t);
  const PastBoundExpressions e = past_bound_expressions(t, rate);
  rep.lhs = lhs.value;
  rep.rhs = e.printed;
  rep.details = {{"reversed_hazard", rate},
                 {"printed", e.printed},
                 {"re_derived", e.re_derived},
                 {"mutual_gap", e.mutual_gap}};
  if (lhs.diverged) {
    rep.notes = "weighted past extropy diverged";
    return rep;
  }
  rep.gap = rep.lhs - rep.rhs;
  const bool printed_ok = rep.lhs >= e.printed - 1e-8;
  const bool re_derived_ok = rep.lhs >= e.re_derived - 1e-8;
  rep.details.emplace_back("gap_re_derived", rep.lhs - e.re_derived);
  std::string against = std::string("printed bound ") +
                        (printed_ok ? "satisfied" : "not satisfied") +
                        ", re-derived bound " +
                        (re_derived_ok ? "satisfied" : "not satisfied");
  if (!monotone) {
    rep.notes = "precondition unverified: reversed hazard rate decreases on "
                "(lower, T); " + against;
    return rep;
  }
  rep.notes = against;
  rep.verdict = printed_ok ? Verdict::holds : Verdict::violated;
  return rep;
}

double convolution_density(const UnivariateDistribution& x,
                           const UnivariateDistribution& y, double z,
                           double tol) {
  const Support sx = x.support();
  const Support sy = y.support();
  const double lo = std::max(sx.lower, z - sy.upper);
  const double hi = std::min(sx.upper, z - sy.lower);
  if (!(lo < hi)) return 0.0;
  quad::Integrand g;
  g.evaluator = [&x, &y, z](double u) {
    const double a = x.pdf(u);
    return a == 0.0 ? 0.0 : a * y.pdf(z - u);
  };
  g.lower = lo;
  g.upper = hi;
  g.singular_lower = std::isfinite(lo);
  g.singular_upper = std::isfinite(hi);
  for (double b : x.breakpoints()) {
    if (b > lo && b < hi) g.breakpoints.push_back(b);
  }
  for (double b : y.breakpoints()) {
    if (z - b > lo && z - b < hi) g.breakpoints.push_back(z - b);
  }
  std::sort(g.breakpoints.begin(), g.breakpoints.end());
  quad::Options o;
  o.abs_tol = tol;
  o.rel_tol = tol;
  const quad::QuadratureResult r = quad::integrate(g, o);
  if (r.diverged) {
    throw NumericalError("convolution density is infinite at z=" + fmt(z));
  }
  return r.value;
}

ClaimReport sum_bound_check(const UnivariateDistribution& x,
                            const UnivariateDistribution& y) {
  ClaimReport rep;
  rep.claim_id = "sum_bound";
  rep.subject = x.describe() + " + " + y.describe();
  // Marginals take closed forms where the catalog has them, so the
  // right-hand side is exact for catalog members.
  const MeasureOptions q;
  const MeasureValue jx = extropy::extropy(x, q);
  const MeasureValue jy = extropy::extropy(y, q);
  const MeasureValue wx = weighted_extropy(x, q);
  const MeasureValue wy = weighted_extropy(y, q);
  rep.details = {{"x_extropy", jx.value},
                 {"x_weighted_extropy", wx.value},
                 {"y_extropy", jy.value},
                 {"y_weighted_extropy", wy.value}};
  if (jx.diverged || jy.diverged || wx.diverged || wy.diverged) {
    rep.notes = "a marginal measure diverged";
    return rep;
  }
  rep.rhs = -2.0 * (jx.value * wy.value + wx.value * jy.value);

  const Support sx = x.support();
  const Support sy = y.support();
  quad::Integrand g;
  g.evaluator = [&x, &y](double z) {
    const double f = convolution_density(x, y, z);
    return f == 0.0 ? 0.0 : z * f * f;
  };
  g.lower = sx.lower + sy.lower;
  g.upper = sx.upper + sy.upper;
  g.singular_lower = true;
  g.singular_upper = std::isfinite(g.upper);
  std::vector<double> kinks = {sx.lower + sy.upper, sx.upper + sy.lower};
  for (double b : x.breakpoints()) {
    kinks.push_back(b + sy.lower);
    kinks.push_back(b + sy.upper);
  }
  for (double b : y.breakpoints()) {
    kinks.push_back(sx.lower + b);
    kinks.push_back(sx.upper + b);
  }
  for (double k : kinks) {
    if (std::isfinite(k) && k > g.lower && k < g.upper) g.breakpoints.push_back(k);
  }
  std::sort(g.breakpoints.begin(), g.breakpoints.end());
  g.breakpoints.erase(std::unique(g.breakpoints.begin(), g.breakpoints.end()),
                      g.breakpoints.end());
  quad::Options o;
  o.abs_tol = 1e-7;
  o.rel_tol = 1e-7;
  const quad::QuadratureResult r = quad::integrate(g, o);
  if (r.diverged) {
    rep.lhs = -kInf;
    rep.notes = "weighted extropy of the sum diverged";
    return rep;
  }
  rep.lhs = -0.5 * r.value;
  rep.gap = rep.lhs - rep.rhs;
  rep.verdict = rep.lhs >= rep.rhs - 1e-6 ? Verdict::holds : Verdict::violated;
  return rep;
}

namespace {

ClaimReport derivative_report(const char* id, const UnivariateDistribution& dist,
                          double t, bool residual) {
  ClaimReport rep;
  rep.claim_id = id;
  rep.subject = dist.describe() + " t=" + fmt(t);
  try {
    const DerivativeTriple d =
        residual ? weighted_residual_derivative(dist, t, quadrature_policy())
                 : weighted_past_derivative(dist, t, quadrature_policy());
    const DerivativeIdentity identity = validated_derivative_identity();
    rep.lhs = d.numeric;
    rep.rhs = identity == DerivativeIdentity::corrected ? d.corrected_formula
                                                        : d.printed_formula;
    rep.gap = rep.lhs - rep.rhs;
    rep.details = {{"numeric_error", d.numeric_error},
                   {"printed", d.printed_formula},
                   {"corrected", d.corrected_formula},
                   {"printed_gap", d.printed_formula - d.numeric},
                   {residual ? "hazard" : "reversed_hazard", d.rate},
                   {"value", d.value}};
    rep.notes = std::string("rhs uses the ") +
                (identity == DerivativeIdentity::corrected ? "corrected"
                                                           : "printed") +
                " identity";
    rep.verdict = std::abs(rep.gap) <= 1e-5 ? Verdict::holds : Verdict::violated;
  } catch (const NumericalError& e) {
    rep.notes = e.what();
  }
  return rep;
}

}  // namespace

ClaimReport derivative_residual_check(const UnivariateDistribution& dist, double t) {
  return derivative_report("lemma1_residual", dist, t, true);
}

ClaimReport derivative_past_check(const UnivariateDistribution& dist, double t) {
  return derivative_report("lemma1_past", dist, t, false);
}

HazardCurve::HazardCurve(std::vector<HazardPoint> points)
    : points_(std::move(points)) {
  for (std::size_t i = 0; i < points_.size(); ++i) {
    const HazardPoint& p = points_[i];
    if (!std::isfinite(p.t) || !std::isfinite(p.r) || p.r < 0.0) {
      throw ValidationError("hazard curve needs finite t and finite r >= 0 "
                            "(bad point at t=" + fmt(p.t) + ")");
    }
    if (i > 0 && !(p.t > points_[i - 1].t)) {
      throw ValidationError("hazard curve t values must increase strictly");
    }
  }
}

double invert_hazard_point(double t, double value, double derivative,
                           DerivativeIdentity identity) {
  return hazard_roots(t, value, derivative, identity).larger;
}

InversionResult invert_weighted_residual(const std::vector<CurvePoint>& curve) {
  if (curve.empty()) throw ValidationError("curve to invert is empty");
  for (std::size_t i = 0; i < curve.size(); ++i) {
    if (!std::isfinite(curve[i].t) || !std::isfinite(curve[i].value)) {
      throw ValidationError("curve entries must be finite");
    }
    if (i > 0 && !(curve[i].t > curve[i - 1].t)) {
      throw ValidationError("curve t values must increase strictly");
    }
  }
  std::vector<double> diff;
  if (curve.size() >= 2) diff = grid_derivative(curve);

  InversionResult out{HazardCurve({}), {}};
  std::vector<HazardPoint> points;
  const DerivativeIdentity identity = validated_derivative_identity();
  int disagreements = 0;
  double worst_t = 0.0;
  double worst = 0.0;
  int ambiguous = 0;
  for (std::size_t i = 0; i < curve.size(); ++i) {
    double d = 0.0;
    if (curve[i].derivative) {
      d = *curve[i].derivative;
      if (!diff.empty() && std::abs(d - diff[i]) > 1e-4) {
        ++disagreements;
        if (std::abs(d - diff[i]) > worst) {
          worst = std::abs(d - diff[i]);
          worst_t = curve[i].t;
        }
      }
    } else if (!diff.empty()) {
      d = diff[i];
    } else {
      throw ValidationError(
          "a single curve point needs an explicit derivative");
    }
    const Roots r = hazard_roots(curve[i].t, curve[i].value, d, identity);
    if (r.smaller >= 0.0 && r.larger - r.smaller > 1e-9 * r.larger) ++ambiguous;
    points.push_back({curve[i].t, r.larger});
  }
  out.hazard = HazardCurve(std::move(points));
  if (disagreements > 0) {
    out.warnings.push_back(
        "supplied derivatives differ from centered differences by more than "
        "1e-4 at " + std::to_string(disagreements) + " point(s), largest " +
        fmt(worst) + " at t=" + fmt(worst_t) + "; supplied values used");
  }
  if (ambiguous > 0) {
    out.warnings.push_back(
        "both roots of the hazard quadratic are non-negative at " +
        std::to_string(ambiguous) + " of " + std::to_string(curve.size()) +
        " point(s); the larger root was used");
  }
  return out;
}

SurvivalCurve::SurvivalCurve(HazardCurve hazard, double t_start,
                             double sf_start)
    : hazard_(std::move(hazard)) {
  const auto& p = hazard_.points();
  if (p.size() < 2) {
    throw ValidationError("survival reconstruction needs two hazard points");
  }
  if (!(sf_start > 0.0 && sf_start <= 1.0)) {
    throw ValidationError("anchor survival must lie in (0, 1] (got " +
                          fmt(sf_start) + ")");
  }
  cumulative_.push_back(0.0);
  for (std::size_t i = 1; i < p.size(); ++i) {
    cumulative_.push_back(cumulative_.back() +
                          0.5 * (p[i].r + p[i - 1].r) * (p[i].t - p[i - 1].t));
  }
  anchor_ = cumulative(t_start);
  log_sf_start_ = std::log(sf_start);
}

double SurvivalCurve::lower() const { return hazard_.points().front().t; }
double SurvivalCurve::upper() const { return hazard_.points().back().t; }

double SurvivalCurve::cumulative(double t) const {
  const auto& p = hazard_.points();
  if (!(t >= p.front().t && t <= p.back().t)) {
    throw DomainError("t=" + fmt(t) + " lies outside the hazard grid [" +
                      fmt(p.front().t) + ", " + fmt(p.back().t) + "]");
  }
  auto it = std::upper_bound(p.begin(), p.end(), t,
                             [](double v, const HazardPoint& h) { return v < h.t; });
  std::size_t k = it == p.end() ? p.size() - 2
                                : static_cast<std::size_t>(it - p.begin()) - 1;
  const double h = p[k + 1].t - p[k].t;
  const double w = (t - p[k].t) / h;
  const double rt = p[k].r + w * (p[k + 1].r - p[k].r);
  return cumulative_[k] + 0.5 * (p[k].r + rt) * (t - p[k].t);
}

double SurvivalCurve::operator()(double t) const {
  return std::exp(log_sf_start_ - (cumulative(t) - anchor_));
}

SurvivalCurve reconstruct_survival(const HazardCurve& hazard, double t_start,
                                   double sf_start, double max_spacing) {
  const auto& p = hazard.points();
  for (std::size_t i = 1; i < p.size(); ++i) {
    if (p[i].t - p[i - 1].t > max_spacing) {
      throw ResolutionError("hazard grid gap " + fmt(p[i].t - p[i - 1].t) +
                            " at t=" + fmt(p[i - 1].t) +
                            " exceeds the maximum spacing " + fmt(max_spacing));
    }
  }
  return SurvivalCurve(hazard, t_start, sf_start);
}

double ConstancyOdeFamily::c() const {
  if (!(t0 > 0.0) || !(r0 > 0.0) || !std::isfinite(t0) || !std::isfinite(r0)) {
    throw ValidationError("constancy_ode: t0 and r0 must be positive finite "
                          "numbers");
  }
  return 2.0 / (t0 * r0) + 3.0 * std::log(t0);
}

double ConstancyOdeFamily::hazard(double t) const {
  const double a = c() - 3.0 * std::log(t);
  if (!(t > 0.0) || !(a > 0.0)) {
    throw DomainError("constancy_ode hazard is not positive at t=" + fmt(t));
  }
  return 2.0 / (t * a);
}

double ConstancyOdeFamily::window_upper() const { return std::exp(c() / 3.0); }

UnivariateDistribution constancy_ode_distribution(
    const ConstancyOdeFamily& family, double lower) {
  const double hi = family.window_upper();
  if (!(lower > 0.0 && lower < hi)) {
    throw ValidationError("constancy_ode: lower end must lie in (0, " +
                          fmt(hi) + ") (got " + fmt(lower) + ")");
  }
  return UnivariateDistribution(
      std::make_shared<ConstancyOdeModel>(family, lower));
}

ConstancyReport constancy_explorer(double pareto_shape, double pareto_scale,
                                   const std::vector<double>& grid,
                                   const MeasureOptions& opt) {
  for (double t : grid) {
    if (!(t >= pareto_scale)) {
      throw ValidationError("constancy grid point " + fmt(t) +
                            " lies below the Pareto scale " + fmt(pareto_scale));
    }
  }
  const UnivariateDistribution dist = pareto(pareto_shape, pareto_scale);
  ConstancyReport rep = explore(dist.describe(), dist, grid, opt);
  rep.reference = -pareto_shape / 4.0;
  double dev = 0.0;
  for (double v : rep.values) dev = std::max(dev, std::abs(v - *rep.reference));
  rep.max_deviation = dev;
  return rep;
}

ConstancyReport constancy_explorer(const ConstancyOdeFamily& family,
                                   const std::vector<double>& grid,
                                   const MeasureOptions& opt) {
  if (grid.empty()) throw ValidationError("constancy grid is empty");
  const double hi = family.window_upper();
  for (double t : grid) {
    if (!(t > 0.0 && t < hi)) {
      throw ValidationError("constancy grid point " + fmt(t) +
                            " lies outside the positivity window (0, " +
                            fmt(hi) + ")");
    }
  }
  const double lower = *std::min_element(grid.begin(), grid.end());
  const UnivariateDistribution dist = constancy_ode_distribution(family, lower);
  ConstancyReport rep = explore(dist.describe(), dist, grid, opt);
  rep.notes = "hazard is positive only below e^(C/3)=" + fmt(hi) +
              "; the law is restricted to [" + fmt(lower) + ", " + fmt(hi) +
              ") with survival 1 at the lower end, which leaves residual "
              "measures at grid points unchanged";
  return rep;
}

constexpr double kConstancyThreshold = 1e-6;

ClaimReport constancy_claim(const ConstancyReport& report) {
  ClaimReport rep;
  rep.claim_id = "constancy";
  rep.subject = report.family;
  const auto [mn, mx] =
      std::minmax_element(report.values.begin(), report.values.end());
  rep.lhs = *mx;
  rep.rhs = *mn;
  rep.gap = report.spread - kConstancyThreshold;
  rep.details.emplace_back("spread", report.spread);
  if (report.reference) rep.details.emplace_back("reference", *report.reference);
  if (report.max_deviation) {
    rep.details.emplace_back("max_deviation", *report.max_deviation);
  }
  for (std::size_t i = 0; i < report.grid.size(); ++i) {
    rep.details.emplace_back("t=" + fmt(report.grid[i]), report.values[i]);
  }
  rep.verdict = rep.gap > 0.0 ? Verdict::holds : Verdict::violated;
  rep.notes = "claim: weighted residual extropy is not constant in t";
  if (!report.notes.empty()) rep.notes += "; " + report.notes;
  return rep;
}

ClaimReport inversion_round_trip(const UnivariateDistribution& dist,
                                 const std::vector<double>& grid,
                                 const std::vector<CurvePoint>& curve) {
  ClaimReport rep;
  rep.claim_id = "inversion";
  rep.subject = dist.describe();
  try {
    std::vector<CurvePoint> points = curve;
    if (points.empty()) {
      for (double t : grid) {
        const DerivativeTriple d = weighted_residual_derivative(dist, t);
        points.push_back({t, d.value, d.numeric});
      }
    }
    if (points.size() < 2) {
      throw ValidationError("inversion needs at least two curve points");
    }
    const InversionResult inv = invert_weighted_residual(points);
    double hazard_err = 0.0;
    for (const HazardPoint& p : inv.hazard.points()) {
      hazard_err = std::max(hazard_err, std::abs(p.r - dist.hazard(p.t)));
    }
    const auto& hp = inv.hazard.points();
    const SurvivalCurve sf =
        reconstruct_survival(inv.hazard, hp.front().t, dist.sf(hp.front().t), kInf);
    double sf_err = 0.0;
    for (std::size_t i = 0; i < hp.size(); ++i) {
      sf_err = std::max(sf_err, std::abs(sf(hp[i].t) - dist.sf(hp[i].t)));
      if (i + 1 < hp.size()) {
        const double mid = 0.5 * (hp[i].t + hp[i + 1].t);
        sf_err = std::max(sf_err, std::abs(sf(mid) - dist.sf(mid)));
      }
    }
    rep.lhs = hazard_err;
    rep.rhs = sf_err;
    rep.gap = hazard_err;
    rep.details = {{"max_hazard_error", hazard_err},
                   {"max_survival_error", sf_err},
                   {"points", static_cast<double>(hp.size())}};
    for (const std::string& w : inv.warnings) {
      if (!rep.notes.empty()) rep.notes += "; ";
      rep.notes += w;
    }
    rep.verdict = hazard_err <= 1e-6 && sf_err <= 1e-4 ? Verdict::holds
                                                      : Verdict::violated;
  } catch (const NumericalError& e) {
    rep.notes = e.what();
  }
  return rep;
}

}  // namespace extropy
