#include "extropy/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <sstream>

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

double parse_number(std::string_view text, std::string_view what) {
  const std::string s(text);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size() || !std::isfinite(v)) {
    throw ValidationError("transform " + std::string(what) +
                          ": cannot parse number \"" + s + "\"");
  }
  return v;
}

class PushforwardModel final : public DistributionModel {
 public:
  PushforwardModel(UnivariateDistribution base, MonotoneTransform phi)
      : base_(std::move(base)), phi_(std::move(phi)) {
    const Support s = base_.support();
    const double a = phi_.forward(s.lower);
    const double b = phi_.forward(s.upper);
    support_ = increasing() ? Support{a, b} : Support{b, a};
  }

  std::string family() const override { return "pushforward"; }
  std::string describe() const override {
    return phi_.name + "(" + base_.describe() + ")";
  }
  Support support() const override { return support_; }

  double pdf(double y) const override {
    if (!(y > support_.lower && y < support_.upper)) return 0.0;
    const double x = phi_.inverse(y);
    const double f = base_.pdf(x);
    if (f == 0.0) return 0.0;
    return f / std::abs(phi_.derivative(x));
  }

  double cdf(double y) const override {
    if (y <= support_.lower) return 0.0;
    if (y >= support_.upper) return 1.0;
    const double x = phi_.inverse(y);
    return increasing() ? base_.cdf(x) : base_.sf(x);
  }

  double sf(double y) const override {
    if (y <= support_.lower) return 1.0;
    if (y >= support_.upper) return 0.0;
    const double x = phi_.inverse(y);
    return increasing() ? base_.sf(x) : base_.cdf(x);
  }

  double quantile(double p) const override {
    return phi_.forward(base_.quantile(increasing() ? p : 1.0 - p));
  }

  double sample(std::mt19937_64& rng) const override {
    return phi_.forward(base_.sample(rng));
  }

  double pdf_from_lower(double s) const override {
    const Support b = base_.support();
    const double end = increasing() ? b.lower : b.upper;
    if (!phi_.inverse_offset || !std::isfinite(end)) {
      return pdf(support_.lower + s);
    }
    if (increasing()) {
      const double dx = phi_.inverse_offset(b.lower, s);
      return scaled(base_.pdf_from_lower(dx), b.lower + dx);
    }
    const double dx = -phi_.inverse_offset(b.upper, s);
    return scaled(base_.pdf_from_upper(dx), b.upper - dx);
  }

  double pdf_from_upper(double s) const override {
    const Support b = base_.support();
    const double end = increasing() ? b.upper : b.lower;
    if (!phi_.inverse_offset || !std::isfinite(end)) {
      return pdf(support_.upper - s);
    }
    if (increasing()) {
      const double dx = -phi_.inverse_offset(b.upper, -s);
      return scaled(base_.pdf_from_upper(dx), b.upper - dx);
    }
    const double dx = phi_.inverse_offset(b.lower, -s);
    return scaled(base_.pdf_from_lower(dx), b.lower + dx);
  }

  std::vector<double> breakpoints() const override {
    std::vector<double> out;
    for (double b : base_.breakpoints()) out.push_back(phi_.forward(b));
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  bool increasing() const { return phi_.direction == Direction::increasing; }
  double scaled(double f, double x) const {
    return f == 0.0 ? 0.0 : f / std::abs(phi_.derivative(x));
  }

  UnivariateDistribution base_;
  MonotoneTransform phi_;
  Support support_;
};

// -1/(2 n²) ∫_lo^hi phi(x)/|phi'(x)| f(x)² dx.
MeasureValue x_domain_measure(const UnivariateDistribution& dist,
                              const MonotoneTransform& phi, double lo,
                              double hi, double normalizer,
                              const MeasureOptions& opt) {
  if (!(opt.tol > 0.0)) throw ValidationError("measure tolerance must be > 0");
  const Support s = dist.support();
  lo = std::max(lo, s.lower);
  hi = std::min(hi, s.upper);
  if (!(lo < hi)) return {0.0, Method::quadrature, 0.0, false};

  auto term = [&phi](double x, double f, bool on_edge) {
    if (f == 0.0) return 0.0;
    const double d = std::abs(phi.derivative(x));
    if (d == 0.0) {
      if (on_edge) return 0.0;
      throw TransformDegeneracyError("derivative of " + phi.name +
                                     " vanishes at x=" + fmt(x));
    }
    return phi.forward(x) * f * f / d;
  };

  quad::Integrand g;
  g.lower = lo;
  g.upper = hi;
  g.evaluator = [&dist, term](double x) { return term(x, dist.pdf(x), false); };
  g.singular_lower = lo == s.lower;
  g.singular_upper = hi == s.upper && std::isfinite(hi);
  if (g.singular_upper) {
    g.from_upper = [&dist, term, hi](double d) {
      const double x = hi - d;
      return term(x, dist.pdf_from_upper(d), x >= hi);
    };
  }
  for (double b : dist.breakpoints()) {
    if (b > lo && b < hi) g.breakpoints.push_back(b);
  }
  const double tol = opt.tol / 100.0;
  quad::Options options;
  options.abs_tol = tol * 2.0 * normalizer * normalizer;
  options.rel_tol = tol;
  const quad::QuadratureResult r = quad::integrate(g, options);
  const double k = 0.5 / (normalizer * normalizer);
  if (r.diverged) return {-kInf, Method::quadrature, 0.0, true};
  return {-k * r.value, Method::quadrature, k * r.abs_error_estimate, false};
}

}  // namespace

MonotoneTransform identity_transform() {
  return {"identity", [](double x) { return x; }, [](double y) { return y; },
          [](double) { return 1.0; }, Direction::increasing,
          [](double, double dy) { return dy; }};
}

MonotoneTransform scale_transform(double a) {
  if (!(a > 0.0) || !std::isfinite(a)) {
    throw ValidationError("scale: factor must be a positive finite number (got " +
                          fmt(a) + ")");
  }
  return {"scale:" + fmt(a), [a](double x) { return a * x; },
          [a](double y) { return y / a; }, [a](double) { return a; },
          Direction::increasing, [a](double, double dy) { return dy / a; }};
}

MonotoneTransform affine_transform(double a, double b) {
  if (!(a > 0.0) || !std::isfinite(a)) {
    throw ValidationError(
        "affine: slope must be a positive finite number (got " + fmt(a) + ")");
  }
  if (!std::isfinite(b)) {
    throw ValidationError("affine: shift must be finite (got " + fmt(b) + ")");
  }
  return {"affine:" + fmt(a) + "," + fmt(b),
          [a, b](double x) { return a * x + b; },
          [a, b](double y) { return (y - b) / a; }, [a](double) { return a; },
          Direction::increasing, [a](double, double dy) { return dy / a; }};
}

MonotoneTransform square_transform() {
  return {"square", [](double x) { return x * x; },
          [](double y) { return std::sqrt(y); },
          [](double x) { return 2.0 * x; }, Direction::increasing,
          [](double x, double dy) {
            return dy / (std::sqrt(x * x + dy) + std::abs(x));
          }};
}

MonotoneTransform exp_transform() {
  return {"exp", [](double x) { return std::exp(x); },
          [](double y) { return std::log(y); },
          [](double x) { return std::exp(x); }, Direction::increasing,
          [](double x, double dy) { return std::log1p(dy * std::exp(-x)); }};
}

MonotoneTransform negative_exp_transform() {
  return {"negative_exp", [](double x) { return std::exp(-x); },
          [](double y) { return -std::log(y); },
          [](double x) { return -std::exp(-x); }, Direction::decreasing,
          [](double x, double dy) { return -std::log1p(dy * std::exp(x)); }};
}

MonotoneTransform pit_transform(const UnivariateDistribution& dist) {
  const Support s = dist.support();
  return {"pit",
          [dist, s](double x) {
            if (x <= s.lower) return 0.0;
            if (x >= s.upper) return 1.0;
            return dist.cdf(x);
          },
          [dist](double y) { return dist.quantile(y); },
          [dist](double x) { return dist.pdf(x); }, Direction::increasing,
          {}};
}

MonotoneTransform parse_transform(std::string_view text,
                                  const UnivariateDistribution& base) {
  const std::size_t colon = text.find(':');
  const std::string_view head = text.substr(0, colon);
  const std::string_view args =
      colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);
  auto no_args = [&] {
    if (colon != std::string_view::npos) {
      throw ValidationError("transform \"" + std::string(head) +
                            "\" takes no arguments");
    }
  };
  if (head == "scale") {
    return scale_transform(parse_number(args, "scale"));
  }
  if (head == "affine") {
    const std::size_t comma = args.find(',');
    if (comma == std::string_view::npos) {
      throw ValidationError("transform affine needs \"affine:a,b\"");
    }
    return affine_transform(parse_number(args.substr(0, comma), "affine"),
                            parse_number(args.substr(comma + 1), "affine"));
  }
  if (head == "square") {
    no_args();
    return square_transform();
  }
  if (head == "exp") {
    no_args();
    return exp_transform();
  }
  if (head == "pit") {
    no_args();
    return pit_transform(base);
  }
  throw ValidationError("unknown transform \"" + std::string(text) +
                        "\"; valid transforms: scale:a, affine:a,b, square, "
                        "exp, pit");
}

void validate_transform(const UnivariateDistribution& dist,
                        const MonotoneTransform& phi) {
  if (!phi.forward || !phi.inverse || !phi.derivative) {
    throw ValidationError("transform " + phi.name + " is missing an evaluator");
  }
  const Support s = dist.support();
  const double a = phi.forward(s.lower);
  const double b = phi.forward(s.upper);
  if (!(std::min(a, b) >= 0.0)) {
    throw ValidationError("transform " + phi.name + " maps the support of " +
                          dist.describe() + " outside [0, inf)");
  }
  const bool up = phi.direction == Direction::increasing;
  if ((up && !(a <= b)) || (!up && !(a >= b))) {
    throw ValidationError("transform " + phi.name +
                          " contradicts its declared direction at the "
                          "support endpoints");
  }
  for (int i = 1; i <= 33; ++i) {
    const double x = dist.quantile(0.01 + 0.98 * (i - 1) / 32.0);
    const double d = phi.derivative(x);
    if (d == 0.0) {
      throw TransformDegeneracyError("derivative of " + phi.name +
                                     " vanishes at x=" + fmt(x));
    }
    if ((up && !(d > 0.0)) || (!up && !(d < 0.0))) {
      throw ValidationError("derivative of " + phi.name +
                            " has the wrong sign at x=" + fmt(x));
    }
    const double y = phi.forward(x);
    if (std::abs(phi.forward(phi.inverse(y)) - y) >
        1e-9 * std::max(1.0, std::abs(y))) {
      throw ValidationError("inverse of " + phi.name +
                            " does not round-trip at y=" + fmt(y));
    }
  }
}

UnivariateDistribution pushforward(const UnivariateDistribution& dist,
                                   const MonotoneTransform& phi) {
  validate_transform(dist, phi);
  return UnivariateDistribution(std::make_shared<PushforwardModel>(dist, phi));
}

MeasureValue transformed_weighted_extropy(const UnivariateDistribution& dist,
                                          const MonotoneTransform& phi,
                                          const MeasureOptions& opt) {
  validate_transform(dist, phi);
  const Support s = dist.support();
  return x_domain_measure(dist, phi, s.lower, s.upper, 1.0, opt);
}

LinearTransformMeasures linear_transform_extropy(
    const UnivariateDistribution& dist, double a, double b,
    const MeasureOptions& opt) {
  if (!(a > 0.0) || !std::isfinite(a)) {
    throw ValidationError("linear transform: a must be > 0 (got " + fmt(a) +
                          ")");
  }
  if (!(b >= 0.0) || !std::isfinite(b)) {
    throw ValidationError("linear transform: b must be >= 0 (got " + fmt(b) +
                          ")");
  }
  const MeasureValue j = extropy::extropy(dist, opt);
  const MeasureValue jw = weighted_extropy(dist, opt);
  LinearTransformMeasures out;
  out.extropy = {j.value / a, j.method, j.abs_error / a, j.diverged};
  const bool same = j.method == jw.method;
  out.weighted = {jw.value + (b / a) * j.value,
                  same ? jw.method : Method::quadrature,
                  jw.abs_error + (b / a) * j.abs_error,
                  jw.diverged || j.diverged};
  if (out.weighted.diverged) out.weighted.value = -kInf;
  return out;
}

TransformedConditional transformed_residual_past(
    const UnivariateDistribution& dist, const MonotoneTransform& phi, double t,
    const MeasureOptions& opt) {
  validate_transform(dist, phi);
  const Support s = dist.support();
  const double y_lo = std::min(phi.forward(s.lower), phi.forward(s.upper));
  const double y_hi = std::max(phi.forward(s.lower), phi.forward(s.upper));
  const bool in_image = t >= y_lo && t <= y_hi;
  const double x = in_image ? phi.inverse(t) : std::nan("");
  TransformedConditional out;
  if (!(x >= s.lower && x <= s.upper)) {
    const std::string msg = "inverse transform of t=" + fmt(t) +
                            " lies outside the support of " + dist.describe();
    out.residual.error = msg;
    out.past.error = msg;
    return out;
  }
  const bool up = phi.direction == Direction::increasing;
  // Y > t is X > x for increasing phi and X < x for decreasing phi.
  const double above = up ? dist.sf(x) : dist.cdf(x);
  auto side = [&](double mass, double lo, double hi, const char* what) {
    TransformOutcome o;
    if (!(mass >= kMinProbability)) {
      o.error = std::string(what) + " measure undefined at t=" + fmt(t) +
                ": conditioning probability " + fmt(mass) + " below 1e-12";
      return o;
    }
    o.value = x_domain_measure(dist, phi, lo, hi, mass, opt);
    return o;
  };
  if (up) {
    out.residual = side(above, x, s.upper, "residual");
    out.past = side(dist.cdf(x), s.lower, x, "past");
  } else {
    out.residual = side(above, s.lower, x, "residual");
    out.past = side(dist.sf(x), x, s.upper, "past");
  }
  return out;
}

}  // namespace extropy
