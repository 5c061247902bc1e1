#include "extropy/bivariate.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "extropy/errors.hpp"
#include "extropy/quadrature.hpp"
#include "extropy/special_functions.hpp"

namespace extropy {

struct BivariateDistribution::State {
  RegionKind kind = RegionKind::rectangle;
  std::string name;
  std::optional<UnivariateDistribution> x;
  std::optional<UnivariateDistribution> y;
  PlanarDensity planar;
  Rectangle rect;
  TriangleDensity triangle;
  double upper = 1.0;
  PlanarSampler sampler;
  std::optional<double> extropy;
  std::optional<double> weighted_extropy;
};

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(12);
  s << v;
  return s.str();
}

struct InnerDiverged {};

// ∬ w f² by integrating x for each fixed y, then integrating over y.
class Iterated {
 public:
  Iterated(const BivariateDistribution::State& s, bool weighted, double tol)
      : s_(s), weighted_(weighted) {
    inner_.abs_tol = 1e-3 * tol;
    inner_.rel_tol = 1e-3 * tol;
    outer_.abs_tol = 1e-2 * tol;
    outer_.rel_tol = 1e-2 * tol;
  }

  quad::QuadratureResult run() const {
    quad::Integrand g;
    switch (s_.kind) {
      case RegionKind::product: {
        const UnivariateDistribution& ym = *s_.y;
        const Support sy = ym.support();
        g.lower = sy.lower;
        g.upper = sy.upper;
        g.evaluator = [this, &ym](double y) {
          return weight(y) * slice_product(ym.pdf(y));
        };
        if (std::isfinite(sy.upper)) {
          const double hi = sy.upper;
          g.from_upper = [this, &ym, hi](double d) {
            return weight(hi - d) * slice_product(ym.pdf_from_upper(d));
          };
        }
        g.breakpoints = ym.breakpoints();
        break;
      }
      case RegionKind::triangle: {
        const double u = s_.upper;
        g.lower = 0.0;
        g.upper = u;
        g.evaluator = [this, u](double y) {
          return weight(y) * slice_triangle(y, u - y);
        };
        g.from_upper = [this, u](double d) {
          return weight(u - d) * slice_triangle(u - d, d);
        };
        break;
      }
      case RegionKind::rectangle:
        g.lower = s_.rect.y_lo;
        g.upper = s_.rect.y_hi;
        g.evaluator = [this](double y) { return weight(y) * slice_rect(y); };
        break;
    }
    g.singular_lower = true;
    g.singular_upper = std::isfinite(g.upper);
    return quad::integrate(g, outer_);
  }

 private:
  double weight(double v) const { return weighted_ ? v : 1.0; }

  double finish(const quad::Integrand& g) const {
    const quad::QuadratureResult r = quad::integrate(g, inner_);
    if (r.diverged) throw InnerDiverged{};
    return r.value;
  }

  double slice_product(double fy) const {
    if (fy == 0.0) return 0.0;
    const UnivariateDistribution& xm = *s_.x;
    const Support sx = xm.support();
    quad::Integrand g;
    g.lower = sx.lower;
    g.upper = sx.upper;
    g.evaluator = [this, &xm, fy](double x) {
      const double f = xm.pdf(x) * fy;
      return f == 0.0 ? 0.0 : weight(x) * f * f;
    };
    if (std::isfinite(sx.upper)) {
      const double hi = sx.upper;
      g.from_upper = [this, &xm, fy, hi](double d) {
        const double f = xm.pdf_from_upper(d) * fy;
        return f == 0.0 ? 0.0 : weight(hi - d) * f * f;
      };
    }
    g.singular_lower = true;
    g.singular_upper = std::isfinite(sx.upper);
    g.breakpoints = xm.breakpoints();
    return finish(g);
  }

  double slice_triangle(double y, double upper_gap) const {
    if (!(y > 0.0) || !(upper_gap > 0.0)) return 0.0;
    quad::Integrand g;
    g.lower = 0.0;
    g.upper = y;
    g.evaluator = [this, y, upper_gap](double x) {
      const double f = s_.triangle(x, y, y - x, upper_gap);
      return f == 0.0 ? 0.0 : weight(x) * f * f;
    };
    g.from_upper = [this, y, upper_gap](double d) {
      const double f = s_.triangle(y - d, y, d, upper_gap);
      return f == 0.0 ? 0.0 : weight(y - d) * f * f;
    };
    g.singular_lower = true;
    g.singular_upper = true;
    return finish(g);
  }

  double slice_rect(double y) const {
    quad::Integrand g;
    g.lower = s_.rect.x_lo;
    g.upper = s_.rect.x_hi;
    g.evaluator = [this, y](double x) {
      const double f = s_.planar(x, y);
      return f == 0.0 ? 0.0 : weight(x) * f * f;
    };
    g.singular_lower = true;
    g.singular_upper = true;
    return finish(g);
  }

  const BivariateDistribution::State& s_;
  bool weighted_;
  quad::Options inner_;
  quad::Options outer_;
};

bool non_negative_quadrant(const BivariateDistribution::State& s) {
  switch (s.kind) {
    case RegionKind::product:
      return s.x->support().lower >= 0.0 && s.y->support().lower >= 0.0;
    case RegionKind::triangle:
      return true;
    case RegionKind::rectangle:
      return s.rect.x_lo >= 0.0 && s.rect.y_lo >= 0.0;
  }
  return false;
}

MeasureValue evaluate(const BivariateDistribution& bd, bool weighted,
                      const MeasureOptions& opt) {
  if (!(opt.tol > 0.0)) throw ValidationError("measure tolerance must be > 0");
  if (weighted && !non_negative_quadrant(bd.state())) {
    throw ValidationError(
        "bivariate weighted extropy needs a support in the non-negative "
        "quadrant");
  }
  if (opt.policy == MethodPolicy::automatic) {
    const std::optional<double> cf = weighted
                                         ? bd.closed_form_weighted_extropy()
                                         : bd.closed_form_extropy();
    if (cf) return {*cf, Method::closed_form, 0.0, std::isinf(*cf)};
  }
  try {
    const quad::QuadratureResult r =
        Iterated(bd.state(), weighted, opt.tol).run();
    if (r.diverged) return {kInf, Method::quadrature, 0.0, true};
    return {0.25 * r.value, Method::quadrature, 0.25 * r.abs_error_estimate,
            false};
  } catch (const InnerDiverged&) {
    return {kInf, Method::quadrature, 0.0, true};
  }
}

void require_positive(const char* what, double v) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw ValidationError(std::string("bivariate_beta: ") + what +
                          " must be a positive finite number (got " + fmt(v) +
                          ")");
  }
}

}  // namespace

BivariateDistribution::BivariateDistribution(std::shared_ptr<const State> s)
    : state_(std::move(s)) {}

BivariateDistribution BivariateDistribution::product(UnivariateDistribution x,
                                                     UnivariateDistribution y) {
  auto s = std::make_shared<State>();
  s->kind = RegionKind::product;
  s->name = "product(" + x.describe() + ", " + y.describe() + ")";
  s->x = x;
  s->y = y;
  s->sampler = [x, y](std::mt19937_64& rng) {
    const double a = x.sample(rng);
    return std::make_pair(a, y.sample(rng));
  };
  return BivariateDistribution(std::move(s));
}

BivariateDistribution BivariateDistribution::on_rectangle(
    std::string name, PlanarDensity f, Rectangle region, PlanarSampler sampler) {
  if (!f) throw ValidationError("rectangle density must be callable");
  if (!(region.x_lo < region.x_hi) || !(region.y_lo < region.y_hi) ||
      !std::isfinite(region.x_lo) || !std::isfinite(region.x_hi) ||
      !std::isfinite(region.y_lo) || !std::isfinite(region.y_hi)) {
    throw ValidationError("rectangle region must be finite and non-empty");
  }
  auto s = std::make_shared<State>();
  s->kind = RegionKind::rectangle;
  s->name = std::move(name);
  s->planar = std::move(f);
  s->rect = region;
  s->sampler = std::move(sampler);
  return BivariateDistribution(std::move(s));
}

BivariateDistribution BivariateDistribution::on_triangle(
    std::string name, TriangleDensity f, double upper, PlanarSampler sampler) {
  if (!f) throw ValidationError("triangle density must be callable");
  if (!(upper > 0.0) || !std::isfinite(upper)) {
    throw ValidationError("triangle upper limit must be positive and finite");
  }
  auto s = std::make_shared<State>();
  s->kind = RegionKind::triangle;
  s->name = std::move(name);
  s->triangle = std::move(f);
  s->upper = upper;
  s->sampler = std::move(sampler);
  return BivariateDistribution(std::move(s));
}

RegionKind BivariateDistribution::region() const { return state_->kind; }

std::string BivariateDistribution::describe() const { return state_->name; }

double BivariateDistribution::pdf(double x, double y) const {
  const State& s = *state_;
  switch (s.kind) {
    case RegionKind::product:
      return s.x->pdf(x) * s.y->pdf(y);
    case RegionKind::triangle:
      if (!(x > 0.0 && x < y && y < s.upper)) return 0.0;
      return s.triangle(x, y, y - x, s.upper - y);
    case RegionKind::rectangle:
      if (x < s.rect.x_lo || x > s.rect.x_hi || y < s.rect.y_lo ||
          y > s.rect.y_hi) {
        return 0.0;
      }
      return s.planar(x, y);
  }
  return 0.0;
}

std::pair<double, double> BivariateDistribution::sample(
    std::mt19937_64& rng) const {
  if (!state_->sampler) {
    throw ValidationError(state_->name + " has no sampler");
  }
  return state_->sampler(rng);
}

const UnivariateDistribution& BivariateDistribution::x_marginal() const {
  if (!state_->x) throw ValidationError(state_->name + " is not a product");
  return *state_->x;
}

const UnivariateDistribution& BivariateDistribution::y_marginal() const {
  if (!state_->y) throw ValidationError(state_->name + " is not a product");
  return *state_->y;
}

std::optional<double> BivariateDistribution::closed_form_extropy() const {
  return state_->extropy;
}

std::optional<double> BivariateDistribution::closed_form_weighted_extropy()
    const {
  return state_->weighted_extropy;
}

BivariateDistribution bivariate_beta(double a, double b, double c) {
  require_positive("alpha", a);
  require_positive("beta", b);
  require_positive("gamma", c);
  const double log_norm = special::log_beta3(a, b, c);
  TriangleDensity f = [a, b, c, log_norm](double x, double /*y*/, double gap,
                                          double upper_gap) {
    if (!(x > 0.0 && gap > 0.0 && upper_gap > 0.0)) return 0.0;
    return std::exp((a - 1.0) * std::log(x) + (b - 1.0) * std::log(gap) +
                    (c - 1.0) * std::log(upper_gap) - log_norm);
  };
  PlanarSampler sampler = [a, b, c](std::mt19937_64& rng) {
    std::gamma_distribution<double> ga(a, 1.0);
    std::gamma_distribution<double> gb(b, 1.0);
    std::gamma_distribution<double> gc(c, 1.0);
    const double u = ga(rng);
    const double v = gb(rng);
    const double w = gc(rng);
    const double total = u + v + w;
    return std::make_pair(u / total, (u + v) / total);
  };
  std::ostringstream name;
  name.precision(12);
  name << "bivariate_beta(alpha=" << a << ", beta=" << b << ", gamma=" << c
       << ")";
  BivariateDistribution base =
      BivariateDistribution::on_triangle(name.str(), f, 1.0, sampler);

  auto s = std::make_shared<BivariateDistribution::State>(base.state());
  const double log_b2 = 2.0 * log_norm;
  if (a > 0.5 && b > 0.5 && c > 0.5) {
    s->extropy = std::exp(special::log_beta3(2 * a - 1, 2 * b - 1, 2 * c - 1) -
                          log_b2) /
                 4.0;
  } else {
    s->extropy = kInf;
  }
  if (b > 0.5 && c > 0.5) {
    const double first = std::exp(special::log_beta3(2 * a, 2 * b, 2 * c - 1) -
                                  log_b2);
    const double second = std::exp(
        special::log_beta3(2 * a + 1, 2 * b - 1, 2 * c - 1) - log_b2);
    s->weighted_extropy = (first + second) / 4.0;
  } else {
    s->weighted_extropy = kInf;
  }
  return BivariateDistribution(std::move(s));
}

BivariateDistribution make_bivariate(const BivariateSpec& spec) {
  if (spec.family == "bivariate_beta") {
    for (const auto& [key, value] : spec.params) {
      if (key != "alpha" && key != "beta" && key != "gamma") {
        throw ValidationError("bivariate_beta: unknown parameter \"" + key +
                              "\"; expected alpha, beta, gamma");
      }
    }
    auto need = [&](const char* key) {
      auto it = spec.params.find(key);
      if (it == spec.params.end()) {
        throw ValidationError(std::string("bivariate_beta: missing parameter ") +
                              key);
      }
      return it->second;
    };
    return bivariate_beta(need("alpha"), need("beta"), need("gamma"));
  }
  if (spec.family == "product") {
    if (!spec.x || !spec.y) {
      throw ValidationError("product: both \"x\" and \"y\" specs are required");
    }
    return BivariateDistribution::product(make_distribution(*spec.x),
                                          make_distribution(*spec.y));
  }
  throw ValidationError("unknown bivariate family \"" + spec.family +
                        "\"; valid families: bivariate_beta, product");
}

MeasureValue bivariate_extropy(const BivariateDistribution& bd,
                               const MeasureOptions& opt) {
  return evaluate(bd, false, opt);
}

MeasureValue bivariate_weighted_extropy(const BivariateDistribution& bd,
                                        const MeasureOptions& opt) {
  return evaluate(bd, true, opt);
}

std::vector<ClaimReport> independence_factorization_check(
    const UnivariateDistribution& x, const UnivariateDistribution& y) {
  MeasureOptions one;
  one.policy = MethodPolicy::quadrature;
  MeasureOptions two = bivariate_defaults();
  two.policy = MethodPolicy::quadrature;
  const BivariateDistribution joint = BivariateDistribution::product(x, y);

  std::vector<ClaimReport> out;
  for (const bool weighted : {false, true}) {
    ClaimReport rep;
    rep.claim_id = "independence_factorization";
    rep.subject = joint.describe() +
                  (weighted ? " weighted_extropy" : " extropy");
    const MeasureValue jx = weighted ? weighted_extropy(x, one)
                                     : extropy::extropy(x, one);
    const MeasureValue jy = weighted ? weighted_extropy(y, one)
                                     : extropy::extropy(y, one);
    rep.details = {{"x_measure", jx.value}, {"y_measure", jy.value}};
    if (jx.diverged || jy.diverged) {
      rep.lhs = kInf;
      rep.rhs = kInf;
      rep.notes = "a marginal measure diverged";
      out.push_back(rep);
      continue;
    }
    const MeasureValue j = weighted ? bivariate_weighted_extropy(joint, two)
                                    : bivariate_extropy(joint, two);
    rep.lhs = j.value;
    rep.rhs = jx.value * jy.value;
    if (j.diverged) {
      rep.notes = "joint measure diverged";
      out.push_back(rep);
      continue;
    }
    rep.gap = rep.lhs - rep.rhs;
    rep.verdict =
        std::abs(rep.gap) <= 1e-6 ? Verdict::holds : Verdict::violated;
    out.push_back(rep);
  }
  return out;
}

}  // namespace extropy
