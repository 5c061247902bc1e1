#include "extropy/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>
#include <string>

#include "extropy/errors.hpp"

namespace extropy::quad {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// 21-point Gauss-Kronrod rule (QUADPACK qk21). Odd indices of kXgk are the
// 10-point Gauss nodes.
constexpr std::array<double, 11> kXgk = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.0};
constexpr std::array<double, 11> kWgk = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077600271672481, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
constexpr std::array<double, 5> kWg = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

constexpr int kProbePoints = 13;
constexpr double kProbeDecades = 3.0;
constexpr double kExponentBand = 0.05;
constexpr int kGradingLevels = 30;
// Panels this narrow are frozen; past it a non-integrable endpoint would
// overflow before the error estimate settles.
constexpr double kMinPanelWidth = 1e-250;

struct Probe {
  EndpointStatus status;
  double sign = 1.0;
};

// Least-squares slope of log|v| against log(d) over a geometric mesh.
Probe fit_power_law(const RealFunction& value_at, double d_min, bool infinite) {
  Probe probe;
  probe.status.exponent = kNaN;
  std::vector<double> xs;
  std::vector<double> ys;
  int positive = 0;
  int negative = 0;
  for (int i = 0; i < kProbePoints; ++i) {
    const double d =
        d_min * std::pow(10.0, kProbeDecades * i / (kProbePoints - 1));
    const double v = value_at(d);
    if (std::isnan(v)) {
      probe.status.behavior = EndpointBehavior::inconclusive;
      return probe;
    }
    if (std::isinf(v)) {
      probe.status.behavior = EndpointBehavior::divergent;
      probe.status.exponent = infinite ? kInf : -kInf;
      probe.sign = v > 0 ? 1.0 : -1.0;
      return probe;
    }
    if (v == 0.0) continue;
    (v > 0 ? positive : negative)++;
    xs.push_back(std::log(d));
    ys.push_back(std::log(std::abs(v)));
  }
  if (positive > 0 && negative > 0) {
    probe.status.behavior = EndpointBehavior::inconclusive;
    return probe;
  }
  probe.sign = negative > 0 ? -1.0 : 1.0;
  if (xs.size() < 4) {
    // The integrand vanishes at the endpoint.
    probe.status.behavior = EndpointBehavior::convergent;
    probe.status.exponent = infinite ? -kInf : kInf;
    return probe;
  }
  const double n = static_cast<double>(xs.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  const double p = sxy / sxx;
  probe.status.exponent = p;
  const double lo = -1.0 - kExponentBand;
  const double hi = -1.0 + kExponentBand;
  if (!infinite) {
    probe.status.behavior = p > hi   ? EndpointBehavior::convergent
                            : p < lo ? EndpointBehavior::divergent
                                     : EndpointBehavior::inconclusive;
  } else {
    probe.status.behavior = p < lo   ? EndpointBehavior::convergent
                            : p > hi ? EndpointBehavior::divergent
                                     : EndpointBehavior::inconclusive;
  }
  return probe;
}

double local_scale(const Integrand& g) {
  const double width = g.upper - g.lower;
  return std::isfinite(width) ? std::min(1.0, width / 2.0) : 1.0;
}

Probe probe_lower(const Integrand& g) {
  if (std::isinf(g.lower)) {
    const double x0 = std::max(1.0, std::abs(g.upper)) * 1e4;
    return fit_power_law([&](double d) { return g.evaluator(-d); }, x0, true);
  }
  if (g.from_lower) {
    return fit_power_law(g.from_lower, local_scale(g) * 1e-10, false);
  }
  const double d_min =
      std::max(local_scale(g) * 1e-10, 1e3 * kEps * std::abs(g.lower));
  return fit_power_law([&](double d) { return g.evaluator(g.lower + d); },
                       d_min, false);
}

Probe probe_upper(const Integrand& g) {
  if (std::isinf(g.upper)) {
    const double x0 = std::max(1.0, std::abs(g.lower)) * 1e4;
    return fit_power_law([&](double d) { return g.evaluator(d); }, x0, true);
  }
  if (g.from_upper) {
    return fit_power_law(g.from_upper, local_scale(g) * 1e-10, false);
  }
  const double d_min =
      std::max(local_scale(g) * 1e-10, 1e3 * kEps * std::abs(g.upper));
  return fit_power_law([&](double d) { return g.evaluator(g.upper - d); },
                       d_min, false);
}

void validate(const Integrand& g) {
  if (!g.evaluator) throw ValidationError("integrand has no evaluator");
  if (std::isnan(g.lower) || std::isnan(g.upper) || !(g.lower < g.upper)) {
    std::ostringstream msg;
    msg << "integration limits must satisfy lower < upper (got " << g.lower
        << ", " << g.upper << ")";
    throw ValidationError(msg.str());
  }
}

// A finite interval in some working coordinate, with the map back to the
// integrand already folded into `w`.
struct Piece {
  RealFunction w;
  double a = 0.0;
  double b = 0.0;
  bool grade_a = false;
  bool grade_b = false;
  std::vector<double> breaks;
};

struct Panel {
  double a = 0.0;
  double b = 0.0;
  std::size_t piece = 0;
  double value = 0.0;
  double error = 0.0;
  double resabs = 0.0;
};

struct ByError {
  bool operator()(const Panel& l, const Panel& r) const {
    return l.error < r.error;
  }
};

Panel gauss_kronrod(const RealFunction& w, double a, double b,
                    std::size_t piece) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  std::array<double, 10> f1{};
  std::array<double, 10> f2{};
  const double fc = w(center);
  double resg = 0.0;
  double resk = fc * kWgk[10];
  double resabs = std::abs(resk);
  for (std::size_t j = 0; j < 10; ++j) {
    const double dx = half * kXgk[j];
    f1[j] = w(center - dx);
    f2[j] = w(center + dx);
    if (!std::isfinite(f1[j]) || !std::isfinite(f2[j]) || !std::isfinite(fc)) {
      std::ostringstream msg;
      msg << "integrand is not finite inside (" << a << ", " << b << ")";
      throw NumericalError(msg.str());
    }
    resk += kWgk[j] * (f1[j] + f2[j]);
    resabs += kWgk[j] * (std::abs(f1[j]) + std::abs(f2[j]));
    if (j % 2 == 1) resg += kWg[j / 2] * (f1[j] + f2[j]);
  }
  const double reskh = 0.5 * resk;
  double resasc = kWgk[10] * std::abs(fc - reskh);
  for (std::size_t j = 0; j < 10; ++j) {
    resasc += kWgk[j] * (std::abs(f1[j] - reskh) + std::abs(f2[j] - reskh));
  }
  Panel p;
  p.a = a;
  p.b = b;
  p.piece = piece;
  p.value = resk * half;
  resabs *= std::abs(half);
  resasc *= std::abs(half);
  double err = std::abs((resk - resg) * half);
  if (resasc != 0.0 && err != 0.0) {
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  }
  if (resabs > std::numeric_limits<double>::min() / (50.0 * kEps)) {
    err = std::max(50.0 * kEps * resabs, err);
  }
  p.error = err;
  p.resabs = resabs;
  return p;
}

std::vector<double> partition(const Piece& piece) {
  std::vector<double> pts{piece.a};
  for (double x : piece.breaks) {
    if (x > piece.a && x < piece.b) pts.push_back(x);
  }
  pts.push_back(piece.b);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  std::vector<double> graded;
  if (piece.grade_a) {
    const double len = pts[1] - pts[0];
    for (int k = kGradingLevels; k >= 1; --k) {
      graded.push_back(pts[0] + len * std::ldexp(1.0, -k));
    }
  }
  if (piece.grade_b) {
    const double len = pts[pts.size() - 1] - pts[pts.size() - 2];
    for (int k = 1; k <= kGradingLevels; ++k) {
      graded.push_back(pts.back() - len * std::ldexp(1.0, -k));
    }
  }
  pts.insert(pts.end(), graded.begin(), graded.end());
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

bool grows(const EndpointStatus& s) {
  return s.behavior != EndpointBehavior::not_examined &&
         !(s.exponent > -kExponentBand);
}

std::vector<Piece> build_pieces(const Integrand& g, bool grade_lower,
                                bool grade_upper) {
  std::vector<Piece> pieces;
  const RealFunction& f = g.evaluator;
  const bool lo_inf = std::isinf(g.lower);
  const bool hi_inf = std::isinf(g.upper);

  auto semi_infinite_up = [&](double a, bool grade) {
    Piece p;
    if (g.from_lower && std::isfinite(a) && a == g.lower) {
      p.w = [h = g.from_lower](double u) {
        const double om = 1.0 - u;
        const double d = u / om;
        if (!(om > 0.0) || !std::isfinite(d)) return 0.0;
        return h(d) / (om * om);
      };
    } else {
      p.w = [f, a](double u) {
        const double om = 1.0 - u;
        const double x = a + u / om;
        if (!(om > 0.0) || !std::isfinite(x)) return 0.0;
        return f(x) / (om * om);
      };
    }
    p.a = 0.0;
    p.b = 1.0;
    p.grade_a = grade;
    for (double bp : g.breakpoints) {
      if (bp > a) p.breaks.push_back((bp - a) / (1.0 + (bp - a)));
    }
    return p;
  };
  auto semi_infinite_down = [&](double b, bool grade) {
    Piece p;
    if (g.from_upper && std::isfinite(b) && b == g.upper) {
      p.w = [h = g.from_upper](double u) {
        const double om = 1.0 - u;
        const double d = u / om;
        if (!(om > 0.0) || !std::isfinite(d)) return 0.0;
        return h(d) / (om * om);
      };
    } else {
      p.w = [f, b](double u) {
        const double om = 1.0 - u;
        const double x = b - u / om;
        if (!(om > 0.0) || !std::isfinite(x)) return 0.0;
        return f(x) / (om * om);
      };
    }
    p.a = 0.0;
    p.b = 1.0;
    p.grade_a = grade;
    for (double bp : g.breakpoints) {
      if (bp < b) p.breaks.push_back((b - bp) / (1.0 + (b - bp)));
    }
    return p;
  };

  if (!lo_inf && !hi_inf) {
    const bool offset_lower = g.from_lower && grade_lower;
    const bool offset_upper = g.from_upper && grade_upper;
    if (offset_lower || offset_upper) {
      // Split at the midpoint; a half next to an offset evaluator is
      // integrated in distance from its endpoint.
      const double mid = g.lower + 0.5 * (g.upper - g.lower);
      Piece left;
      if (offset_lower) {
        left.w = g.from_lower;
        left.a = 0.0;
        left.b = mid - g.lower;
      } else {
        left.w = f;
        left.a = g.lower;
        left.b = mid;
      }
      left.grade_a = grade_lower;
      Piece right;
      if (offset_upper) {
        right.w = g.from_upper;
        right.a = 0.0;
        right.b = g.upper - mid;
        right.grade_a = true;
      } else {
        right.w = f;
        right.a = mid;
        right.b = g.upper;
        right.grade_b = grade_upper;
      }
      for (double bp : g.breakpoints) {
        if (bp > g.lower && bp < mid) {
          left.breaks.push_back(offset_lower ? bp - g.lower : bp);
        }
        if (bp > mid && bp < g.upper) {
          right.breaks.push_back(offset_upper ? g.upper - bp : bp);
        }
      }
      pieces.push_back(std::move(left));
      pieces.push_back(std::move(right));
    } else {
      Piece p;
      p.w = f;
      p.a = g.lower;
      p.b = g.upper;
      p.grade_a = grade_lower;
      p.grade_b = grade_upper;
      p.breaks = g.breakpoints;
      pieces.push_back(std::move(p));
    }
  } else if (!lo_inf) {
    pieces.push_back(semi_infinite_up(g.lower, grade_lower));
  } else if (!hi_inf) {
    pieces.push_back(semi_infinite_down(g.upper, grade_upper));
  } else {
    pieces.push_back(semi_infinite_down(0.0, false));
    pieces.push_back(semi_infinite_up(0.0, false));
  }
  return pieces;
}

}  // namespace

DivergenceReport detect_divergence(const Integrand& g) {
  validate(g);
  DivergenceReport report;
  if (g.singular_lower || std::isinf(g.lower)) {
    report.lower = probe_lower(g).status;
  }
  if (g.singular_upper || std::isinf(g.upper)) {
    report.upper = probe_upper(g).status;
  }
  return report;
}

QuadratureResult integrate(const Integrand& g, double tol) {
  Options options;
  options.abs_tol = tol;
  options.rel_tol = tol;
  return integrate(g, options);
}

QuadratureResult integrate(const Integrand& g, const Options& options) {
  validate(g);
  if (!(options.abs_tol > 0.0) || !(options.rel_tol >= 0.0)) {
    throw ValidationError("quadrature tolerance must be positive");
  }

  QuadratureResult result;
  Probe lower_probe;
  Probe upper_probe;
  if (g.singular_lower || std::isinf(g.lower)) {
    lower_probe = probe_lower(g);
    result.evaluations += kProbePoints;
  }
  if (g.singular_upper || std::isinf(g.upper)) {
    upper_probe = probe_upper(g);
    result.evaluations += kProbePoints;
  }
  const bool lower_div =
      lower_probe.status.behavior == EndpointBehavior::divergent;
  const bool upper_div =
      upper_probe.status.behavior == EndpointBehavior::divergent;
  if (lower_div || upper_div) {
    if (lower_div && upper_div && lower_probe.sign != upper_probe.sign) {
      throw NumericalError(
          "integral diverges to +inf and -inf at opposite endpoints");
    }
    const double sign = lower_div ? lower_probe.sign : upper_probe.sign;
    result.value = sign * kInf;
    result.abs_error_estimate = kInf;
    result.diverged = true;
    return result;
  }

  const bool grade_lower = !std::isinf(g.lower) && grows(lower_probe.status);
  const bool grade_upper = !std::isinf(g.upper) && grows(upper_probe.status);
  const std::vector<Piece> pieces = build_pieces(g, grade_lower, grade_upper);

  std::priority_queue<Panel, std::vector<Panel>, ByError> active;
  std::vector<Panel> frozen;
  double total = 0.0;
  double total_err = 0.0;
  double total_abs = 0.0;
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    const std::vector<double> pts = partition(pieces[i]);
    for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
      Panel p = gauss_kronrod(pieces[i].w, pts[k], pts[k + 1], i);
      result.evaluations += 21;
      total += p.value;
      total_err += p.error;
      total_abs += p.resabs;
      active.push(p);
    }
  }

  auto target = [&] {
    return std::max(options.abs_tol, options.rel_tol * std::abs(total));
  };

  while (total_err > target()) {
    if (active.empty()) {
      if (total_err <= 100.0 * kEps * total_abs) break;
      std::ostringstream msg;
      msg << "quadrature reached the resolution limit of double precision "
          << "with error estimate " << total_err << " above target "
          << target();
      throw BudgetExhaustedError(msg.str());
    }
    if (result.evaluations + 42 > options.max_evaluations) {
      std::ostringstream msg;
      msg << "quadrature exhausted its budget of " << options.max_evaluations
          << " evaluations with error estimate " << total_err
          << " above target " << target();
      throw BudgetExhaustedError(msg.str());
    }
    Panel worst = active.top();
    active.pop();
    const double mid = worst.a + 0.5 * (worst.b - worst.a);
    const bool splittable = worst.a < mid && mid < worst.b &&
                            (worst.b - worst.a) > 1e3 * kEps * std::abs(mid) &&
                            (worst.b - worst.a) > kMinPanelWidth;
    if (!splittable || worst.error <= 100.0 * kEps * worst.resabs) {
      frozen.push_back(worst);
      continue;
    }
    const RealFunction& w = pieces[worst.piece].w;
    Panel left = gauss_kronrod(w, worst.a, mid, worst.piece);
    Panel right = gauss_kronrod(w, mid, worst.b, worst.piece);
    result.evaluations += 42;
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    total_abs += left.resabs + right.resabs - worst.resabs;
    active.push(left);
    active.push(right);
  }

  // Re-sum to shed drift from the incremental updates.
  double value = 0.0;
  double err = 0.0;
  double compensation = 0.0;
  auto add = [&](const Panel& p) {
    const double y = p.value - compensation;
    const double t = value + y;
    compensation = (t - value) - y;
    value = t;
    err += p.error;
  };
  for (const Panel& p : frozen) add(p);
  while (!active.empty()) {
    add(active.top());
    active.pop();
  }
  result.value = value;
  result.abs_error_estimate = err;
  return result;
}

Derivative differentiate(const RealFunction& h, double t, double scale) {
  if (!(scale > 0.0) || !std::isfinite(scale) || !std::isfinite(t)) {
    throw ValidationError("differentiate requires finite t and scale > 0");
  }
  constexpr int kTable = 10;
  constexpr double kShrink = 1.4;
  constexpr double kShrink2 = kShrink * kShrink;
  constexpr double kSafe = 2.0;
  std::array<std::array<double, kTable>, kTable> a{};
  double step = scale;
  a[0][0] = (h(t + step) - h(t - step)) / (2.0 * step);
  Derivative best{a[0][0], std::numeric_limits<double>::max()};
  for (int i = 1; i < kTable; ++i) {
    step /= kShrink;
    a[0][i] = (h(t + step) - h(t - step)) / (2.0 * step);
    double fac = kShrink2;
    for (int j = 1; j <= i; ++j) {
      a[j][i] = (a[j - 1][i] * fac - a[j - 1][i - 1]) / (fac - 1.0);
      fac *= kShrink2;
      const double errt = std::max(std::abs(a[j][i] - a[j - 1][i]),
                                   std::abs(a[j][i] - a[j - 1][i - 1]));
      if (errt <= best.error_estimate) {
        best.error_estimate = errt;
        best.value = a[j][i];
      }
    }
    if (std::abs(a[i][i] - a[i - 1][i - 1]) >= kSafe * best.error_estimate) {
      break;
    }
  }
  return best;
}

}  // namespace extropy::quad
