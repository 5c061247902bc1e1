#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "extropy/bivariate.hpp"
#include "extropy/claims.hpp"
#include "extropy/distributions.hpp"
#include "extropy/errors.hpp"
#include "extropy/measures.hpp"
#include "extropy/transforms.hpp"
#include "extropy_cli/cli.hpp"
#include "extropy_cli/spec_io.hpp"
#include "extropy_cli/table.hpp"

namespace extropy_cli {

namespace ex = extropy;

namespace {

struct RunConfig {
  std::string command;
  std::vector<std::string> dists;
  std::vector<std::string> measures;
  std::vector<double> ts;
  std::string grid;
  std::vector<std::string> claims;
  std::optional<double> tol;
  std::uint64_t seed = 1;
  std::string format = "json";
  std::string out;
  bool strict = false;
  std::string method = "auto";
  std::vector<std::string> transforms;
  std::int64_t samples = 100000;
  std::optional<double> horizon;
  std::string curve;
};

const std::vector<std::string> kClaimIds = {
    "decomposition",   "residual_bound", "past_bound",
    "lemma1_residual", "lemma1_past",    "sum_bound",
    "independence_factorization", "constancy", "inversion",
};

struct Dist {
  ParsedSpec spec;
  std::optional<ex::UnivariateDistribution> uni;
  std::optional<ex::BivariateDistribution> bi;
  std::string label;
};

std::string format_double(double v) {
  std::ostringstream ss;
  ss << v;
  return ss.str();
}

std::vector<Dist> load_dists(const RunConfig& c) {
  if (c.dists.empty()) throw ex::ValidationError("--dist is required");
  std::vector<Dist> out;
  for (const auto& arg : c.dists) {
    Dist d;
    d.spec = parse_spec(load_spec_text(arg));
    switch (d.spec.kind) {
      case SpecKind::univariate:
        d.uni = ex::make_distribution(*d.spec.univariate);
        d.label = d.uni->describe();
        break;
      case SpecKind::bivariate:
        d.bi = ex::make_bivariate(*d.spec.bivariate);
        d.label = d.bi->describe();
        break;
      case SpecKind::constancy_ode:
        d.label = "constancy_ode(t0=" + format_double(d.spec.ode->t0) +
                  ", r0=" + format_double(d.spec.ode->r0) + ")";
        break;
    }
    out.push_back(std::move(d));
  }
  return out;
}

const ex::UnivariateDistribution& require_univariate(const Dist& d,
                                                     const std::string& cmd) {
  if (!d.uni) {
    throw ex::ValidationError(cmd + " needs a univariate distribution; got " +
                              d.label);
  }
  return *d.uni;
}

ex::MeasureOptions options(const RunConfig& c, bool bivariate) {
  ex::MeasureOptions o = bivariate ? ex::bivariate_defaults() : ex::MeasureOptions{};
  if (c.tol) o.tol = *c.tol;
  o.policy = c.method == "quadrature" ? ex::MethodPolicy::quadrature
                                      : ex::MethodPolicy::automatic;
  return o;
}

// --t values merged with --grid, sorted and deduplicated.
std::vector<double> t_values(const RunConfig& c) {
  std::vector<double> ts = c.ts;
  if (!c.grid.empty()) {
    const auto g = parse_grid(c.grid);
    ts.insert(ts.end(), g.begin(), g.end());
  }
  for (double t : ts) {
    if (!std::isfinite(t)) throw ex::ValidationError("t values must be finite");
  }
  std::sort(ts.begin(), ts.end());
  ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
  return ts;
}

std::vector<ex::MeasureId> measure_ids(const RunConfig& c) {
  if (c.measures.empty()) throw ex::ValidationError("--measure is required");
  std::vector<ex::MeasureId> ids;
  for (const auto& m : c.measures) ids.push_back(ex::parse_measure_id(m));
  return ids;
}

// The joint measures understood by bivariate and mc.
std::vector<std::string> joint_measure_names(const RunConfig& c) {
  std::vector<std::string> names = c.measures;
  if (names.empty()) names = {"extropy", "weighted_extropy"};
  for (const auto& n : names) {
    if (n != "extropy" && n != "weighted_extropy") {
      throw ex::ValidationError("unsupported measure \"" + n +
                                "\" here; valid: extropy, weighted_extropy");
    }
  }
  return names;
}

Cell num(double v) { return v; }

Cell opt_num(std::optional<double> v) {
  if (v) return *v;
  return std::monostate{};
}

Cell text(std::string s) { return s; }

void add_value_cells(std::vector<Cell>& row, const ex::MeasureValue& v) {
  row.push_back(num(v.value));
  row.push_back(num(v.abs_error));
  row.push_back(text(std::string(ex::to_string(v.method))));
  row.push_back(v.diverged);
}

Document cmd_measure(const RunConfig& c) {
  Document doc{"measure",
               {{"dist", "measure", "t", "value", "error", "method", "diverged"}, {}},
               std::nullopt,
               {}};
  const auto dists = load_dists(c);
  const auto ids = measure_ids(c);
  const auto ts = t_values(c);
  const auto opt = options(c, false);
  for (const auto& d : dists) {
    const auto& dist = require_univariate(d, "measure");
    for (auto id : ids) {
      const std::string name(ex::to_string(id));
      if (!ex::is_time_indexed(id)) {
        std::vector<Cell> row{text(d.label), text(name), std::monostate{}};
        add_value_cells(row, ex::measure(dist, id, std::nullopt, opt));
        doc.table.rows.push_back(std::move(row));
        continue;
      }
      if (ts.empty()) {
        throw ex::ValidationError(name + " needs --t or --grid");
      }
      for (double t : ts) {
        std::vector<Cell> row{text(d.label), text(name), num(t)};
        add_value_cells(row, ex::measure(dist, id, t, opt));
        doc.table.rows.push_back(std::move(row));
      }
    }
  }
  return doc;
}

Document cmd_curve(const RunConfig& c) {
  Document doc{"curve",
               {{"dist", "measure", "t", "value", "error", "method", "diverged",
                 "message"},
                {}},
               std::nullopt,
               {}};
  const auto dists = load_dists(c);
  const auto ids = measure_ids(c);
  for (auto id : ids) {
    if (!ex::is_time_indexed(id)) {
      throw ex::ValidationError("curve needs a time-indexed measure; \"" +
                                std::string(ex::to_string(id)) + "\" is not");
    }
  }
  const auto opt = options(c, false);
  for (const auto& d : dists) {
    const auto& dist = require_univariate(d, "curve");
    auto ts = t_values(c);
    if (ts.empty()) ts = ex::default_t_grid(dist);
    for (auto id : ids) {
      for (double t : ts) {
        std::vector<Cell> row{text(d.label), text(std::string(ex::to_string(id))),
                              num(t)};
        try {
          add_value_cells(row, ex::measure(dist, id, t, opt));
          row.push_back(std::monostate{});
        } catch (const ex::NumericalError& e) {
          const double nan = std::nan("");
          row.insert(row.end(), {num(nan), num(nan), std::monostate{}, false,
                                 text(std::string("error: ") + e.what())});
        }
        doc.table.rows.push_back(std::move(row));
      }
    }
  }
  return doc;
}

Document cmd_bivariate(const RunConfig& c) {
  Document doc{"bivariate",
               {{"dist", "measure", "value", "error", "method", "diverged"}, {}},
               std::nullopt,
               {}};
  const auto dists = load_dists(c);
  const auto names = joint_measure_names(c);
  const auto opt = options(c, true);
  for (const auto& d : dists) {
    if (!d.bi) {
      throw ex::ValidationError("bivariate needs a bivariate_beta or product spec; got " +
                                d.label);
    }
    for (const auto& n : names) {
      const ex::MeasureValue v = n == "extropy" ? ex::bivariate_extropy(*d.bi, opt)
                                                : ex::bivariate_weighted_extropy(*d.bi, opt);
      std::vector<Cell> row{text(d.label), text(n)};
      add_value_cells(row, v);
      doc.table.rows.push_back(std::move(row));
    }
  }
  return doc;
}

// (a, b) for "scale:a" and "affine:a,b"; nullopt for other transforms.
std::optional<std::pair<double, double>> linear_coefficients(const std::string& spec) {
  if (spec.rfind("scale:", 0) == 0) return std::make_pair(std::stod(spec.substr(6)), 0.0);
  if (spec.rfind("affine:", 0) == 0) {
    const std::string rest = spec.substr(7);
    const auto comma = rest.find(',');
    return std::make_pair(std::stod(rest.substr(0, comma)),
                          std::stod(rest.substr(comma + 1)));
  }
  return std::nullopt;
}

Document cmd_transform(const RunConfig& c) {
  Document doc{"transform",
               {{"dist", "transform", "quantity", "t", "value", "error", "method",
                 "diverged", "message"},
                {}},
               std::nullopt,
               {}};
  if (c.transforms.empty()) throw ex::ValidationError("--transform is required");
  const auto dists = load_dists(c);
  const auto ts = t_values(c);
  const auto opt = options(c, false);
  for (const auto& d : dists) {
    const auto& dist = require_univariate(d, "transform");
    for (const auto& spec : c.transforms) {
      const ex::MonotoneTransform phi = ex::parse_transform(spec, dist);
      ex::validate_transform(dist, phi);
      const ex::UnivariateDistribution image = ex::pushforward(dist, phi);
      auto add = [&](const std::string& quantity, Cell t, const ex::MeasureValue& v) {
        std::vector<Cell> row{text(d.label), text(spec), text(quantity), std::move(t)};
        add_value_cells(row, v);
        row.push_back(std::monostate{});
        doc.table.rows.push_back(std::move(row));
      };
      add("extropy", std::monostate{}, ex::extropy(image, opt));
      add("weighted_extropy_x_domain", std::monostate{},
          ex::transformed_weighted_extropy(dist, phi, opt));
      add("weighted_extropy_pushforward", std::monostate{},
          ex::weighted_extropy(image, opt));
      if (const auto ab = linear_coefficients(spec)) {
        const auto lin = ex::linear_transform_extropy(dist, ab->first, ab->second, opt);
        add("extropy_linear", std::monostate{}, lin.extropy);
        add("weighted_extropy_linear", std::monostate{}, lin.weighted);
      }
      for (double t : ts) {
        const auto tr = ex::transformed_residual_past(dist, phi, t, opt);
        const std::pair<const char*, const ex::TransformOutcome*> sides[] = {
            {"weighted_residual_extropy", &tr.residual},
            {"weighted_past_extropy", &tr.past}};
        for (const auto& [quantity, outcome] : sides) {
          if (outcome->value) {
            add(quantity, num(t), *outcome->value);
          } else {
            const double nan = std::nan("");
            doc.table.rows.push_back({text(d.label), text(spec), text(quantity), num(t),
                                      num(nan), num(nan), std::monostate{}, false,
                                      text("error: " + outcome->error)});
          }
        }
      }
    }
  }
  return doc;
}

// Runs one claim, turning a numerical failure into an indeterminate row.
ex::ClaimReport guarded(const std::string& id, const std::string& subject,
                        const std::function<ex::ClaimReport()>& f) {
  try {
    return f();
  } catch (const ex::NumericalError& e) {
    ex::ClaimReport r;
    r.claim_id = id;
    r.subject = subject;
    r.lhs = r.rhs = r.gap = std::nan("");
    r.verdict = ex::Verdict::indeterminate;
    r.notes = std::string("error: ") + e.what();
    return r;
  }
}

double default_horizon(const ex::UnivariateDistribution& dist, double t) {
  const ex::Support s = dist.support();
  double h = std::isfinite(s.upper) ? s.upper : dist.quantile(0.999);
  if (!(h > t)) h = t > 0.0 ? 2.0 * t : t + 1.0;
  return h;
}

std::vector<double> ode_default_grid(const ex::ConstancyOdeFamily& f) {
  const double w = f.window_upper();
  std::vector<double> g;
  for (int i = 0; i < 10; ++i) g.push_back(w * (0.1 + 0.8 * i / 9.0));
  return g;
}

std::vector<double> inversion_default_grid(const ex::UnivariateDistribution& dist) {
  const double lo = dist.quantile(0.05);
  const double hi = dist.quantile(0.95);
  std::vector<double> g;
  for (int i = 0; i < 200; ++i) g.push_back(lo + (hi - lo) * i / 199.0);
  return g;
}

Document cmd_claims(const RunConfig& c, std::vector<std::string>& claim_ids) {
  Document doc{"claims",
               {{"claim_id", "subject", "t", "lhs", "rhs", "gap", "verdict", "notes",
                 "details"},
                {}},
               Summary{},
               {}};
  claim_ids = c.claims.empty() ? kClaimIds : c.claims;
  for (const auto& id : claim_ids) {
    if (std::find(kClaimIds.begin(), kClaimIds.end(), id) == kClaimIds.end()) {
      std::string valid;
      for (const auto& k : kClaimIds) valid += valid.empty() ? k : ", " + k;
      throw ex::ValidationError("unknown claim id \"" + id + "\"; valid ids: " + valid);
    }
  }
  auto wants = [&](const char* id) {
    return std::find(claim_ids.begin(), claim_ids.end(), id) != claim_ids.end();
  };

  const auto dists = load_dists(c);
  const auto user_ts = t_values(c);
  const auto opt = options(c, false);

  auto emit = [&](const ex::ClaimReport& r, std::optional<double> t) {
    doc.table.rows.push_back({text(r.claim_id), text(r.subject), opt_num(t), num(r.lhs),
                              num(r.rhs), num(r.gap),
                              text(std::string(ex::to_string(r.verdict))), text(r.notes),
                              Details{r.details}});
    switch (r.verdict) {
      case ex::Verdict::holds: ++doc.summary->holds; break;
      case ex::Verdict::violated: ++doc.summary->violated; break;
      case ex::Verdict::indeterminate: ++doc.summary->indeterminate; break;
    }
  };

  std::vector<const Dist*> uni;
  for (const auto& d : dists) {
    if (d.uni) {
      uni.push_back(&d);
    } else if (d.spec.kind == SpecKind::bivariate) {
      doc.warnings.push_back("skipped " + d.label + ": claims take univariate specs");
    }
  }

  const std::pair<const char*,
                  std::function<ex::ClaimReport(const ex::UnivariateDistribution&, double)>>
      timed[] = {
          {"decomposition",
           [&](const auto& x, double t) { return ex::decomposition_check(x, t, opt); }},
          {"residual_bound",
           [&](const auto& x, double t) { return ex::residual_bound_check(x, t, opt); }},
          {"past_bound",
           [&](const auto& x, double t) {
             return ex::past_bound_check(x, t, c.horizon ? *c.horizon : default_horizon(x, t),
                                         opt);
           }},
          {"lemma1_residual",
           [](const auto& x, double t) { return ex::derivative_residual_check(x, t); }},
          {"lemma1_past", [](const auto& x, double t) { return ex::derivative_past_check(x, t); }},
      };
  for (const auto& [id, check] : timed) {
    if (!wants(id)) continue;
    for (const Dist* d : uni) {
      const auto ts = user_ts.empty() ? ex::default_t_grid(*d->uni, 10) : user_ts;
      for (double t : ts) {
        const std::string subject = d->label + " t=" + format_double(t);
        emit(guarded(id, subject, [&] { return check(*d->uni, t); }), t);
      }
    }
  }

  if (wants("sum_bound") || wants("independence_factorization")) {
    std::vector<std::pair<const Dist*, const Dist*>> pairs;
    if (uni.size() == 1) {
      pairs.emplace_back(uni[0], uni[0]);
    } else if (uni.size() % 2 == 0) {
      for (std::size_t i = 0; i < uni.size(); i += 2) pairs.emplace_back(uni[i], uni[i + 1]);
    } else {
      throw ex::ValidationError(
          "pair claims take one spec (an iid pair) or an even number of specs");
    }
    for (const auto& [x, y] : pairs) {
      const std::string subject = x->label + " , " + y->label;
      if (wants("sum_bound")) {
        emit(guarded("sum_bound", subject,
                     [&] { return ex::sum_bound_check(*x->uni, *y->uni); }),
             std::nullopt);
      }
      if (wants("independence_factorization")) {
        try {
          for (const auto& r : ex::independence_factorization_check(*x->uni, *y->uni)) {
            emit(r, std::nullopt);
          }
        } catch (const ex::NumericalError& e) {
          emit(guarded("independence_factorization", subject,
                       [&]() -> ex::ClaimReport { throw e; }),
               std::nullopt);
        }
      }
    }
  }

  if (wants("constancy")) {
    for (const auto& d : dists) {
      std::optional<ex::ConstancyReport> rep;
      try {
        if (d.spec.kind == SpecKind::constancy_ode) {
          const auto grid = user_ts.empty() ? ode_default_grid(*d.spec.ode) : user_ts;
          rep = ex::constancy_explorer(*d.spec.ode, grid, opt);
        } else if (d.uni && d.uni->family() == "pareto") {
          const auto& p = d.spec.univariate->params;
          const auto grid = user_ts.empty() ? ex::default_t_grid(*d.uni, 10) : user_ts;
          rep = ex::constancy_explorer(p.at("k"), p.at("sigma"), grid, opt);
        } else if (d.spec.kind != SpecKind::bivariate) {
          doc.warnings.push_back("constancy skipped for " + d.label +
                                 ": needs a pareto or constancy_ode spec");
          continue;
        } else {
          continue;
        }
      } catch (const ex::NumericalError& e) {
        emit(guarded("constancy", d.label, [&]() -> ex::ClaimReport { throw e; }),
             std::nullopt);
        continue;
      }
      emit(ex::constancy_claim(*rep), std::nullopt);
    }
  } else {
    for (const auto& d : dists) {
      if (d.spec.kind == SpecKind::constancy_ode) {
        doc.warnings.push_back("skipped " + d.label + ": only the constancy claim takes it");
      }
    }
  }

  if (wants("inversion")) {
    std::vector<ex::CurvePoint> curve;
    if (!c.curve.empty()) {
      if (uni.size() != 1) {
        throw ex::ValidationError("--curve needs exactly one univariate --dist");
      }
      curve = load_curve(c.curve);
    }
    for (const Dist* d : uni) {
      const auto grid = !curve.empty()      ? std::vector<double>{}
                        : user_ts.empty()   ? inversion_default_grid(*d->uni)
                                            : user_ts;
      emit(guarded("inversion", d->label,
                   [&] { return ex::inversion_round_trip(*d->uni, grid, curve); }),
           std::nullopt);
    }
  }
  return doc;
}

Document cmd_mc(const RunConfig& c) {
  Document doc{"mc",
               {{"dist", "measure", "samples", "seed", "estimate", "std_error",
                 "reference", "z", "within_4se", "note"},
                {}},
               std::nullopt,
               {}};
  if (c.samples < 2) throw ex::ValidationError("--samples must be at least 2");
  const auto dists = load_dists(c);
  const auto names = joint_measure_names(c);
  for (const auto& d : dists) {
    if (!d.uni && !d.bi) {
      throw ex::ValidationError("mc needs a univariate or bivariate spec; got " + d.label);
    }
    auto ref_opt = options(c, d.bi.has_value());
    ref_opt.policy = ex::MethodPolicy::quadrature;
    for (const auto& n : names) {
      const bool weighted = n == "weighted_extropy";
      ex::MeasureValue ref;
      if (d.uni) {
        ref = weighted ? ex::weighted_extropy(*d.uni, ref_opt) : ex::extropy(*d.uni, ref_opt);
      } else {
        ref = weighted ? ex::bivariate_weighted_extropy(*d.bi, ref_opt)
                       : ex::bivariate_extropy(*d.bi, ref_opt);
      }
      std::vector<Cell> row{text(d.label), text(n), c.samples,
                            static_cast<std::int64_t>(c.seed)};
      if (ref.diverged) {
        const double nan = std::nan("");
        row.insert(row.end(), {num(nan), num(nan), num(ref.value), num(nan),
                               std::monostate{},
                               text("reference diverges; skipped")});
        doc.table.rows.push_back(std::move(row));
        continue;
      }
      // Welford running mean and variance of the per-sample score.
      std::mt19937_64 rng(c.seed);
      double mean = 0.0;
      double m2 = 0.0;
      for (std::int64_t i = 0; i < c.samples; ++i) {
        double g;
        if (d.uni) {
          const double x = d.uni->sample(rng);
          g = d.uni->pdf(x) * (weighted ? x : 1.0);
        } else {
          const auto [x, y] = d.bi->sample(rng);
          g = d.bi->pdf(x, y) * (weighted ? x * y : 1.0);
        }
        const double delta = g - mean;
        mean += delta / static_cast<double>(i + 1);
        m2 += delta * (g - mean);
      }
      const double scale = d.uni ? -0.5 : 0.25;
      const double n_samples = static_cast<double>(c.samples);
      const double estimate = scale * mean;
      const double se = std::abs(scale) * std::sqrt(m2 / (n_samples - 1.0) / n_samples);
      // A constant score has no sampling error; agreement is then judged
      // against the reference's own tolerance.
      const double diff = estimate - ref.value;
      const double z = se > 0.0                        ? diff / se
                       : std::abs(diff) <= ref_opt.tol ? 0.0
                                                       : std::copysign(INFINITY, diff);
      row.insert(row.end(), {num(estimate), num(se), num(ref.value), num(z),
                             std::abs(z) <= 4.0, std::monostate{}});
      doc.table.rows.push_back(std::move(row));
    }
  }
  return doc;
}

void add_common(CLI::App* sub, RunConfig& c) {
  sub->add_option("--dist", c.dists, "Distribution spec: a JSON file or inline JSON");
  sub->add_option("--tol", c.tol, "Accuracy of reported values (>= 1e-12)");
  sub->add_option("--format", c.format, "Output format")
      ->check(CLI::IsMember({"json", "csv"}));
  sub->add_option("--out", c.out, "Write the table to this file");
}

void add_method(CLI::App* sub, RunConfig& c) {
  sub->add_option("--method", c.method, "auto uses closed forms where known")
      ->check(CLI::IsMember({"auto", "quadrature"}));
}

void add_t(CLI::App* sub, RunConfig& c) {
  sub->add_option("--t", c.ts, "Time point(s), comma separated")->delimiter(',');
  sub->add_option("--grid", c.grid, "lo:hi:n or geometric:lo:hi:n");
}

void add_measure(CLI::App* sub, RunConfig& c) {
  sub->add_option("--measure", c.measures, "Measure id(s), comma separated")
      ->delimiter(',');
}

void write_output(const RunConfig& c, const std::string& text, std::ostream& out) {
  if (c.out.empty()) {
    out << text;
    return;
  }
  std::ofstream f(c.out, std::ios::binary);
  if (!f) throw ex::ValidationError("cannot write \"" + c.out + "\"");
  f << text;
  if (!f) throw ex::ValidationError("failed writing \"" + c.out + "\"");
}

int fail(std::ostream& out, std::ostream& err, const char* kind, const std::string& msg,
         int code) {
  out << render_error(kind, msg);
  err << "extropy: " << msg << "\n";
  return code;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig c;
  CLI::App app{"Extropy measures, curves, claim checks and Monte-Carlo cross-checks",
               "extropy"};
  app.require_subcommand(1, 1);

  auto* measure = app.add_subcommand("measure", "Evaluate measures of one or more laws");
  add_common(measure, c);
  add_measure(measure, c);
  add_t(measure, c);
  add_method(measure, c);

  auto* curve = app.add_subcommand("curve", "Tabulate a time-indexed measure over t");
  add_common(curve, c);
  add_measure(curve, c);
  add_t(curve, c);
  add_method(curve, c);

  auto* bivariate = app.add_subcommand("bivariate", "Joint extropy and weighted extropy");
  add_common(bivariate, c);
  add_measure(bivariate, c);
  add_method(bivariate, c);

  auto* transform = app.add_subcommand("transform", "Measures of monotone transforms");
  add_common(transform, c);
  add_t(transform, c);
  add_method(transform, c);
  transform->add_option("--transform", c.transforms,
                        "scale:a, affine:a,b, square, exp or pit (repeatable)");

  auto* claims = app.add_subcommand("claims", "Check identities and inequalities");
  add_common(claims, c);
  add_t(claims, c);
  add_method(claims, c);
  claims->add_option("--claims", c.claims, "Claim id(s), comma separated")->delimiter(',');
  claims->add_option("--horizon", c.horizon, "Upper end T for past_bound");
  claims->add_option("--curve", c.curve, "Tabulated curve for the inversion claim");
  claims->add_flag("--strict", c.strict, "Exit 4 when any claim is violated");

  auto* mc = app.add_subcommand("mc", "Monte-Carlo estimates against quadrature");
  add_common(mc, c);
  add_measure(mc, c);
  mc->add_option("--samples", c.samples, "Sample count");
  mc->add_option("--seed", c.seed, "Random seed");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    return fail(out, err, "usage", e.what(), kExitValidation);
  }

  c.command = app.get_subcommands().front()->get_name();
  try {
    if (c.tol && !(*c.tol >= 1e-12)) {
      throw ex::ValidationError("--tol must be at least 1e-12");
    }
    Document doc;
    std::vector<std::string> claim_ids;
    if (c.command == "measure") {
      doc = cmd_measure(c);
    } else if (c.command == "curve") {
      doc = cmd_curve(c);
    } else if (c.command == "bivariate") {
      doc = cmd_bivariate(c);
    } else if (c.command == "transform") {
      doc = cmd_transform(c);
    } else if (c.command == "claims") {
      doc = cmd_claims(c, claim_ids);
    } else {
      doc = cmd_mc(c);
    }
    write_output(c, c.format == "csv" ? render_csv(doc) : render_json(doc), out);
    if (c.strict && doc.summary && doc.summary->violated > 0) return kExitViolations;
    return kExitOk;
  } catch (const ex::ValidationError& e) {
    return fail(out, err, "validation", e.what(), kExitValidation);
  } catch (const ex::NumericalError& e) {
    return fail(out, err, "numerical", e.what(), kExitNumerical);
  } catch (const std::exception& e) {
    return fail(out, err, "internal", e.what(), kExitNumerical);
  }
}

}  // namespace extropy_cli
