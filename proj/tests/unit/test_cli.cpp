#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "extropy/errors.hpp"
#include "extropy_cli/cli.hpp"
#include "extropy_cli/spec_io.hpp"
#include "extropy_cli/table.hpp"
#include "json.hpp"

using nlohmann::json;

namespace {

struct Result {
  int code = 0;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  Result r;
  r.code = extropy_cli::run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

const std::string kExp = R"({"family":"exponential","params":{"lambda":1}})";

double as_number(const json& j) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "-inf") return -INFINITY;
    if (s == "inf") return INFINITY;
    return NAN;
  }
  return j.get<double>();
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cells;
    std::string cur;
    bool quoted = false;
    for (char c : line) {
      if (c == '"') {
        quoted = !quoted;
      } else if (c == ',' && !quoted) {
        cells.push_back(cur);
        cur.clear();
      } else {
        cur += c;
      }
    }
    cells.push_back(cur);
    rows.push_back(cells);
  }
  return rows;
}

}  // namespace

TEST(Cli, MeasureJson) {
  const auto r = run({"measure", "--dist", kExp, "--measure", "weighted_extropy"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto doc = json::parse(r.out);
  EXPECT_EQ(doc["command"], "measure");
  ASSERT_EQ(doc["rows"].size(), 1u);
  EXPECT_EQ(doc["rows"][0]["value"].get<double>(), -0.125);
  EXPECT_EQ(doc["rows"][0]["diverged"], false);
}

TEST(Cli, DivergenceRendersAsString) {
  const auto r = run({"measure", "--dist", R"({"family":"beta","params":{"alpha":1,"beta":0.4}})",
                      "--measure", "weighted_extropy"});
  ASSERT_EQ(r.code, 0);
  const auto doc = json::parse(r.out);
  EXPECT_EQ(doc["rows"][0]["value"], "-inf");
  EXPECT_EQ(doc["rows"][0]["diverged"], true);
  const auto csv = run({"measure", "--dist", R"({"family":"beta","params":{"alpha":1,"beta":0.4}})",
                        "--measure", "weighted_extropy", "--format", "csv"});
  EXPECT_EQ(parse_csv(csv.out)[1][3], "-inf");
}

TEST(Cli, JsonAndCsvCarryTheSameNumbers) {
  const std::vector<std::string> base = {"curve", "--dist", R"({"family":"gamma","params":{"alpha":2,"beta":1.5}})",
                                         "--measure", "weighted_residual_extropy,dynamic_survival_extropy",
                                         "--grid", "geometric:0.1:4:5"};
  auto js = base;
  auto cs = base;
  cs.insert(cs.end(), {"--format", "csv"});
  const auto doc = json::parse(run(js).out);
  const auto rows = parse_csv(run(cs).out);
  ASSERT_EQ(rows.size(), doc["rows"].size() + 1);
  const auto& header = rows[0];
  for (std::size_t i = 0; i < doc["rows"].size(); ++i) {
    for (std::size_t c = 0; c < header.size(); ++c) {
      const json& cell = doc["rows"][i][header[c]];
      if (!cell.is_number()) continue;
      const double from_csv = std::stod(rows[i + 1][c]);
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.12g", cell.get<double>());
      EXPECT_EQ(std::stod(buf), from_csv) << header[c];
    }
  }
}

TEST(Cli, JsonNumbersRoundTripExactly) {
  const auto r = run({"measure", "--dist", R"({"family":"gamma","params":{"alpha":2.5,"beta":1}})",
                      "--measure", "weighted_extropy"});
  const auto doc = json::parse(r.out);
  const double v = doc["rows"][0]["value"].get<double>();
  const double expected = -std::exp(std::lgamma(5.0) - 6.0 * std::log(2.0) - 2 * std::lgamma(2.5));
  EXPECT_NEAR(v, expected, 1e-12);
}

TEST(Cli, CurveRowsCarryErrors) {
  const auto r = run({"curve", "--dist", R"({"family":"uniform","params":{"a":0,"b":1}})",
                      "--measure", "weighted_residual_extropy", "--t", "0.5,1.5,0.25"});
  ASSERT_EQ(r.code, 0);
  const auto rows = json::parse(r.out)["rows"];
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[0]["t"].get<double>(), 0.25);
  EXPECT_TRUE(rows[0]["message"].is_null());
  EXPECT_EQ(rows[2]["t"].get<double>(), 1.5);
  EXPECT_EQ(rows[2]["value"], "nan");
  EXPECT_NE(rows[2]["message"].get<std::string>().find("error"), std::string::npos);
}

TEST(Cli, CurveNeedsTimeIndexedMeasure) {
  EXPECT_EQ(run({"curve", "--dist", kExp, "--measure", "extropy"}).code, extropy_cli::kExitValidation);
}

TEST(Cli, ValidationErrorsListValidIds) {
  auto r = run({"measure", "--dist", R"({"family":"lognormal"})", "--measure", "extropy"});
  EXPECT_EQ(r.code, extropy_cli::kExitValidation);
  auto doc = json::parse(r.out);
  EXPECT_EQ(doc["error"]["kind"], "validation");
  EXPECT_NE(doc["error"]["message"].get<std::string>().find("pareto"), std::string::npos);

  r = run({"measure", "--dist", kExp, "--measure", "entropy"});
  EXPECT_EQ(r.code, extropy_cli::kExitValidation);
  EXPECT_NE(json::parse(r.out)["error"]["message"].get<std::string>().find("weighted_extropy"),
            std::string::npos);

  r = run({"claims", "--dist", kExp, "--claims", "no_such_claim"});
  EXPECT_EQ(r.code, extropy_cli::kExitValidation);
  EXPECT_NE(r.out.find("sum_bound"), std::string::npos);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, extropy_cli::kExitValidation);
  EXPECT_EQ(run({"frobnicate"}).code, extropy_cli::kExitValidation);
  EXPECT_EQ(run({"measure", "--dist", kExp, "--measure", "extropy", "--format", "xml"}).code,
            extropy_cli::kExitValidation);
  EXPECT_EQ(run({"measure", "--dist", kExp, "--measure", "extropy", "--tol", "1e-13"}).code,
            extropy_cli::kExitValidation);
  EXPECT_EQ(run({"measure", "--dist", "{not json", "--measure", "extropy"}).code,
            extropy_cli::kExitValidation);
  EXPECT_EQ(run({"measure", "--dist", "/nonexistent/spec.json", "--measure", "extropy"}).code,
            extropy_cli::kExitValidation);
  EXPECT_EQ(run({"measure", "--dist", kExp, "--measure", "residual_extropy"}).code,
            extropy_cli::kExitValidation);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, NumericalFailureExitCode) {
  const auto r = run({"measure", "--dist", R"({"family":"uniform","params":{"a":0,"b":1}})",
                      "--measure", "residual_extropy", "--t", "2"});
  EXPECT_EQ(r.code, extropy_cli::kExitNumerical);
  EXPECT_EQ(json::parse(r.out)["error"]["kind"], "numerical");
}

TEST(Cli, StrictClaims) {
  const std::vector<std::string> args = {"claims", "--dist", kExp, "--claims", "sum_bound"};
  auto r = run(args);
  EXPECT_EQ(r.code, 0);
  const auto doc = json::parse(r.out);
  EXPECT_EQ(doc["summary"]["violated"], 1);
  EXPECT_EQ(doc["rows"][0]["verdict"], "violated");
  auto strict = args;
  strict.push_back("--strict");
  EXPECT_EQ(run(strict).code, extropy_cli::kExitViolations);
}

TEST(Cli, ClaimsSummaryCounts) {
  const auto r = run({"claims", "--dist", kExp, "--claims", "decomposition,residual_bound",
                      "--grid", "0.5:2:4"});
  const auto doc = json::parse(r.out);
  EXPECT_EQ(doc["rows"].size(), 8u);
  EXPECT_EQ(doc["summary"]["holds"], 8);
}

TEST(Cli, McIsDeterministic) {
  const std::vector<std::string> args = {"mc", "--dist", kExp, "--samples", "20000", "--seed", "42"};
  const auto a = run(args);
  const auto b = run(args);
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  auto other = args;
  other.back() = "43";
  EXPECT_NE(run(other).out, a.out);
}

TEST(Cli, McSkipsDivergentReference) {
  const auto r = run({"mc", "--dist", R"({"family":"beta","params":{"alpha":1,"beta":0.4}})",
                      "--measure", "weighted_extropy", "--samples", "100"});
  ASSERT_EQ(r.code, 0);
  const auto row = json::parse(r.out)["rows"][0];
  EXPECT_EQ(row["estimate"], "nan");
  EXPECT_NE(row["note"].get<std::string>().find("skipped"), std::string::npos);
}

TEST(Cli, TransformRows) {
  const auto r = run({"transform", "--dist", kExp, "--transform", "affine:2,3", "--transform", "pit"});
  ASSERT_EQ(r.code, 0) << r.out;
  const auto rows = json::parse(r.out)["rows"];
  bool saw_pit = false;
  for (const auto& row : rows) {
    if (row["transform"] == "pit" && row["quantity"] == "weighted_extropy_x_domain") {
      EXPECT_NEAR(as_number(row["value"]), -0.25, 1e-8);
      saw_pit = true;
    }
    if (row["transform"] == "affine:2,3" && row["quantity"] == "weighted_extropy_linear") {
      EXPECT_NEAR(as_number(row["value"]), -0.125 + 1.5 * -0.25, 1e-8);
    }
  }
  EXPECT_TRUE(saw_pit);
  EXPECT_EQ(run({"transform", "--dist", kExp, "--transform", "cube"}).code,
            extropy_cli::kExitValidation);
}

TEST(Cli, OutFile) {
  const std::string path = ::testing::TempDir() + "extropy_cli_out.csv";
  const auto r = run({"measure", "--dist", kExp, "--measure", "extropy", "--format", "csv", "--out", path});
  ASSERT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header, "dist,measure,t,value,error,method,diverged");
  std::remove(path.c_str());
}

TEST(SpecIo, Shapes) {
  using extropy_cli::SpecKind;
  auto s = extropy_cli::parse_spec(R"({"family":"piecewise_constant","weights":[0.5,0.5]})");
  EXPECT_EQ(s.kind, SpecKind::univariate);
  EXPECT_EQ(s.univariate->weights.size(), 2u);
  s = extropy_cli::parse_spec(R"({"family":"tabulated","grid":[[0,1],[1,1]]})");
  EXPECT_EQ(s.univariate->grid.size(), 2u);
  s = extropy_cli::parse_spec(R"({"family":"product","x":{"family":"exponential","params":{"lambda":1}},"y":{"family":"uniform","params":{"a":0,"b":1}}})");
  EXPECT_EQ(s.kind, SpecKind::bivariate);
  s = extropy_cli::parse_spec(R"({"family":"constancy_ode","params":{"t0":1,"r0":2}})");
  EXPECT_EQ(s.kind, SpecKind::constancy_ode);
  EXPECT_EQ(s.ode->r0, 2.0);
  EXPECT_THROW(extropy_cli::parse_spec(R"({"family":"exponential","parms":{}})"),
               extropy::ValidationError);
  EXPECT_THROW(extropy_cli::parse_spec(R"({"family":"exponential","params":{"lambda":"1"}})"),
               extropy::ValidationError);
  EXPECT_THROW(extropy_cli::parse_spec(R"([1,2])"), extropy::ValidationError);
}

TEST(SpecIo, Grids) {
  auto g = extropy_cli::parse_grid("0:1:5");
  ASSERT_EQ(g.size(), 5u);
  EXPECT_DOUBLE_EQ(g[1], 0.25);
  EXPECT_DOUBLE_EQ(g[4], 1.0);
  g = extropy_cli::parse_grid("geometric:1:100:3");
  EXPECT_NEAR(g[1], 10.0, 1e-12);
  EXPECT_DOUBLE_EQ(g[2], 100.0);
  for (const char* bad : {"1:2", "a:b:3", "2:1:3", "geometric:0:1:3", "0:1:0", "0:1:2.5"}) {
    EXPECT_THROW(extropy_cli::parse_grid(bad), extropy::ValidationError) << bad;
  }
}

TEST(SpecIo, CurveFiles) {
  const std::string path = ::testing::TempDir() + "extropy_curve.csv";
  {
    std::ofstream f(path);
    f << "t,value,derivative\n1,-0.375,-0.25\n2,-0.625,\n";
  }
  const auto c = extropy_cli::load_curve(path);
  ASSERT_EQ(c.size(), 2u);
  EXPECT_EQ(*c[0].derivative, -0.25);
  EXPECT_FALSE(c[1].derivative);
  {
    std::ofstream f(path);
    f << R"({"rows":[{"t":1,"value":-0.375}]})";
  }
  EXPECT_EQ(extropy_cli::load_curve(path).size(), 1u);
  std::remove(path.c_str());
}

TEST(Table, Rendering) {
  extropy_cli::Document doc;
  doc.command = "x";
  doc.table.columns = {"a", "b", "c"};
  doc.table.rows.push_back({0.1, std::string("p,q"), extropy_cli::Details{{{"k", -INFINITY}}}});
  doc.summary = extropy_cli::Summary{1, 2, 3};
  const auto csv = extropy_cli::render_csv(doc);
  EXPECT_EQ(csv, "a,b,c\n0.1,\"p,q\",k=-inf\n# summary: holds=1 violated=2 indeterminate=3\n");
  const auto j = json::parse(extropy_cli::render_json(doc));
  EXPECT_EQ(j["rows"][0]["c"]["k"], "-inf");
  EXPECT_EQ(j["summary"]["indeterminate"], 3);
  EXPECT_EQ(extropy_cli::csv_number(1.0 / 3.0), "0.333333333333");
}
