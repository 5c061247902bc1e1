#include "extropy_cli/spec_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "extropy/errors.hpp"
#include "json.hpp"

namespace extropy_cli {

using extropy::ValidationError;
using nlohmann::json;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open \"" + path + "\"");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("malformed JSON: ") + e.what());
  }
}

double number(const json& j, const std::string& where) {
  if (!j.is_number()) throw ValidationError(where + " must be a number");
  return j.get<double>();
}

void only_keys(const json& j, std::initializer_list<const char*> allowed) {
  for (const auto& [key, value] : j.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || key == a;
    if (!ok) {
      std::string list;
      for (const char* a : allowed) list += list.empty() ? a : std::string(", ") + a;
      throw ValidationError("unexpected field \"" + key + "\"; expected " + list);
    }
  }
}

std::string family_of(const json& j) {
  if (!j.is_object()) throw ValidationError("a distribution spec must be a JSON object");
  auto it = j.find("family");
  if (it == j.end() || !it->is_string()) {
    throw ValidationError("distribution spec needs a string \"family\"");
  }
  return it->get<std::string>();
}

std::map<std::string, double> params_of(const json& j) {
  std::map<std::string, double> out;
  auto it = j.find("params");
  if (it == j.end()) return out;
  if (!it->is_object()) throw ValidationError("\"params\" must be an object");
  for (const auto& [key, value] : it->items()) {
    out[key] = number(value, "parameter \"" + key + "\"");
  }
  return out;
}

extropy::DistributionSpec univariate_spec(const json& j) {
  extropy::DistributionSpec spec;
  spec.family = family_of(j);
  only_keys(j, {"family", "params", "weights", "grid"});
  spec.params = params_of(j);
  if (auto it = j.find("weights"); it != j.end()) {
    if (!it->is_array()) throw ValidationError("\"weights\" must be an array");
    for (const auto& w : *it) spec.weights.push_back(number(w, "weight"));
  }
  if (auto it = j.find("grid"); it != j.end()) {
    if (!it->is_array()) throw ValidationError("\"grid\" must be an array of [x, f] pairs");
    for (const auto& p : *it) {
      if (!p.is_array() || p.size() != 2) {
        throw ValidationError("\"grid\" entries must be [x, f] pairs");
      }
      spec.grid.emplace_back(number(p[0], "grid x"), number(p[1], "grid f"));
    }
  }
  return spec;
}

}  // namespace

std::string load_spec_text(const std::string& arg) {
  const auto first = arg.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && arg[first] == '{') return arg;
  return read_file(arg);
}

ParsedSpec parse_spec(const std::string& text) {
  const json j = parse_json(text);
  const std::string family = family_of(j);
  ParsedSpec out;
  if (family == "bivariate_beta" || family == "product") {
    out.kind = SpecKind::bivariate;
    extropy::BivariateSpec spec;
    spec.family = family;
    if (family == "product") {
      only_keys(j, {"family", "x", "y"});
      if (!j.contains("x") || !j.contains("y")) {
        throw ValidationError("product: both \"x\" and \"y\" specs are required");
      }
      spec.x = univariate_spec(j.at("x"));
      spec.y = univariate_spec(j.at("y"));
    } else {
      only_keys(j, {"family", "params"});
      spec.params = params_of(j);
    }
    out.bivariate = std::move(spec);
    return out;
  }
  if (family == "constancy_ode") {
    only_keys(j, {"family", "params"});
    extropy::ConstancyOdeFamily f;
    for (const auto& [key, value] : params_of(j)) {
      if (key == "t0") {
        f.t0 = value;
      } else if (key == "r0") {
        f.r0 = value;
      } else {
        throw ValidationError("constancy_ode: unknown parameter \"" + key +
                              "\"; expected t0, r0");
      }
    }
    if (!(f.t0 > 0.0) || !(f.r0 > 0.0)) {
      throw ValidationError("constancy_ode: t0 and r0 must be positive");
    }
    out.kind = SpecKind::constancy_ode;
    out.ode = f;
    return out;
  }
  out.univariate = univariate_spec(j);
  return out;
}

std::vector<double> parse_grid(std::string_view text) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : text) {
    if (c == ':') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);

  bool geometric = false;
  if (!parts.empty() && parts.front() == "geometric") {
    geometric = true;
    parts.erase(parts.begin());
  }
  const std::string usage = "grid must be lo:hi:n or geometric:lo:hi:n (got \"" +
                            std::string(text) + "\")";
  if (parts.size() != 3) throw ValidationError(usage);

  double lo = 0.0;
  double hi = 0.0;
  long n = 0;
  try {
    std::size_t used = 0;
    lo = std::stod(parts[0], &used);
    if (used != parts[0].size()) throw ValidationError(usage);
    hi = std::stod(parts[1], &used);
    if (used != parts[1].size()) throw ValidationError(usage);
    n = std::stol(parts[2], &used);
    if (used != parts[2].size()) throw ValidationError(usage);
  } catch (const std::logic_error&) {
    throw ValidationError(usage);
  }
  if (!std::isfinite(lo) || !std::isfinite(hi) || n < 1) throw ValidationError(usage);
  if (n > 1 && !(hi > lo)) throw ValidationError("grid needs lo < hi");
  if (geometric && !(lo > 0.0)) throw ValidationError("geometric grid needs lo > 0");

  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(n));
  for (long i = 0; i < n; ++i) {
    if (n == 1) {
      out.push_back(lo);
    } else if (i == n - 1) {
      out.push_back(hi);
    } else {
      const double u = static_cast<double>(i) / static_cast<double>(n - 1);
      out.push_back(geometric ? lo * std::pow(hi / lo, u) : lo + u * (hi - lo));
    }
  }
  return out;
}

namespace {

std::vector<extropy::CurvePoint> curve_from_json(const json& doc) {
  const json& rows = doc.is_object() && doc.contains("rows") ? doc.at("rows") : doc;
  if (!rows.is_array()) throw ValidationError("curve JSON must be an array of points");
  std::vector<extropy::CurvePoint> out;
  for (const auto& r : rows) {
    if (!r.is_object() || !r.contains("t") || !r.contains("value")) {
      throw ValidationError("curve points need \"t\" and \"value\"");
    }
    extropy::CurvePoint p;
    p.t = number(r.at("t"), "curve t");
    p.value = number(r.at("value"), "curve value");
    if (auto it = r.find("derivative"); it != r.end() && !it->is_null()) {
      p.derivative = number(*it, "curve derivative");
    }
    out.push_back(p);
  }
  return out;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      cells.push_back(cur);
      cur.clear();
    } else if (c != '\r' && c != '"') {
      cur += c;
    }
  }
  cells.push_back(cur);
  return cells;
}

std::vector<extropy::CurvePoint> curve_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int t_col = -1;
  int v_col = -1;
  int d_col = -1;
  std::vector<extropy::CurvePoint> out;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto cells = split_csv_line(line);
    if (t_col < 0) {
      for (std::size_t i = 0; i < cells.size(); ++i) {
        if (cells[i] == "t") t_col = static_cast<int>(i);
        if (cells[i] == "value") v_col = static_cast<int>(i);
        if (cells[i] == "derivative") d_col = static_cast<int>(i);
      }
      if (t_col < 0 || v_col < 0) {
        throw ValidationError("curve CSV header must name t and value");
      }
      continue;
    }
    auto cell = [&](int col) -> const std::string& {
      if (col >= static_cast<int>(cells.size())) {
        throw ValidationError("short row in curve CSV: " + line);
      }
      return cells[static_cast<std::size_t>(col)];
    };
    try {
      extropy::CurvePoint p;
      p.t = std::stod(cell(t_col));
      p.value = std::stod(cell(v_col));
      if (d_col >= 0 && !cell(d_col).empty()) p.derivative = std::stod(cell(d_col));
      out.push_back(p);
    } catch (const std::logic_error&) {
      throw ValidationError("unreadable row in curve CSV: " + line);
    }
  }
  return out;
}

}  // namespace

std::vector<extropy::CurvePoint> load_curve(const std::string& path) {
  const std::string text = read_file(path);
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && (text[first] == '[' || text[first] == '{')) {
    return curve_from_json(parse_json(text));
  }
  return curve_from_csv(text);
}

}  // namespace extropy_cli
