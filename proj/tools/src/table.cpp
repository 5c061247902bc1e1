#include "extropy_cli/table.hpp"

#include <cmath>
#include <cstdio>

#include "json.hpp"

namespace extropy_cli {

using ojson = nlohmann::ordered_json;

namespace {

std::string non_finite(double v) {
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

ojson json_number(double v) {
  if (std::isfinite(v)) return v;
  return non_finite(v);
}

ojson json_cell(const Cell& c) {
  return std::visit(
      [](const auto& v) -> ojson {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::monostate>) {
          return nullptr;
        } else if constexpr (std::is_same_v<T, double>) {
          return json_number(v);
        } else if constexpr (std::is_same_v<T, Details>) {
          ojson o = ojson::object();
          for (const auto& [k, x] : v.items) o[k] = json_number(x);
          return o;
        } else {
          return v;
        }
      },
      c);
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

std::string csv_cell(const Cell& c) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::monostate>) {
          return "";
        } else if constexpr (std::is_same_v<T, bool>) {
          return v ? "true" : "false";
        } else if constexpr (std::is_same_v<T, std::int64_t>) {
          return std::to_string(v);
        } else if constexpr (std::is_same_v<T, double>) {
          return csv_number(v);
        } else if constexpr (std::is_same_v<T, Details>) {
          std::string s;
          for (const auto& [k, x] : v.items) {
            if (!s.empty()) s += ';';
            s += k + "=" + csv_number(x);
          }
          return csv_escape(s);
        } else {
          return csv_escape(v);
        }
      },
      c);
}

}  // namespace

std::string csv_number(double v) {
  if (!std::isfinite(v)) return non_finite(v);
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string render_json(const Document& doc) {
  ojson out = ojson::object();
  out["command"] = doc.command;
  ojson rows = ojson::array();
  for (const auto& row : doc.table.rows) {
    ojson r = ojson::object();
    for (std::size_t i = 0; i < doc.table.columns.size() && i < row.size(); ++i) {
      r[doc.table.columns[i]] = json_cell(row[i]);
    }
    rows.push_back(std::move(r));
  }
  out["rows"] = std::move(rows);
  if (doc.summary) {
    out["summary"] = {{"holds", doc.summary->holds},
                      {"violated", doc.summary->violated},
                      {"indeterminate", doc.summary->indeterminate}};
  }
  if (!doc.warnings.empty()) out["warnings"] = doc.warnings;
  return out.dump(2) + "\n";
}

std::string render_csv(const Document& doc) {
  std::string out;
  for (std::size_t i = 0; i < doc.table.columns.size(); ++i) {
    if (i) out += ',';
    out += csv_escape(doc.table.columns[i]);
  }
  out += '\n';
  for (const auto& row : doc.table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += csv_cell(row[i]);
    }
    out += '\n';
  }
  if (doc.summary) {
    out += "# summary: holds=" + std::to_string(doc.summary->holds) +
           " violated=" + std::to_string(doc.summary->violated) +
           " indeterminate=" + std::to_string(doc.summary->indeterminate) + "\n";
  }
  for (const auto& w : doc.warnings) out += "# warning: " + w + "\n";
  return out;
}

std::string render_error(std::string_view kind, std::string_view message) {
  ojson out = {{"error", {{"kind", kind}, {"message", message}}}};
  return out.dump(2) + "\n";
}

}  // namespace extropy_cli
