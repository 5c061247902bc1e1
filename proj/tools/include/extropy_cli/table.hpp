#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace extropy_cli {

// Named numbers attached to a row, e.g. the diagnostics of a claim.
struct Details {
  std::vector<std::pair<std::string, double>> items;
};

// Empty cells render as null in JSON and as nothing in CSV.
using Cell = std::variant<std::monostate, bool, std::int64_t, double,
                          std::string, Details>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

struct Summary {
  int holds = 0;
  int violated = 0;
  int indeterminate = 0;
};

struct Document {
  std::string command;
  Table table;
  std::optional<Summary> summary;
  std::vector<std::string> warnings;
};

// Shortest decimal that reads back to the same double; non-finite values
// become the strings "inf", "-inf" and "nan".
std::string render_json(const Document& doc);
// Numbers with 12 significant digits. Summary and warnings follow the
// rows as '#' comment lines.
std::string render_csv(const Document& doc);
// {"error": {"kind": ..., "message": ...}}
std::string render_error(std::string_view kind, std::string_view message);

std::string csv_number(double v);

}  // namespace extropy_cli
