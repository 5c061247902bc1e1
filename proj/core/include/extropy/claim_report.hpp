#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace extropy {

enum class Verdict { holds, violated, indeterminate };

std::string_view to_string(Verdict v);

// Outcome of numerically checking one identity or inequality.
//
// `gap` is the claim's slack: for an inequality it is positive when the
// claim holds with margin (rhs - lhs for "lhs <= rhs", lhs - rhs for
// "lhs >= rhs"); for an equality it is lhs - rhs.
struct ClaimReport {
  std::string claim_id;
  std::string subject;
  double lhs = 0.0;
  double rhs = 0.0;
  double gap = 0.0;
  Verdict verdict = Verdict::indeterminate;
  std::string notes;
  std::vector<std::pair<std::string, double>> details;
};

}  // namespace extropy
