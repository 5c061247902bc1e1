#pragma once

#include <array>
#include <string>
#include <string_view>

namespace extropy {

enum class MeasureId {
  extropy,
  weighted_extropy,
  residual_extropy,
  past_extropy,
  weighted_residual_extropy,
  weighted_past_extropy,
  dynamic_survival_extropy,
};

inline constexpr std::array<MeasureId, 7> kAllMeasures = {
    MeasureId::extropy,
    MeasureId::weighted_extropy,
    MeasureId::residual_extropy,
    MeasureId::past_extropy,
    MeasureId::weighted_residual_extropy,
    MeasureId::weighted_past_extropy,
    MeasureId::dynamic_survival_extropy,
};

std::string_view to_string(MeasureId id);

// Throws ValidationError listing the valid identifiers.
MeasureId parse_measure_id(std::string_view name);

// True for the measures that take a time argument t.
bool is_time_indexed(MeasureId id);

}  // namespace extropy
