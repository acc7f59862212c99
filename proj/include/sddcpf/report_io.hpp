#pragma once

#include <string>

#include "sddcpf/scenario.hpp"

namespace sddcpf {

/// Shortest round-trippable decimal form; NaN rendered as "nan" (CSV)
/// and null (JSON).
std::string format_double(double v);

std::string report_to_json(const DetectionReport& report);

/// Header plus one row per trial.
std::string report_to_csv(const DetectionReport& report);

std::string sweep_to_json(const AlphaSweep& sweep);
std::string sweep_to_csv(const AlphaSweep& sweep);

std::string config_to_json(const ScenarioConfig& cfg);

}  // namespace sddcpf
