#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rfidsim/errors.hpp"

namespace rfidsim {

// How many step-boundaries fit in total: floor(total / step), tolerant of
// binary rounding on decimal inputs. This one definition backs the polling
// schedule, the validator pass schedule, and the theoretical detection
// count, so they can never disagree.
std::int64_t interval_count(double total, double step);  // ConfigError

// floor(runtime / poll_delay).
std::int64_t theoretical_detections(double runtime, double poll_delay);

// |experimental - theoretical| / theoretical * 100. Throws ConfigError when
// theoretical is zero.
double percent_error(std::int64_t experimental, std::int64_t theoretical);

// Two-decimal rendering used in every report surface.
std::string format_percent(double value);

struct RunResult {
  double poll_delay = 0;
  double runtime = 0;
  std::int64_t theoretical = 0;
  std::int64_t experimental = 0;
  double percent_error = 0;
};

// Plain-text table, one row per run, plus max and mean error lines.
std::string report_text(std::span<const RunResult> results);

// CSV: poll_delay_s,runtime_s,theoretical,experimental,percent_error
std::string report_csv(std::span<const RunResult> results);

// "2,5;30,60" -> ({2,5}, {30,60}). Throws ConfigError on malformed grids or
// non-positive values.
std::pair<std::vector<double>, std::vector<double>> parse_grid(
    std::string_view spec);

}  // namespace rfidsim
