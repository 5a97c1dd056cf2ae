#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rfidsim/access_log.hpp"
#include "rfidsim/tag_registry.hpp"

namespace rfidsim {

struct ValidationParams {
  double duration = 0;       // seconds the scan loop runs
  double interval = 2.0;     // delay between passes
};

struct ValidationCounters {
  std::int64_t passes = 0;
  std::int64_t scanned = 0;
  std::int64_t granted = 0;
  std::int64_t denied = 0;
  std::int64_t not_found = 0;

  void count(Verdict v);
  // `scanned=<n> Y=<n> N=<n> NF=<n>`
  std::string summary() const;
};

// Y iff the tag is enrolled and authorized, N iff enrolled and not, NF iff
// absent from the registry.
Verdict decide(std::string_view tag_hex, const TagRegistry& registry);

// One scan: every unchecked entry gets its verdict, exactly once. Returns
// the annotations performed, in log order.
std::vector<std::pair<std::size_t, Verdict>> validate_once(
    DetectionLog& log, const TagRegistry& registry);

// Periodic scan loop: passes at t = 0, interval, 2*interval, ... while
// t < duration. `wait`, when given, runs between passes (wall-clock mode
// sleeps in it; tests inject appends through it). Throws ConfigError unless
// duration >= interval > 0.
ValidationCounters run_validation(const ValidationParams& params,
                                  DetectionLog& log,
                                  const TagRegistry& registry,
                                  const std::function<void(double)>& wait = {});

}  // namespace rfidsim
