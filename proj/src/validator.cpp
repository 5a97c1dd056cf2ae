#include "rfidsim/validator.hpp"

#include <cstdio>

#include "rfidsim/metrics.hpp"

namespace rfidsim {

void ValidationCounters::count(Verdict v) {
  ++scanned;
  switch (v) {
    case Verdict::Granted: ++granted; break;
    case Verdict::Denied: ++denied; break;
    case Verdict::NotFound: ++not_found; break;
  }
}

std::string ValidationCounters::summary() const {
  char buf[96];
  std::snprintf(buf, sizeof(buf), "scanned=%lld Y=%lld N=%lld NF=%lld",
                static_cast<long long>(scanned), static_cast<long long>(granted),
                static_cast<long long>(denied),
                static_cast<long long>(not_found));
  return buf;
}

Verdict decide(std::string_view tag_hex, const TagRegistry& registry) {
  std::optional<TagRecord> record = registry.lookup(tag_hex);
  if (!record) return Verdict::NotFound;
  return record->is_authorized ? Verdict::Granted : Verdict::Denied;
}

std::vector<std::pair<std::size_t, Verdict>> validate_once(
    DetectionLog& log, const TagRegistry& registry) {
  std::vector<std::pair<std::size_t, Verdict>> annotations;
  for (const auto& [index, entry] : log.scan_unchecked()) {
    Verdict verdict = decide(entry.tag_hex, registry);
    log.annotate_verdict(index, verdict);
    annotations.emplace_back(index, verdict);
  }
  return annotations;
}

ValidationCounters run_validation(const ValidationParams& params,
                                  DetectionLog& log,
                                  const TagRegistry& registry,
                                  const std::function<void(double)>& wait) {
  if (params.interval <= 0) {
    throw ConfigError("scan interval must be > 0");
  }
  if (params.duration < params.interval) {
    throw ConfigError("duration must be >= scan interval");
  }
  std::int64_t passes = interval_count(params.duration, params.interval);
  ValidationCounters counters;
  for (std::int64_t k = 0; k < passes; ++k) {
    if (k > 0 && wait) wait(params.interval);
    for (const auto& [index, verdict] : validate_once(log, registry)) {
      (void)index;
      counters.count(verdict);
    }
    ++counters.passes;
  }
  return counters;
}

}  // namespace rfidsim
