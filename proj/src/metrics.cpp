#include "rfidsim/metrics.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace rfidsim {

namespace {

// Trim trailing zeros so whole-second values print as integers.
std::string format_seconds(double value) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%g", value);
  return buf;
}

}  // namespace

std::int64_t interval_count(double total, double step) {
  if (step <= 0) throw ConfigError("step must be > 0");
  if (total < 0) throw ConfigError("total must be >= 0");
  return static_cast<std::int64_t>(std::floor(total / step + 1e-9));
}

std::int64_t theoretical_detections(double runtime, double poll_delay) {
  if (poll_delay <= 0) throw ConfigError("poll delay must be > 0");
  if (runtime < 0) throw ConfigError("runtime must be >= 0");
  return interval_count(runtime, poll_delay);
}

double percent_error(std::int64_t experimental, std::int64_t theoretical) {
  if (theoretical <= 0) {
    throw ConfigError("percent error undefined for theoretical count " +
                      std::to_string(theoretical));
  }
  return std::abs(static_cast<double>(experimental - theoretical)) /
         static_cast<double>(theoretical) * 100.0;
}

std::string format_percent(double value) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.2f", value);
  return buf;
}

std::string report_text(std::span<const RunResult> results) {
  char buf[160];
  std::string out =
      "poll_delay_s  runtime_s  theoretical  experimental  percent_error\n";
  double max_error = 0;
  const RunResult* worst = nullptr;
  double error_sum = 0;
  for (const RunResult& r : results) {
    std::snprintf(buf, sizeof(buf), "%-12s  %-9s  %-11lld  %-12lld  %s\n",
                  format_seconds(r.poll_delay).c_str(),
                  format_seconds(r.runtime).c_str(),
                  static_cast<long long>(r.theoretical),
                  static_cast<long long>(r.experimental),
                  format_percent(r.percent_error).c_str());
    out += buf;
    error_sum += r.percent_error;
    if (!worst || r.percent_error > max_error) {
      max_error = r.percent_error;
      worst = &r;
    }
  }
  if (worst) {
    std::snprintf(buf, sizeof(buf),
                  "max_error=%s (poll_delay=%s, runtime=%s)\nmean_error=%s\n",
                  format_percent(max_error).c_str(),
                  format_seconds(worst->poll_delay).c_str(),
                  format_seconds(worst->runtime).c_str(),
                  format_percent(error_sum /
                                 static_cast<double>(results.size()))
                      .c_str());
    out += buf;
  }
  return out;
}

std::string report_csv(std::span<const RunResult> results) {
  std::string out = "poll_delay_s,runtime_s,theoretical,experimental,percent_error\n";
  char buf[128];
  for (const RunResult& r : results) {
    std::snprintf(buf, sizeof(buf), "%s,%s,%lld,%lld,%s\n",
                  format_seconds(r.poll_delay).c_str(),
                  format_seconds(r.runtime).c_str(),
                  static_cast<long long>(r.theoretical),
                  static_cast<long long>(r.experimental),
                  format_percent(r.percent_error).c_str());
    out += buf;
  }
  return out;
}

std::pair<std::vector<double>, std::vector<double>> parse_grid(
    std::string_view spec) {
  std::size_t semi = spec.find(';');
  if (semi == std::string_view::npos) {
    throw ConfigError("grid must be `<delays>;<runtimes>`");
  }
  auto parse_list = [](std::string_view part, const char* what) {
    std::vector<double> values;
    std::size_t start = 0;
    while (start <= part.size()) {
      std::size_t comma = part.find(',', start);
      if (comma == std::string_view::npos) comma = part.size();
      std::string token{part.substr(start, comma - start)};
      char* end = nullptr;
      double v = std::strtod(token.c_str(), &end);
      if (token.empty() || end != token.c_str() + token.size() || v <= 0) {
        throw ConfigError(std::string("bad ") + what + " value \"" + token +
                          "\" in grid");
      }
      values.push_back(v);
      start = comma + 1;
    }
    return values;
  };
  return {parse_list(spec.substr(0, semi), "poll delay"),
          parse_list(spec.substr(semi + 1), "runtime")};
}

}  // namespace rfidsim
