#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rfidsim/errors.hpp"

namespace rfidsim {

// UTC calendar time at second resolution.
class Timestamp {
 public:
  Timestamp() = default;
  explicit Timestamp(std::int64_t epoch_seconds) : epoch_(epoch_seconds) {}

  static Timestamp from_fields(int year, int month, int day, int hour,
                               int minute, int second);  // ConfigError
  // "DD-MM-YYYY HH:MM:SS", zero-padded. Rejects impossible dates/times.
  static std::optional<Timestamp> parse(std::string_view text);

  std::string format() const;
  std::int64_t epoch() const { return epoch_; }

  auto operator<=>(const Timestamp&) const = default;

 private:
  std::int64_t epoch_ = 0;
};

enum class Verdict { Granted, Denied, NotFound };

std::string_view verdict_token(Verdict v);  // "Y" | "N" | "NF"
std::optional<Verdict> verdict_from_token(std::string_view token);

// One detection line. Grammar, tab-separated, LF-terminated:
//   DD-MM-YYYY HH:MM:SS<TAB>TAGHEX[<TAB>VERDICT]
struct LogEntry {
  Timestamp ts;
  std::string tag_hex;
  std::optional<Verdict> verdict;

  bool operator==(const LogEntry&) const = default;
};

std::string render_line(const LogEntry& entry);          // no trailing newline
std::string render_log(const std::vector<LogEntry>& entries);
LogEntry parse_line(std::string_view line, std::size_t line_no);  // ParseError
std::vector<LogEntry> parse_log(std::string_view text);           // ParseError

// The append-then-annotate detection log. Detections are appended as they
// happen; the validator later adds a verdict to each line, exactly once.
//
// Writers coordinate through a sidecar lock file (<path>.lock) so one
// appender and one annotator can share the log, even across processes.
// Appends are single whole-line writes and annotation rewrites through an
// atomic rename, so readers always observe a prefix-consistent file.
class DetectionLog {
 public:
  explicit DetectionLog(std::filesystem::path path);

  // Appends one detection line; returns its 0-based index.
  // Throws LogError::InvalidTag for a malformed tag, LogError::Storage on IO.
  std::size_t append_detection(Timestamp ts, std::string_view tag_hex);

  // Entries that have no verdict yet, with their indices, in append order.
  std::vector<std::pair<std::size_t, LogEntry>> scan_unchecked() const;

  // Adds the verdict field to entry `index`.
  // Throws LogError::NoSuchEntry, LogError::AlreadyVerified.
  LogEntry annotate_verdict(std::size_t index, Verdict verdict);

  std::vector<LogEntry> read_all() const;
  std::size_t size() const { return entry_count_; }
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
  std::filesystem::path lock_path_;
  std::size_t entry_count_ = 0;
};

}  // namespace rfidsim
