#include "rfidsim/access_log.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <cctype>
#include <cerrno>
#include <chrono>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

namespace rfidsim {

namespace {

namespace fs = std::filesystem;

// Exclusive advisory lock held for the duration of one log mutation. The
// lock lives in a sidecar file that is never renamed, so the annotator's
// rewrite-and-swap cannot orphan a waiting appender's lock.
class FileLock {
 public:
  explicit FileLock(const fs::path& lock_path) {
    fd_ = ::open(lock_path.c_str(), O_CREAT | O_RDWR, 0644);
    if (fd_ < 0) {
      throw LogError(LogError::Kind::Storage,
                     "cannot open lock file " + lock_path.string() + ": " +
                         std::strerror(errno));
    }
    if (::flock(fd_, LOCK_EX) != 0) {
      int err = errno;
      ::close(fd_);
      throw LogError(LogError::Kind::Storage,
                     "cannot lock " + lock_path.string() + ": " +
                         std::strerror(err));
    }
  }
  ~FileLock() {
    ::flock(fd_, LOCK_UN);
    ::close(fd_);
  }
  FileLock(const FileLock&) = delete;
  FileLock& operator=(const FileLock&) = delete;

 private:
  int fd_;
};

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return {};
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

bool valid_tag_hex(std::string_view tag) {
  if (tag.size() != 8 && tag.size() != 14) return false;
  for (char c : tag) {
    if (!((c >= '0' && c <= '9') || (c >= 'A' && c <= 'F'))) return false;
  }
  return true;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    std::size_t tab = line.find('\t', start);
    if (tab == std::string_view::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
  return fields;
}

}  // namespace

Timestamp Timestamp::from_fields(int year, int month, int day, int hour,
                                 int minute, int second) {
  using namespace std::chrono;
  year_month_day ymd{std::chrono::year(year), std::chrono::month(month),
                     std::chrono::day(day)};
  if (!ymd.ok() || hour < 0 || hour > 23 || minute < 0 || minute > 59 ||
      second < 0 || second > 59) {
    char buf[80];
    std::snprintf(buf, sizeof(buf),
                  "invalid timestamp %02d-%02d-%04d %02d:%02d:%02d", day,
                  month, year, hour, minute, second);
    throw ConfigError(buf);
  }
  sys_days days{ymd};
  std::int64_t epoch = duration_cast<seconds>(days.time_since_epoch()).count();
  epoch += hour * 3600 + minute * 60 + second;
  return Timestamp(epoch);
}

std::optional<Timestamp> Timestamp::parse(std::string_view text) {
  if (text.size() != 19) return std::nullopt;
  static constexpr std::size_t kDigits[] = {0, 1, 3, 4, 6, 7, 8, 9,
                                            11, 12, 14, 15, 17, 18};
  for (std::size_t i : kDigits) {
    if (!std::isdigit(static_cast<unsigned char>(text[i]))) return std::nullopt;
  }
  if (text[2] != '-' || text[5] != '-' || text[10] != ' ' || text[13] != ':' ||
      text[16] != ':') {
    return std::nullopt;
  }
  auto num = [&](std::size_t pos, std::size_t len) {
    int v = 0;
    for (std::size_t i = 0; i < len; ++i) v = v * 10 + (text[pos + i] - '0');
    return v;
  };
  try {
    return from_fields(num(6, 4), num(3, 2), num(0, 2), num(11, 2), num(14, 2),
                       num(17, 2));
  } catch (const ConfigError&) {
    return std::nullopt;
  }
}

std::string Timestamp::format() const {
  using namespace std::chrono;
  sys_seconds tp{seconds{epoch_}};
  sys_days days = floor<std::chrono::days>(tp);
  year_month_day ymd{days};
  hh_mm_ss<seconds> tod{tp - days};
  char buf[24];
  std::snprintf(buf, sizeof(buf), "%02u-%02u-%04d %02ld:%02ld:%02ld",
                static_cast<unsigned>(ymd.day()),
                static_cast<unsigned>(ymd.month()), int(ymd.year()),
                static_cast<long>(tod.hours().count()),
                static_cast<long>(tod.minutes().count()),
                static_cast<long>(tod.seconds().count()));
  return buf;
}

std::string_view verdict_token(Verdict v) {
  switch (v) {
    case Verdict::Granted: return "Y";
    case Verdict::Denied: return "N";
    case Verdict::NotFound: return "NF";
  }
  return "";
}

std::optional<Verdict> verdict_from_token(std::string_view token) {
  if (token == "Y") return Verdict::Granted;
  if (token == "N") return Verdict::Denied;
  if (token == "NF") return Verdict::NotFound;
  return std::nullopt;
}

std::string render_line(const LogEntry& entry) {
  std::string line = entry.ts.format();
  line += '\t';
  line += entry.tag_hex;
  if (entry.verdict) {
    line += '\t';
    line += verdict_token(*entry.verdict);
  }
  return line;
}

std::string render_log(const std::vector<LogEntry>& entries) {
  std::string out;
  for (const LogEntry& e : entries) {
    out += render_line(e);
    out += '\n';
  }
  return out;
}

LogEntry parse_line(std::string_view line, std::size_t line_no) {
  auto fields = split_fields(line);
  if (fields.size() != 2 && fields.size() != 3) {
    throw ParseError(line_no, "expected 2 or 3 tab-separated fields, got " +
                                  std::to_string(fields.size()));
  }
  auto ts = Timestamp::parse(fields[0]);
  if (!ts) {
    throw ParseError(line_no,
                     "bad timestamp \"" + std::string(fields[0]) + "\"");
  }
  if (!valid_tag_hex(fields[1])) {
    throw ParseError(line_no, "bad tag \"" + std::string(fields[1]) + "\"");
  }
  LogEntry entry{*ts, std::string(fields[1]), std::nullopt};
  if (fields.size() == 3) {
    auto verdict = verdict_from_token(fields[2]);
    if (!verdict) {
      throw ParseError(line_no,
                       "bad verdict \"" + std::string(fields[2]) + "\"");
    }
    entry.verdict = verdict;
  }
  return entry;
}

std::vector<LogEntry> parse_log(std::string_view text) {
  std::vector<LogEntry> entries;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start < text.size()) {
    ++line_no;
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) {
      throw ParseError(line_no, "missing final newline");
    }
    entries.push_back(parse_line(text.substr(start, end - start), line_no));
    start = end + 1;
  }
  return entries;
}

DetectionLog::DetectionLog(std::filesystem::path path)
    : path_(std::move(path)), lock_path_(path_.string() + ".lock") {
  entry_count_ = parse_log(read_file(path_)).size();
}

std::size_t DetectionLog::append_detection(Timestamp ts,
                                           std::string_view tag_hex) {
  if (!valid_tag_hex(tag_hex)) {
    throw LogError(LogError::Kind::InvalidTag,
                   "invalid tag \"" + std::string(tag_hex) + "\"");
  }
  std::string line = render_line(LogEntry{ts, std::string(tag_hex), {}});
  line += '\n';
  FileLock lock(lock_path_);
  int fd = ::open(path_.c_str(), O_CREAT | O_WRONLY | O_APPEND, 0644);
  if (fd < 0) {
    throw LogError(LogError::Kind::Storage, "cannot open " + path_.string() +
                                                ": " + std::strerror(errno));
  }
  ssize_t n = ::write(fd, line.data(), line.size());
  ::close(fd);
  if (n != static_cast<ssize_t>(line.size())) {
    throw LogError(LogError::Kind::Storage, "short write to " + path_.string());
  }
  return entry_count_++;
}

std::vector<std::pair<std::size_t, LogEntry>> DetectionLog::scan_unchecked()
    const {
  std::vector<std::pair<std::size_t, LogEntry>> unchecked;
  std::vector<LogEntry> entries = read_all();
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (!entries[i].verdict) unchecked.emplace_back(i, std::move(entries[i]));
  }
  return unchecked;
}

LogEntry DetectionLog::annotate_verdict(std::size_t index, Verdict verdict) {
  FileLock lock(lock_path_);
  std::vector<LogEntry> entries = parse_log(read_file(path_));
  if (index >= entries.size()) {
    throw LogError(LogError::Kind::NoSuchEntry,
                   "no entry at index " + std::to_string(index) + " (log has " +
                       std::to_string(entries.size()) + ")");
  }
  if (entries[index].verdict) {
    throw LogError(LogError::Kind::AlreadyVerified,
                   "entry " + std::to_string(index) + " already has verdict " +
                       std::string(verdict_token(*entries[index].verdict)));
  }
  entries[index].verdict = verdict;
  fs::path tmp = path_;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << render_log(entries);
    if (!out.flush()) {
      throw LogError(LogError::Kind::Storage, "cannot write " + tmp.string());
    }
  }
  std::error_code ec;
  fs::rename(tmp, path_, ec);
  if (ec) {
    throw LogError(LogError::Kind::Storage,
                   "cannot replace " + path_.string() + ": " + ec.message());
  }
  entry_count_ = entries.size();
  return entries[index];
}

std::vector<LogEntry> DetectionLog::read_all() const {
  return parse_log(read_file(path_));
}

}  // namespace rfidsim
