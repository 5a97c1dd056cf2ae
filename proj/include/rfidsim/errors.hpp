#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rfidsim {

// Frame encode/decode failures.
class CodecError : public std::runtime_error {
 public:
  enum class Kind {
    DataTooLong,
    OddWriteAddress,
    BadChecksum,
    Truncated,
    Empty,
    BadSerialLength,
    BadHex,
    UnsupportedLength,
  };

  CodecError(Kind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

// Invalid run parameters, scenario contents, or missing input files.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Virtual-network wiring faults (hard errors; undeliverable messages are
// counted, not thrown).
class NetError : public std::runtime_error {
 public:
  enum class Kind { DuplicateAddress, NoCurrentNode };

  NetError(Kind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

// Detection-log failures.
class LogError : public std::runtime_error {
 public:
  enum class Kind { InvalidTag, AlreadyVerified, NoSuchEntry, Storage };

  LogError(Kind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

// Registry failures.
class RegistryError : public std::runtime_error {
 public:
  enum class Kind { DuplicateKey, NotFound, InvalidTag, Storage };

  RegistryError(Kind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

// Malformed line in a log, registry, or scenario file. Line numbers are
// 1-based.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line_no, const std::string& what)
      : std::runtime_error("line " + std::to_string(line_no) + ": " + what),
        line_no_(line_no) {}

  std::size_t line_no() const { return line_no_; }

 private:
  std::size_t line_no_;
};

}  // namespace rfidsim
