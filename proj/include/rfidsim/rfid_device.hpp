#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "rfidsim/errors.hpp"
#include "rfidsim/frame_codec.hpp"

namespace rfidsim {

// Which tag occupies the reader's field during which time interval
// ([t_start, t_end), seconds). The single-antenna model allows at most one
// tag in the field at any instant.
class FieldSchedule {
 public:
  struct Entry {
    TagId tag;
    double t_start = 0;
    double t_end = 0;
  };

  FieldSchedule() = default;

  // Line format: `<tag-hex> <t_start> <t_end>`, `#` starts a comment.
  static FieldSchedule parse(std::string_view text);          // ParseError
  static FieldSchedule load(const std::filesystem::path& p);  // ConfigError

  void add(Entry entry);  // ConfigError unless t_start < t_end

  // The tag present at time t, if any. Throws ConfigError when two entries
  // overlap at t.
  std::optional<TagId> tag_at(double t) const;

  const std::vector<Entry>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }

 private:
  std::vector<Entry> entries_;
};

// SM130 reader on a virtual I2C bus. A write carrying a valid select-tag
// frame latches a response computed from the field state at the current
// time; the next read at the odd read address drains it, front-padded with
// zeros to the requested size.
class Sm130Device {
 public:
  struct Options {
    std::uint8_t slave_addr = kDefaultSlaveAddr;  // even write address
    std::uint8_t tag_type = kDefaultTagType;
    std::uint8_t no_tag_status = kDefaultNoTagStatus;
  };

  Sm130Device(Options options, const FieldSchedule* schedule,
              std::function<double()> clock);

  // payload = [write_addr, length, command, data..., csum]. Returns the byte
  // count sent, or 0 when the address never acks. A frame that fails to
  // decode leaves the device silent.
  std::size_t i2c_write(std::span<const std::uint8_t> payload, int retries,
                        bool ignore_first_ack);

  // Returns exactly num_to_read bytes once the read address (slave | 1)
  // acks, or nullopt when it never does. Reading consumes the pending
  // response; with nothing pending the device clocks out zeros.
  std::optional<Bytes> i2c_read(std::uint8_t addr_byte, std::size_t num_to_read,
                                int retries, bool ignore_first_ack);

  const Bytes& last_write() const { return last_write_; }
  bool has_pending() const { return !pending_.empty(); }
  std::uint8_t slave_addr() const { return options_.slave_addr; }
  int last_retries() const { return last_retries_; }
  bool last_ignore_first_ack() const { return last_ignore_first_ack_; }

 private:
  Options options_;
  const FieldSchedule* schedule_;
  std::function<double()> clock_;
  Bytes pending_;
  Bytes last_write_;
  int last_retries_ = 0;
  bool last_ignore_first_ack_ = false;
};

}  // namespace rfidsim
