#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rfidsim/errors.hpp"

namespace rfidsim {

using Bytes = std::vector<std::uint8_t>;

// SM130 command opcodes and protocol defaults. The reader speaks one frame
// layout in both directions:
//
//   [length] [command] [data ...] [csum]
//
// where length = 1 + len(data) and csum = (length + command + sum(data)) % 256.
inline constexpr std::uint8_t kCmdSelectTag = 0x83;
inline constexpr std::size_t kMaxFrameData = 16;
inline constexpr std::uint8_t kDefaultSlaveAddr = 0x42;
inline constexpr std::uint8_t kDefaultTagType = 0x02;
inline constexpr std::uint8_t kDefaultNoTagStatus = 0x4E;
inline constexpr std::size_t kDefaultReadSize = 12;

// Hex transcription: two uppercase hex characters per byte, no separators.
// This exact form travels over the node RPCs and appears in the log file.
std::string to_hex(std::span<const std::uint8_t> bytes);
Bytes from_hex(std::string_view text);  // throws CodecError::BadHex

// A tag serial. Mifare serials are 4 or 7 bytes; the canonical text form is
// 8 or 14 uppercase hex characters.
class TagId {
 public:
  static TagId from_bytes(Bytes serial);        // BadSerialLength
  static TagId from_hex(std::string_view text); // BadHex, BadSerialLength

  const Bytes& bytes() const { return serial_; }
  std::string hex() const { return to_hex(serial_); }

  bool operator==(const TagId&) const = default;

 private:
  explicit TagId(Bytes serial) : serial_(std::move(serial)) {}
  Bytes serial_;
};

struct CommandFrame {
  std::uint8_t command = 0;
  Bytes data;

  bool operator==(const CommandFrame&) const = default;
};

// A decoded reader frame. Classification follows the length byte: length 2
// is the no-tag response (payload is a single status byte), length > 2 is a
// tag response whose payload is [tagType, serial...].
struct ResponseFrame {
  enum class Kind { Generic, NoTag, Tag };

  std::uint8_t length = 0;
  std::uint8_t command = 0;
  Bytes payload;
  std::uint8_t csum = 0;

  Kind kind() const {
    if (length == 2) return Kind::NoTag;
    if (length > 2) return Kind::Tag;
    return Kind::Generic;
  }
  std::uint8_t status() const { return payload.at(0); }
  std::uint8_t tag_type() const { return payload.at(0); }

  bool operator==(const ResponseFrame&) const = default;
};

// (length + command + sum(data)) mod 256.
std::uint8_t checksum(std::uint8_t length, std::uint8_t command,
                      std::span<const std::uint8_t> data);

// [length, command, data..., csum] with length = 1 + len(data).
// Throws CodecError::DataTooLong if len(data) > 16.
Bytes encode_command(const CommandFrame& frame);

// [slave_addr] ++ encode_command(frame). The bus write address must be even
// (the read address is slave_addr | 1). Throws CodecError::OddWriteAddress.
Bytes encode_write_payload(std::uint8_t slave_addr, const CommandFrame& frame);

// [length, command, payload..., csum] with length = 1 + len(payload).
Bytes encode_response(std::uint8_t command, std::span<const std::uint8_t> payload);

// Parses a raw response, skipping any leading 0x00 padding the device clocks
// out before the frame, and verifies the checksum.
// Throws CodecError: Empty (all padding), Truncated, BadChecksum.
ResponseFrame decode_response(std::span<const std::uint8_t> raw);

// Serial bytes of a tag response with the length, command, and tagType bytes
// trimmed, as a canonical TagId. Throws CodecError::BadSerialLength when the
// remaining serial is not 4 or 7 bytes (which also covers non-tag frames).
TagId extract_tag(const ResponseFrame& resp);

// Character-level scan over a hex transcription of a padded response: skip
// leading '0' characters, read the frame size from the single digit under
// the cursor, copy the frame region, then decode it. Agrees with
// decode_response for every well-formed frame whose length byte is <= 0x09;
// larger frames make the single-digit size read impossible and raise
// CodecError::UnsupportedLength.
ResponseFrame legacy_hex_scan(std::string_view hex_text);

}  // namespace rfidsim
