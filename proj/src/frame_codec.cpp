#include "rfidsim/frame_codec.hpp"

#include <algorithm>
#include <cstdio>

namespace rfidsim {

namespace {

constexpr char kHexDigits[] = "0123456789ABCDEF";

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  return -1;
}

}  // namespace

std::string to_hex(std::span<const std::uint8_t> bytes) {
  std::string out;
  out.reserve(bytes.size() * 2);
  for (std::uint8_t b : bytes) {
    out.push_back(kHexDigits[b >> 4]);
    out.push_back(kHexDigits[b & 0x0F]);
  }
  return out;
}

Bytes from_hex(std::string_view text) {
  if (text.size() % 2 != 0) {
    throw CodecError(CodecError::Kind::BadHex,
                     "hex text has odd length " + std::to_string(text.size()));
  }
  Bytes out;
  out.reserve(text.size() / 2);
  for (std::size_t i = 0; i < text.size(); i += 2) {
    int hi = hex_value(text[i]);
    int lo = hex_value(text[i + 1]);
    if (hi < 0 || lo < 0) {
      throw CodecError(CodecError::Kind::BadHex,
                       std::string("invalid hex character '") + text[i + (hi < 0 ? 0 : 1)] + "'");
    }
    out.push_back(static_cast<std::uint8_t>(hi << 4 | lo));
  }
  return out;
}

TagId TagId::from_bytes(Bytes serial) {
  if (serial.size() != 4 && serial.size() != 7) {
    throw CodecError(CodecError::Kind::BadSerialLength,
                     "tag serial must be 4 or 7 bytes, got " +
                         std::to_string(serial.size()));
  }
  return TagId(std::move(serial));
}

TagId TagId::from_hex(std::string_view text) {
  return from_bytes(rfidsim::from_hex(text));
}

std::uint8_t checksum(std::uint8_t length, std::uint8_t command,
                      std::span<const std::uint8_t> data) {
  unsigned sum = length + command;
  for (std::uint8_t b : data) sum += b;
  return static_cast<std::uint8_t>(sum & 0xFF);
}

Bytes encode_command(const CommandFrame& frame) {
  if (frame.data.size() > kMaxFrameData) {
    throw CodecError(CodecError::Kind::DataTooLong,
                     "command data exceeds " + std::to_string(kMaxFrameData) +
                         " bytes: " + std::to_string(frame.data.size()));
  }
  auto length = static_cast<std::uint8_t>(1 + frame.data.size());
  Bytes out;
  out.reserve(frame.data.size() + 3);
  out.push_back(length);
  out.push_back(frame.command);
  out.insert(out.end(), frame.data.begin(), frame.data.end());
  out.push_back(checksum(length, frame.command, frame.data));
  return out;
}

Bytes encode_write_payload(std::uint8_t slave_addr, const CommandFrame& frame) {
  if (slave_addr & 1) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "write address 0x%02X is odd", slave_addr);
    throw CodecError(CodecError::Kind::OddWriteAddress, buf);
  }
  Bytes out = encode_command(frame);
  out.insert(out.begin(), slave_addr);
  return out;
}

Bytes encode_response(std::uint8_t command, std::span<const std::uint8_t> payload) {
  auto length = static_cast<std::uint8_t>(1 + payload.size());
  Bytes out;
  out.reserve(payload.size() + 3);
  out.push_back(length);
  out.push_back(command);
  out.insert(out.end(), payload.begin(), payload.end());
  out.push_back(checksum(length, command, payload));
  return out;
}

ResponseFrame decode_response(std::span<const std::uint8_t> raw) {
  std::size_t i = 0;
  while (i < raw.size() && raw[i] == 0x00) ++i;
  if (i == raw.size()) {
    throw CodecError(CodecError::Kind::Empty, "response is all padding");
  }
  std::span<const std::uint8_t> frame = raw.subspan(i);
  std::uint8_t length = frame[0];
  // [length, command, payload(length - 1), csum]
  std::size_t total = static_cast<std::size_t>(length) + 2;
  if (frame.size() < total) {
    throw CodecError(CodecError::Kind::Truncated,
                     "frame demands " + std::to_string(total) + " bytes, " +
                         std::to_string(frame.size()) + " available");
  }
  ResponseFrame resp;
  resp.length = length;
  resp.command = frame[1];
  resp.payload.assign(frame.begin() + 2, frame.begin() + total - 1);
  resp.csum = frame[total - 1];
  std::uint8_t expect = checksum(resp.length, resp.command, resp.payload);
  if (resp.csum != expect) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "checksum 0x%02X, expected 0x%02X",
                  resp.csum, expect);
    throw CodecError(CodecError::Kind::BadChecksum, buf);
  }
  return resp;
}

TagId extract_tag(const ResponseFrame& resp) {
  if (resp.kind() != ResponseFrame::Kind::Tag) {
    throw CodecError(CodecError::Kind::BadSerialLength,
                     "frame with length " + std::to_string(resp.length) +
                         " carries no tag serial");
  }
  return TagId::from_bytes(Bytes(resp.payload.begin() + 1, resp.payload.end()));
}

ResponseFrame legacy_hex_scan(std::string_view hex_text) {
  std::size_t i = 0;
  while (i < hex_text.size() && hex_text[i] == '0') ++i;
  if (i == hex_text.size()) {
    throw CodecError(CodecError::Kind::Empty, "hex text is all padding");
  }
  char size_char = hex_text[i];
  if (size_char < '1' || size_char > '9') {
    throw CodecError(CodecError::Kind::UnsupportedLength,
                     std::string("size digit '") + size_char +
                         "' outside 1-9; scan handles length <= 0x09 only");
  }
  std::size_t package_size = static_cast<std::size_t>(size_char - '0');
  // The skipped run of '0' characters ate the high nibble of the length
  // byte; restore it, then copy the rest of the frame: length, command,
  // payload, and CSUM span (package_size + 2) bytes in total.
  std::size_t want = (package_size + 2) * 2 - 1;
  if (hex_text.size() - i < want) {
    throw CodecError(CodecError::Kind::Truncated,
                     "hex frame region needs " + std::to_string(want) +
                         " characters, " + std::to_string(hex_text.size() - i) +
                         " available");
  }
  std::string clean = "0";
  clean.append(hex_text.substr(i, want));
  Bytes raw = from_hex(clean);
  return decode_response(raw);
}

}  // namespace rfidsim
