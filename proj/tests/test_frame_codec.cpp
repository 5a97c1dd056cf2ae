#include "rfidsim/frame_codec.hpp"

#include <doctest.h>

#include <random>

using namespace rfidsim;

namespace {

// Independent checksum oracle: sum every encoded byte except the final one.
std::uint8_t byte_sum_oracle(const Bytes& encoded) {
  unsigned sum = 0;
  for (std::size_t i = 0; i + 1 < encoded.size(); ++i) sum += encoded[i];
  return static_cast<std::uint8_t>(sum & 0xFF);
}

CommandFrame random_frame(std::mt19937& rng, std::size_t max_data = 16) {
  CommandFrame f;
  f.command = static_cast<std::uint8_t>(rng() & 0xFF);
  std::size_t len = rng() % (max_data + 1);
  f.data.resize(len);
  for (auto& b : f.data) b = static_cast<std::uint8_t>(rng() & 0xFF);
  return f;
}

}  // namespace

TEST_CASE("checksum is byte sum mod 256") {
  CHECK(checksum(0x01, 0x83, {}) == 0x84);
  CHECK(checksum(0x00, 0x00, {}) == 0x00);
  Bytes ff{0xFF, 0xFF};
  CHECK(checksum(0x03, 0x85, ff) == 0x86);  // 646 mod 256
}

TEST_CASE("encode_command produces [length, command, data, csum]") {
  CHECK(encode_command({0x83, {}}) == Bytes{0x01, 0x83, 0x84});
  CHECK(encode_command({0x80, {}}) == Bytes{0x01, 0x80, 0x81});
  CHECK(encode_command({0x85, {0xAA}}) == Bytes{0x02, 0x85, 0xAA, 0x31});

  CommandFrame too_long{0x83, Bytes(17, 0x00)};
  CHECK_THROWS_AS(encode_command(too_long), CodecError);
  try {
    encode_command(too_long);
  } catch (const CodecError& e) {
    CHECK(e.kind() == CodecError::Kind::DataTooLong);
  }
}

TEST_CASE("encode_write_payload prefixes the even bus address") {
  CommandFrame select{0x83, {}};
  CHECK(encode_write_payload(0x42, select) == Bytes{0x42, 0x01, 0x83, 0x84});
  CHECK(encode_write_payload(0x00, select) == Bytes{0x00, 0x01, 0x83, 0x84});
  try {
    encode_write_payload(0x43, select);
    FAIL("expected OddWriteAddress");
  } catch (const CodecError& e) {
    CHECK(e.kind() == CodecError::Kind::OddWriteAddress);
  }
}

TEST_CASE("decode_response classifies by length") {
  SUBCASE("length 2 is a no-tag response") {
    Bytes raw{0x02, 0x83, 0x4E, 0xD3};
    ResponseFrame resp = decode_response(raw);
    CHECK(resp.kind() == ResponseFrame::Kind::NoTag);
    CHECK(resp.status() == 0x4E);
  }
  SUBCASE("leading padding is skipped and length > 2 carries a tag") {
    Bytes raw{0x00, 0x00, 0x06, 0x83, 0x02, 0xAA, 0xBB, 0xCC, 0xDD, 0x99};
    ResponseFrame resp = decode_response(raw);
    CHECK(resp.kind() == ResponseFrame::Kind::Tag);
    CHECK(resp.tag_type() == 0x02);
    CHECK(extract_tag(resp).hex() == "AABBCCDD");
  }
  SUBCASE("corrupted csum") {
    Bytes raw{0x06, 0x83, 0x02, 0xAA, 0xBB, 0xCC, 0xDD, 0x00};
    try {
      decode_response(raw);
      FAIL("expected BadChecksum");
    } catch (const CodecError& e) {
      CHECK(e.kind() == CodecError::Kind::BadChecksum);
    }
  }
  SUBCASE("fewer bytes than the length byte demands") {
    Bytes raw{0x06, 0x83, 0x02, 0xAA};
    try {
      decode_response(raw);
      FAIL("expected Truncated");
    } catch (const CodecError& e) {
      CHECK(e.kind() == CodecError::Kind::Truncated);
    }
  }
  SUBCASE("all padding") {
    Bytes raw(12, 0x00);
    try {
      decode_response(raw);
      FAIL("expected Empty");
    } catch (const CodecError& e) {
      CHECK(e.kind() == CodecError::Kind::Empty);
    }
  }
}

TEST_CASE("extract_tag trims length, command, and tagType") {
  SUBCASE("4-byte serial") {
    Bytes body{0x02, 0xAA, 0xBB, 0xCC, 0xDD};
    ResponseFrame resp = decode_response(encode_response(0x83, body));
    CHECK(extract_tag(resp).hex() == "AABBCCDD");
  }
  SUBCASE("7-byte serial gives a 14-char tag") {
    Bytes body{0x02, 0x04, 0x88, 0x15, 0x2A, 0x3B, 0x4C, 0x5D};
    Bytes raw = encode_response(0x83, body);
    CHECK(raw[0] == 0x09);
    ResponseFrame resp = decode_response(raw);
    CHECK(extract_tag(resp).hex() == "0488152A3B4C5D");
    CHECK(extract_tag(resp).hex().size() == 14);
  }
  SUBCASE("3-byte serial is malformed") {
    Bytes body{0x02, 0xAA, 0xBB, 0xCC};
    ResponseFrame resp = decode_response(encode_response(0x83, body));
    try {
      extract_tag(resp);
      FAIL("expected BadSerialLength");
    } catch (const CodecError& e) {
      CHECK(e.kind() == CodecError::Kind::BadSerialLength);
    }
  }
}

TEST_CASE("legacy_hex_scan replicates the character-level parse") {
  SUBCASE("padded tag frame") {
    ResponseFrame resp = legacy_hex_scan("000006830" "2AABBCCDD99");
    CHECK(resp.kind() == ResponseFrame::Kind::Tag);
    CHECK(extract_tag(resp).hex() == "AABBCCDD");
  }
  SUBCASE("no-tag frame") {
    ResponseFrame resp = legacy_hex_scan("0002834ED3");
    CHECK(resp.kind() == ResponseFrame::Kind::NoTag);
  }
  SUBCASE("all padding") {
    try {
      legacy_hex_scan("0000");
      FAIL("expected Empty");
    } catch (const CodecError& e) {
      CHECK(e.kind() == CodecError::Kind::Empty);
    }
  }
  SUBCASE("length byte above 0x09 is out of the scan's reach") {
    CommandFrame f{0x83, Bytes(9, 0x11)};  // length byte 0x0A
    Bytes raw = encode_command(f);
    try {
      legacy_hex_scan(to_hex(raw));
      FAIL("expected UnsupportedLength");
    } catch (const CodecError& e) {
      CHECK(e.kind() == CodecError::Kind::UnsupportedLength);
    }
  }
}

TEST_CASE("property: encode/decode round trip with checksum oracle") {
  std::mt19937 rng(7);
  for (int i = 0; i < 2000; ++i) {
    CommandFrame f = random_frame(rng);
    Bytes raw = encode_command(f);
    CHECK(raw[0] == 1 + f.data.size());
    CHECK(raw.back() == byte_sum_oracle(raw));
    ResponseFrame resp = decode_response(raw);
    CHECK(resp.command == f.command);
    CHECK(resp.payload == f.data);
  }
}

TEST_CASE("property: appending a data byte moves the csum by b + 1") {
  std::mt19937 rng(11);
  for (int i = 0; i < 500; ++i) {
    CommandFrame f = random_frame(rng, 15);
    auto b = static_cast<std::uint8_t>(rng() & 0xFF);
    Bytes before = encode_command(f);
    f.data.push_back(b);
    Bytes after = encode_command(f);
    CHECK(after.back() ==
          static_cast<std::uint8_t>((before.back() + b + 1) & 0xFF));
  }
}

TEST_CASE("property: leading zero padding is transparent to decode") {
  std::mt19937 rng(13);
  for (int i = 0; i < 500; ++i) {
    CommandFrame f = random_frame(rng);
    Bytes raw = encode_command(f);
    ResponseFrame bare = decode_response(raw);
    Bytes padded(rng() % 9, 0x00);
    padded.insert(padded.end(), raw.begin(), raw.end());
    CHECK(decode_response(padded) == bare);
  }
}

TEST_CASE("property: legacy scan agrees with decode for length <= 0x09") {
  std::mt19937 rng(17);
  for (int i = 0; i < 1000; ++i) {
    CommandFrame f = random_frame(rng, 8);  // length byte 1..9
    Bytes raw = encode_command(f);
    Bytes padded(rng() % 5, 0x00);
    padded.insert(padded.end(), raw.begin(), raw.end());
    ResponseFrame via_bytes = decode_response(padded);
    ResponseFrame via_scan = legacy_hex_scan(to_hex(padded));
    CHECK(via_scan == via_bytes);
  }
}

TEST_CASE("property: extracted tags are 8 or 14 uppercase hex chars") {
  std::mt19937 rng(19);
  for (int i = 0; i < 500; ++i) {
    std::size_t serial_len = (rng() & 1) ? 4 : 7;
    Bytes body{0x02};
    for (std::size_t j = 0; j < serial_len; ++j) {
      body.push_back(static_cast<std::uint8_t>(rng() & 0xFF));
    }
    std::string hex = extract_tag(decode_response(encode_response(0x83, body))).hex();
    CHECK((hex.size() == 8 || hex.size() == 14));
    for (char c : hex) {
      CHECK(((c >= '0' && c <= '9') || (c >= 'A' && c <= 'F')));
    }
  }
}

TEST_CASE("hex transcription") {
  Bytes raw{0x00, 0x1A, 0xFF};
  CHECK(to_hex(raw) == "001AFF");
  CHECK(from_hex("001AFF") == raw);
  CHECK(from_hex("001aff") == raw);
  CHECK_THROWS_AS(from_hex("0G"), CodecError);
  CHECK_THROWS_AS(from_hex("ABC"), CodecError);
}

TEST_CASE("TagId validates serial length") {
  CHECK(TagId::from_hex("aabbccdd").hex() == "AABBCCDD");
  CHECK_THROWS_AS(TagId::from_hex("AABBCC"), CodecError);
  CHECK_THROWS_AS(TagId::from_bytes({0x01, 0x02}), CodecError);
}
