#include "rfidsim/rfid_device.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <utility>

namespace rfidsim {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

}  // namespace

FieldSchedule FieldSchedule::parse(std::string_view text) {
  FieldSchedule schedule;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    ++line_no;
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;

    std::size_t hash = line.find('#');
    if (hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    std::istringstream fields{std::string(line)};
    std::string tag_hex;
    double t_start = 0, t_end = 0;
    if (!(fields >> tag_hex >> t_start >> t_end) || !(fields >> std::ws).eof()) {
      throw ParseError(line_no, "expected `<tag-hex> <t_start> <t_end>`");
    }
    if (t_start < 0 || t_end < 0) {
      throw ParseError(line_no, "times must be non-negative");
    }
    if (!(t_start < t_end)) {
      throw ParseError(line_no, "interval start must precede end");
    }
    try {
      schedule.entries_.push_back(Entry{TagId::from_hex(tag_hex), t_start, t_end});
    } catch (const CodecError& e) {
      throw ParseError(line_no, e.what());
    }
  }
  return schedule;
}

FieldSchedule FieldSchedule::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ConfigError("cannot open scenario file " + path.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

void FieldSchedule::add(Entry entry) {
  if (!(entry.t_start < entry.t_end)) {
    throw ConfigError("field interval start must precede end");
  }
  entries_.push_back(std::move(entry));
}

std::optional<TagId> FieldSchedule::tag_at(double t) const {
  const Entry* hit = nullptr;
  for (const Entry& e : entries_) {
    if (t >= e.t_start && t < e.t_end) {
      if (hit) {
        char buf[96];
        std::snprintf(buf, sizeof(buf),
                      "two field intervals overlap at t=%.3f", t);
        throw ConfigError(buf);
      }
      hit = &e;
    }
  }
  if (!hit) return std::nullopt;
  return hit->tag;
}

Sm130Device::Sm130Device(Options options, const FieldSchedule* schedule,
                         std::function<double()> clock)
    : options_(std::move(options)),
      schedule_(schedule),
      clock_(std::move(clock)) {
  if (options_.slave_addr & 1) {
    throw ConfigError("device slave address must be even");
  }
}

std::size_t Sm130Device::i2c_write(std::span<const std::uint8_t> payload,
                                   int retries, bool ignore_first_ack) {
  last_retries_ = retries;
  last_ignore_first_ack_ = ignore_first_ack;
  if (payload.empty() || payload[0] != options_.slave_addr) {
    return 0;  // no ack, however many retries
  }
  last_write_.assign(payload.begin(), payload.end());
  CommandFrame frame;
  try {
    ResponseFrame decoded = decode_response(payload.subspan(1));
    frame.command = decoded.command;
    frame.data = decoded.payload;
  } catch (const CodecError&) {
    pending_.clear();
    return payload.size();
  }
  if (frame.command == kCmdSelectTag) {
    std::optional<TagId> tag = schedule_ ? schedule_->tag_at(clock_())
                                         : std::nullopt;
    if (tag) {
      Bytes body;
      body.push_back(options_.tag_type);
      body.insert(body.end(), tag->bytes().begin(), tag->bytes().end());
      pending_ = encode_response(kCmdSelectTag, body);
    } else {
      Bytes body{options_.no_tag_status};
      pending_ = encode_response(kCmdSelectTag, body);
    }
  } else {
    pending_.clear();
  }
  return payload.size();
}

std::optional<Bytes> Sm130Device::i2c_read(std::uint8_t addr_byte,
                                           std::size_t num_to_read,
                                           int retries, bool ignore_first_ack) {
  last_retries_ = retries;
  last_ignore_first_ack_ = ignore_first_ack;
  if (addr_byte != (options_.slave_addr | 1)) {
    return std::nullopt;  // read address is write address | 1
  }
  Bytes out(num_to_read, 0x00);
  if (pending_.size() >= num_to_read) {
    std::copy(pending_.begin(), pending_.begin() + num_to_read, out.begin());
  } else {
    std::copy(pending_.begin(), pending_.end(),
              out.begin() + (num_to_read - pending_.size()));
  }
  pending_.clear();
  return out;
}

}  // namespace rfidsim
