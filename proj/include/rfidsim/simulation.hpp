#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "rfidsim/access_log.hpp"
#include "rfidsim/frame_codec.hpp"
#include "rfidsim/rfid_device.hpp"
#include "rfidsim/sim_net.hpp"
#include "rfidsim/tag_registry.hpp"
#include "rfidsim/validator.hpp"

namespace rfidsim {

// Default wiring. Bridge, PC, and RFID-node addresses are fixed by the
// deployed node scripts; the polling node's is free to configure.
inline constexpr NodeAddress kBridgeAddr{{0x00, 0x14, 0x62}};
inline constexpr NodeAddress kPcAddr{{0x00, 0x00, 0x01}};
inline constexpr NodeAddress kRfidNodeAddr{{0x00, 0x55, 0x4B}};
inline constexpr NodeAddress kDefaultPollingAddr{{0x00, 0xC0, 0xDE}};

// 2010-07-15 00:00:00 UTC; detections are stamped start_epoch + floor(t).
inline constexpr std::int64_t kDefaultStartEpoch = 1279152000;

struct SimConfig {
  double poll_delay = 2.0;
  double runtime = 0;
  double validation_delay = 2.0;  // co-run validator scan interval
  double jitter_max = 0.0;        // per-hop delay upper bound, seconds
  std::uint64_t seed = 0;
  std::uint8_t slave_addr = kDefaultSlaveAddr;
  std::size_t read_size = kDefaultReadSize;
  NodeAddress polling_addr = kDefaultPollingAddr;
  std::int64_t start_epoch = kDefaultStartEpoch;
  bool wall_clock = false;   // pace events against real time
  std::ostream* trace = nullptr;

  void validate() const;  // ConfigError
};

struct SimReport {
  std::int64_t polls = 0;
  std::int64_t detections = 0;
  std::int64_t no_tag = 0;
  std::int64_t losses = 0;  // chains cut off by the runtime boundary
  Bytes last_write;         // final I2C write payload, for inspection

  // `polls=<n> detections=<n> no_tag=<n> losses=<n>`
  std::string summary() const;
};

// Where the PC node's detections land. The file log implements this; tests
// and the report runner use the in-memory sink.
class DetectionSink {
 public:
  virtual ~DetectionSink() = default;
  virtual void append(Timestamp ts, const std::string& tag_hex) = 0;
};

class LogSink : public DetectionSink {
 public:
  explicit LogSink(DetectionLog& log) : log_(log) {}
  void append(Timestamp ts, const std::string& tag_hex) override {
    log_.append_detection(ts, tag_hex);
  }

 private:
  DetectionLog& log_;
};

class MemorySink : public DetectionSink {
 public:
  void append(Timestamp ts, const std::string& tag_hex) override {
    entries_.push_back(LogEntry{ts, tag_hex, std::nullopt});
  }
  const std::vector<LogEntry>& entries() const { return entries_; }

 private:
  std::vector<LogEntry> entries_;
};

// Runs the full polling chain (Polling -> Bridge -> PC -> RFID node -> PC)
// against a virtual clock from 0 to cfg.runtime. Polls fire at t = 0,
// poll_delay, 2*poll_delay, ...; floor(runtime / poll_delay) in total.
SimReport run_simulation(const SimConfig& cfg, const FieldSchedule& schedule,
                         DetectionSink& sink);

// Same chain, with the validator's periodic passes interleaved on the shared
// timeline. The two sides talk only through the log file, as two processes
// would. The validator runs until `validation.duration`, which should extend
// past cfg.runtime to drain the final detections.
struct CoRunReport {
  SimReport sim;
  ValidationCounters validation;
};
CoRunReport run_with_validator(const SimConfig& cfg,
                               const FieldSchedule& schedule, DetectionLog& log,
                               const TagRegistry& registry,
                               const ValidationParams& validation);

}  // namespace rfidsim
