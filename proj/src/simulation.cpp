#include "rfidsim/simulation.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <thread>

#include "rfidsim/metrics.hpp"

namespace rfidsim {

namespace {

// The four node programs wired onto one virtual network. The PC node keeps
// the command it last issued, and parses responses with the same
// character-level hex scan the deployed portal script uses.
struct SimRig {
  VirtualNetwork net;
  Sm130Device device;
  SimReport report;
  DetectionSink& sink;
  const SimConfig& cfg;
  std::string current_cmd;

  SimRig(const SimConfig& config, const FieldSchedule& schedule,
         DetectionSink& detection_sink)
      : net(config.jitter_max, config.seed),
        device({config.slave_addr}, &schedule, [this] { return net.now(); }),
        sink(detection_sink),
        cfg(config) {
    net.set_trace(cfg.trace);

    net.register_node(cfg.polling_addr,
                      {{"poll", [this](const RpcArgs&) -> RpcValue {
                          ++report.polls;
                          net.rpc(kBridgeAddr, "ping");
                          return {};
                        }}});

    net.register_node(kBridgeAddr,
                      {{"ping", [this](const RpcArgs&) -> RpcValue {
                          net.rpc(kPcAddr, "selectTag");
                          return {};
                        }}});

    net.register_node(
        kPcAddr,
        {{"selectTag",
          [this](const RpcArgs&) -> RpcValue {
            Bytes frame = encode_write_payload(cfg.slave_addr,
                                               CommandFrame{kCmdSelectTag, {}});
            current_cmd = "selectTag";
            net.rpc_with_callback(kRfidNodeAddr, "receiveResult",
                                  "sendReceiveCommand",
                                  {static_cast<std::int64_t>(cfg.slave_addr),
                                   std::move(frame), std::string("selectTag")});
            return {};
          }},
         {"receiveResult", [this](const RpcArgs& args) -> RpcValue {
            receive_result(std::get<std::string>(args.at(0)));
            return {};
          }}});

    net.register_node(
        kRfidNodeAddr,
        {{"sendReceiveCommand", [this](const RpcArgs& args) -> RpcValue {
           auto slave = static_cast<std::uint8_t>(
               std::get<std::int64_t>(args.at(0)));
           const Bytes& frame = std::get<Bytes>(args.at(1));
           device.i2c_write(frame, 1, true);
           auto read_addr = static_cast<std::uint8_t>(slave | 1);
           std::optional<Bytes> data =
               device.i2c_read(read_addr, cfg.read_size, 4, true);
           return to_hex(data.value_or(Bytes(cfg.read_size, 0x00)));
         }}});
  }

  void receive_result(const std::string& hex_data) {
    if (current_cmd != "selectTag") return;
    ResponseFrame frame;
    try {
      frame = legacy_hex_scan(hex_data);
    } catch (const CodecError&) {
      return;  // nothing readable came back; the poll is simply lost
    }
    if (frame.kind() == ResponseFrame::Kind::Tag) {
      Timestamp ts(cfg.start_epoch +
                   static_cast<std::int64_t>(std::floor(net.now())));
      sink.append(ts, extract_tag(frame).hex());
      ++report.detections;
    } else {
      ++report.no_tag;
    }
  }

  void schedule_polls() {
    std::int64_t polls = interval_count(cfg.runtime, cfg.poll_delay);
    for (std::int64_t k = 0; k < polls; ++k) {
      net.schedule_rpc_at(static_cast<double>(k) * cfg.poll_delay,
                          cfg.polling_addr, "poll", {}, cfg.runtime);
    }
  }

  void drive(double horizon) {
    if (cfg.wall_clock) {
      auto start = std::chrono::steady_clock::now();
      net.run_until(horizon, [start](double t) {
        std::this_thread::sleep_until(
            start + std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                        std::chrono::duration<double>(t)));
      });
    } else {
      net.run_until(horizon);
    }
    report.losses = report.polls - report.detections - report.no_tag;
    report.last_write = device.last_write();
  }
};

}  // namespace

void SimConfig::validate() const {
  if (poll_delay <= 0) throw ConfigError("poll delay must be > 0");
  if (runtime <= 0) throw ConfigError("runtime must be > 0");
  if (poll_delay > runtime) {
    throw ConfigError("poll delay exceeds runtime; no poll would fire");
  }
  if (validation_delay <= 0) throw ConfigError("validation delay must be > 0");
  if (jitter_max < 0) throw ConfigError("jitter_max must be >= 0");
  if (slave_addr & 1) throw ConfigError("slave address must be even");
  if (read_size == 0) throw ConfigError("read size must be > 0");
}

std::string SimReport::summary() const {
  char buf[128];
  std::snprintf(buf, sizeof(buf),
                "polls=%lld detections=%lld no_tag=%lld losses=%lld",
                static_cast<long long>(polls),
                static_cast<long long>(detections),
                static_cast<long long>(no_tag),
                static_cast<long long>(losses));
  return buf;
}

SimReport run_simulation(const SimConfig& cfg, const FieldSchedule& schedule,
                         DetectionSink& sink) {
  cfg.validate();
  SimRig rig(cfg, schedule, sink);
  rig.schedule_polls();
  rig.drive(cfg.runtime);
  return rig.report;
}

CoRunReport run_with_validator(const SimConfig& cfg,
                               const FieldSchedule& schedule, DetectionLog& log,
                               const TagRegistry& registry,
                               const ValidationParams& validation) {
  cfg.validate();
  if (validation.interval <= 0) {
    throw ConfigError("scan interval must be > 0");
  }
  if (validation.duration < validation.interval) {
    throw ConfigError("duration must be >= scan interval");
  }
  LogSink sink(log);
  SimRig rig(cfg, schedule, sink);
  rig.schedule_polls();

  ValidationCounters counters;
  std::int64_t passes = interval_count(validation.duration, validation.interval);
  for (std::int64_t k = 0; k < passes; ++k) {
    rig.net.schedule_timer_at(
        static_cast<double>(k) * validation.interval, "validate",
        [&log, &registry, &counters] {
          for (const auto& [index, verdict] : validate_once(log, registry)) {
            (void)index;
            counters.count(verdict);
          }
          ++counters.passes;
        });
  }

  rig.drive(std::max(cfg.runtime, validation.duration));
  return CoRunReport{rig.report, counters};
}

}  // namespace rfidsim
