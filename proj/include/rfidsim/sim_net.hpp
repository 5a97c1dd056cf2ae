#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <ostream>
#include <queue>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "rfidsim/errors.hpp"
#include "rfidsim/frame_codec.hpp"

namespace rfidsim {

// 3-byte node identity; text form "AA:BB:CC".
struct NodeAddress {
  std::array<std::uint8_t, 3> bytes{};

  static std::optional<NodeAddress> parse(std::string_view text);
  std::string str() const;

  auto operator<=>(const NodeAddress&) const = default;
};

// Values an RPC can carry: nothing, an integer, a text token, or a raw byte
// string (the I2C frame travels as bytes, its response as hex text).
using RpcValue = std::variant<std::monostate, std::int64_t, std::string, Bytes>;
using RpcArgs = std::vector<RpcValue>;
using RpcHandler = std::function<RpcValue(const RpcArgs&)>;

inline constexpr double kNoDeadline = std::numeric_limits<double>::infinity();

// Discrete-event virtual network. One driver owns the event loop and advances
// the virtual clock; handlers run inline when their event fires and may issue
// further RPCs. Events at equal timestamps fire in insertion order.
//
// An optional per-hop jitter draws an independent delay from
// [0, jitter_max] for every RPC hop; the generator is seeded, so a run is
// reproducible. Messages to unknown addresses or functions are counted and
// dropped, like a radio send to a silent node. Each event carries a deadline
// (inherited along call chains): events whose time has passed their deadline
// are discarded unexecuted, which is how a program's configured runtime cuts
// off in-flight chains.
class VirtualNetwork {
 public:
  explicit VirtualNetwork(double jitter_max = 0.0, std::uint64_t seed = 0);

  // Throws NetError::DuplicateAddress.
  void register_node(NodeAddress addr, std::map<std::string, RpcHandler> handlers);

  // Fire-and-forget call from the currently dispatching node; the message is
  // delivered one jittered hop later.
  void rpc(NodeAddress dest, std::string function, RpcArgs args = {});

  // Two-legged call: dest runs remote_fn(args), and its return value comes
  // back to the caller as rpc(caller, callback, [result]) one further hop
  // later. Must be issued from within a handler (the caller's address is the
  // node being dispatched).
  void rpc_with_callback(NodeAddress dest, std::string callback,
                         std::string remote_fn, RpcArgs args = {});

  // Driver-side scheduling at an absolute virtual time.
  void schedule_rpc_at(double t, NodeAddress dest, std::string function,
                       RpcArgs args = {}, double deadline = kNoDeadline);
  void schedule_timer_at(double t, std::string name, std::function<void()> fn,
                         double deadline = kNoDeadline);

  // Executes one queued event (or discards it if it outlived its deadline).
  // Returns the event's timestamp, or nullopt when idle.
  std::optional<double> step();

  // Processes every event with timestamp < horizon. `pacer`, when given, is
  // called with each event time before it fires (wall-clock mode sleeps in
  // it).
  void run_until(double horizon,
                 const std::function<void(double)>& pacer = {});

  double now() const { return now_; }
  bool idle() const { return queue_.empty(); }

  // Messages dropped for an unknown address or function.
  std::uint64_t undeliverable() const { return undeliverable_; }
  // Events discarded because their deadline had passed.
  std::uint64_t expired() const { return expired_; }

  void set_trace(std::ostream* trace) { trace_ = trace; }

 private:
  struct Event {
    double t = 0;
    std::uint64_t seq = 0;
    double deadline = kNoDeadline;
    NodeAddress src;
    NodeAddress dst;
    std::string function;
    RpcArgs args;
    // Set on the request leg of rpc_with_callback.
    std::optional<std::pair<NodeAddress, std::string>> reply_to;
    // Timer events carry code instead of a destination.
    std::function<void()> timer;
  };
  struct Later {
    bool operator()(const Event& a, const Event& b) const {
      if (a.t != b.t) return a.t > b.t;
      return a.seq > b.seq;
    }
  };

  double hop_delay();
  void push(Event e);
  void dispatch(Event& e);

  std::priority_queue<Event, std::vector<Event>, Later> queue_;
  std::map<NodeAddress, std::map<std::string, RpcHandler>> nodes_;
  double now_ = 0;
  std::uint64_t next_seq_ = 0;
  double jitter_max_;
  std::mt19937_64 rng_;
  const Event* current_ = nullptr;
  std::uint64_t undeliverable_ = 0;
  std::uint64_t expired_ = 0;
  std::ostream* trace_ = nullptr;
};

}  // namespace rfidsim
