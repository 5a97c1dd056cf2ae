#include "rfidsim/sim_net.hpp"

#include <cstdio>
#include <utility>

namespace rfidsim {

std::optional<NodeAddress> NodeAddress::parse(std::string_view text) {
  if (text.size() != 8 || text[2] != ':' || text[5] != ':') return std::nullopt;
  auto nibble = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    return -1;
  };
  NodeAddress addr;
  for (int i = 0; i < 3; ++i) {
    int hi = nibble(text[i * 3]);
    int lo = nibble(text[i * 3 + 1]);
    if (hi < 0 || lo < 0) return std::nullopt;
    addr.bytes[i] = static_cast<std::uint8_t>(hi << 4 | lo);
  }
  return addr;
}

std::string NodeAddress::str() const {
  char buf[9];
  std::snprintf(buf, sizeof(buf), "%02X:%02X:%02X", bytes[0], bytes[1],
                bytes[2]);
  return buf;
}

VirtualNetwork::VirtualNetwork(double jitter_max, std::uint64_t seed)
    : jitter_max_(jitter_max), rng_(seed) {
  if (jitter_max < 0) throw ConfigError("jitter_max must be >= 0");
}

void VirtualNetwork::register_node(NodeAddress addr,
                                   std::map<std::string, RpcHandler> handlers) {
  auto [it, inserted] = nodes_.emplace(addr, std::move(handlers));
  if (!inserted) {
    throw NetError(NetError::Kind::DuplicateAddress,
                   "address " + addr.str() + " already registered");
  }
}

double VirtualNetwork::hop_delay() {
  if (jitter_max_ <= 0) return 0.0;
  // Fixed 53-bit mapping; keeps the draw sequence identical across standard
  // library implementations.
  double u = static_cast<double>(rng_() >> 11) * 0x1.0p-53;
  return u * jitter_max_;
}

void VirtualNetwork::push(Event e) {
  e.seq = next_seq_++;
  queue_.push(std::move(e));
}

void VirtualNetwork::rpc(NodeAddress dest, std::string function,
                         RpcArgs args) {
  Event e;
  e.t = now_ + hop_delay();
  e.deadline = current_ ? current_->deadline : kNoDeadline;
  e.src = current_ ? current_->dst : dest;
  e.dst = dest;
  e.function = std::move(function);
  e.args = std::move(args);
  push(std::move(e));
}

void VirtualNetwork::rpc_with_callback(NodeAddress dest, std::string callback,
                                       std::string remote_fn, RpcArgs args) {
  if (!current_) {
    throw NetError(NetError::Kind::NoCurrentNode,
                   "rpc_with_callback needs a dispatching node to return to");
  }
  Event e;
  e.t = now_ + hop_delay();
  e.deadline = current_->deadline;
  e.src = current_->dst;
  e.dst = dest;
  e.function = std::move(remote_fn);
  e.args = std::move(args);
  e.reply_to = {{current_->dst, std::move(callback)}};
  push(std::move(e));
}

void VirtualNetwork::schedule_rpc_at(double t, NodeAddress dest,
                                     std::string function, RpcArgs args,
                                     double deadline) {
  Event e;
  e.t = t;
  e.deadline = deadline;
  e.src = dest;
  e.dst = dest;
  e.function = std::move(function);
  e.args = std::move(args);
  push(std::move(e));
}

void VirtualNetwork::schedule_timer_at(double t, std::string name,
                                       std::function<void()> fn,
                                       double deadline) {
  Event e;
  e.t = t;
  e.deadline = deadline;
  e.function = std::move(name);
  e.timer = std::move(fn);
  push(std::move(e));
}

std::optional<double> VirtualNetwork::step() {
  if (queue_.empty()) return std::nullopt;
  Event e = queue_.top();
  queue_.pop();
  now_ = e.t;
  if (e.t >= e.deadline) {
    ++expired_;
    return e.t;
  }
  dispatch(e);
  return e.t;
}

void VirtualNetwork::dispatch(Event& e) {
  if (e.timer) {
    if (trace_) {
      char buf[32];
      std::snprintf(buf, sizeof(buf), "t=%.3f timer ", e.t);
      *trace_ << buf << e.function << '\n';
    }
    e.timer();
    return;
  }
  if (trace_) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "t=%.3f ", e.t);
    *trace_ << buf << e.src.str() << "->" << e.dst.str() << ' ' << e.function
            << '\n';
  }
  auto node = nodes_.find(e.dst);
  if (node == nodes_.end()) {
    ++undeliverable_;
    return;
  }
  auto handler = node->second.find(e.function);
  if (handler == node->second.end()) {
    ++undeliverable_;
    return;
  }
  current_ = &e;
  RpcValue result = handler->second(e.args);
  current_ = nullptr;
  if (e.reply_to) {
    Event reply;
    reply.t = now_ + hop_delay();
    reply.deadline = e.deadline;
    reply.src = e.dst;
    reply.dst = e.reply_to->first;
    reply.function = e.reply_to->second;
    reply.args = {std::move(result)};
    push(std::move(reply));
  }
}

void VirtualNetwork::run_until(double horizon,
                               const std::function<void(double)>& pacer) {
  while (!queue_.empty() && queue_.top().t < horizon) {
    if (pacer) pacer(queue_.top().t);
    step();
  }
}

}  // namespace rfidsim
