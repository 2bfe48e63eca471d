#pragma once

#include <atomic>
#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <span>
#include <variant>
#include <vector>

#include "qkdn/netsim/barrier.hpp"
#include "qkdn/netsim/envelope.hpp"

namespace qkdn::netsim {

class UnknownRecipient : public Error {
 public:
  using Error::Error;
};
class Backpressure : public Error {
 public:
  using Error::Error;
};
class ChannelDown : public Error {
 public:
  using Error::Error;
};

struct ZeroLatency {};
struct FixedLatency {
  std::chrono::microseconds delay{0};
};
/// Delay proportional to the hop distance between sender and recipient.
struct PerHopLatency {
  std::chrono::microseconds per_hop{0};
};
using LatencyModel = std::variant<ZeroLatency, FixedLatency, PerHopLatency>;

enum class TimeMode {
  kReal,     // delivery waits out the latency on the wall clock
  kVirtual,  // delivery is immediate; distribution messages advance per-node virtual clocks
};

struct ChannelConfig {
  LatencyModel latency = ZeroLatency{};
  std::size_t capacity = 1024;
  TimeMode time_mode = TimeMode::kReal;

  /// Throws InvalidArgument on negative latency or zero capacity.
  void validate() const;
  [[nodiscard]] static ChannelConfig fixed_us(std::int64_t us);
};

/// In-process classical network: one bounded FIFO mailbox per node. Any
/// number of threads may send concurrently; each mailbox has one reader.
class Channel {
 public:
  using Clock = std::chrono::steady_clock;
  using HopDistance = std::function<int(const NodeId&, const NodeId&)>;

  explicit Channel(ChannelConfig config = {});
  ~Channel();
  Channel(const Channel&) = delete;
  Channel& operator=(const Channel&) = delete;

  [[nodiscard]] const ChannelConfig& config() const { return config_; }

  /// Idempotent.
  void register_node(const NodeId& node);
  [[nodiscard]] bool has_node(const NodeId& node) const;

  /// Used by PerHopLatency; defaults to 1 hop for every pair.
  void set_hop_distance(HopDistance distance);

  /// Asynchronous: never blocks the sender. Throws UnknownRecipient,
  /// Backpressure when the mailbox is full, ChannelDown after shutdown().
  void send(Envelope env);

  /// Blocks for the oldest deliverable envelope. Envelopes from one sender are
  /// returned in send order. Throws Timeout or ChannelDown.
  Envelope recv(const NodeId& node, std::chrono::microseconds timeout);

  /// Non-blocking recv.
  std::optional<Envelope> try_recv(const NodeId& node);

  [[nodiscard]] std::size_t pending(const NodeId& node) const;

  /// Wakes every blocked receiver with ChannelDown; later sends fail.
  void shutdown();
  [[nodiscard]] bool is_down() const;

  /// Virtual time seen by `node` (TimeMode::kVirtual only).
  [[nodiscard]] std::chrono::microseconds virtual_now(const NodeId& node) const;

  /// Records every successfully sent envelope in global send order.
  void set_wiretap(bool enabled);
  std::vector<Envelope> drain_wiretap();

  /// Barrier over registered nodes; throws UnknownRecipient otherwise.
  [[nodiscard]] std::unique_ptr<Barrier> make_barrier(std::span<const NodeId> nodes) const;

 private:
  struct Pending {
    Envelope env;
    Clock::time_point deliver_at;
    std::chrono::microseconds virtual_deliver_at{0};
    std::uint64_t seq = 0;
  };
  struct Mailbox {
    mutable std::mutex mu;
    std::condition_variable cv;
    std::vector<Pending> queue;
    std::chrono::microseconds virtual_clock{0};
  };

  Mailbox& mailbox(const NodeId& node) const;
  std::chrono::microseconds latency_for(const Envelope& env) const;
  std::optional<Envelope> pop_ready(Mailbox& box, Clock::time_point now,
                                    Clock::time_point* next_due);

  ChannelConfig config_;
  HopDistance hop_distance_;
  mutable std::shared_mutex nodes_mu_;
  std::map<NodeId, std::unique_ptr<Mailbox>> mailboxes_;
  std::atomic<std::uint64_t> next_seq_{0};
  std::atomic<bool> down_{false};

  std::mutex tap_mu_;
  std::atomic<bool> tap_enabled_{false};
  std::vector<Envelope> tap_;
};

/// Free-function forms of the channel operations.
void send(Channel& channel, Envelope env);
Envelope recv(Channel& channel, const NodeId& node, std::chrono::microseconds timeout);

}  // namespace qkdn::netsim
