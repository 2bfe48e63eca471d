#include "qkdn/netsim/channel.hpp"

#include <algorithm>

namespace qkdn::netsim {

std::string_view to_string(MessageKind kind) {
  switch (kind) {
    case MessageKind::kKemPublicKey:
      return "KEM_PK";
    case MessageKind::kKemCiphertext:
      return "KEM_CT";
    case MessageKind::kKeySync:
      return "KEY_SYNC";
    case MessageKind::kKeyRelayHop:
      return "KR_HOP";
    case MessageKind::kOnionHop:
      return "ONION_HOP";
    case MessageKind::kTnShare:
      return "TN_SHARE";
    case MessageKind::kTnFinal:
      return "TN_FINAL";
  }
  return "?";
}

void ChannelConfig::validate() const {
  if (capacity == 0) throw InvalidArgument("mailbox capacity must be >= 1");
  auto negative = std::visit(
      [](const auto& m) {
        using M = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<M, FixedLatency>) return m.delay.count() < 0;
        else if constexpr (std::is_same_v<M, PerHopLatency>) return m.per_hop.count() < 0;
        else return false;
      },
      latency);
  if (negative) throw InvalidArgument("latency must be non-negative");
}

ChannelConfig ChannelConfig::fixed_us(std::int64_t us) {
  ChannelConfig cfg;
  if (us != 0) cfg.latency = FixedLatency{std::chrono::microseconds(us)};
  return cfg;
}

Channel::Channel(ChannelConfig config) : config_(std::move(config)) { config_.validate(); }

Channel::~Channel() = default;

void Channel::register_node(const NodeId& node) {
  std::unique_lock lock(nodes_mu_);
  if (!mailboxes_.contains(node)) mailboxes_.emplace(node, std::make_unique<Mailbox>());
}

bool Channel::has_node(const NodeId& node) const {
  std::shared_lock lock(nodes_mu_);
  return mailboxes_.contains(node);
}

void Channel::set_hop_distance(HopDistance distance) { hop_distance_ = std::move(distance); }

Channel::Mailbox& Channel::mailbox(const NodeId& node) const {
  std::shared_lock lock(nodes_mu_);
  auto it = mailboxes_.find(node);
  if (it == mailboxes_.end()) throw UnknownRecipient("no mailbox for node " + node);
  return *it->second;
}

std::chrono::microseconds Channel::latency_for(const Envelope& env) const {
  return std::visit(
      [&](const auto& m) -> std::chrono::microseconds {
        using M = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<M, FixedLatency>) {
          return m.delay;
        } else if constexpr (std::is_same_v<M, PerHopLatency>) {
          int hops = hop_distance_ ? hop_distance_(env.from, env.to) : 1;
          return m.per_hop * std::max(hops, 0);
        } else {
          return std::chrono::microseconds(0);
        }
      },
      config_.latency);
}

void Channel::send(Envelope env) {
  if (down_) throw ChannelDown("channel is shut down");
  Mailbox& box = mailbox(env.to);
  const auto latency = latency_for(env);
  std::chrono::microseconds sender_vclock{0};
  if (config_.time_mode == TimeMode::kVirtual && has_node(env.from)) {
    Mailbox& from = mailbox(env.from);
    std::lock_guard lock(from.mu);
    sender_vclock = from.virtual_clock;
  }

  {
    std::lock_guard lock(box.mu);
    if (box.queue.size() >= config_.capacity) {
      throw Backpressure("mailbox of " + env.to + " is full (" + std::to_string(config_.capacity) +
                         ")");
    }
    Pending p;
    p.deliver_at = Clock::now() + latency;
    p.virtual_deliver_at =
        sender_vclock + (is_distribution_message(env.kind) ? latency : std::chrono::microseconds(0));
    p.seq = next_seq_++;
    if (tap_enabled_) {
      std::lock_guard tap_lock(tap_mu_);
      tap_.push_back(env);
    }
    p.env = std::move(env);
    box.queue.push_back(std::move(p));
  }
  box.cv.notify_one();
}

std::optional<Envelope> Channel::pop_ready(Mailbox& box, Clock::time_point now,
                                           Clock::time_point* next_due) {
  const bool real = config_.time_mode == TimeMode::kReal;
  auto best = box.queue.end();
  for (auto it = box.queue.begin(); it != box.queue.end(); ++it) {
    if (real && it->deliver_at > now) {
      if (next_due != nullptr) *next_due = std::min(*next_due, it->deliver_at);
      continue;
    }
    if (best == box.queue.end()) {
      best = it;
      continue;
    }
    const bool earlier = real ? std::tie(it->deliver_at, it->seq) < std::tie(best->deliver_at, best->seq)
                              : std::tie(it->virtual_deliver_at, it->seq) <
                                    std::tie(best->virtual_deliver_at, best->seq);
    if (earlier) best = it;
  }
  if (best == box.queue.end()) return std::nullopt;
  box.virtual_clock = std::max(box.virtual_clock, best->virtual_deliver_at);
  Envelope env = std::move(best->env);
  box.queue.erase(best);
  return env;
}

Envelope Channel::recv(const NodeId& node, std::chrono::microseconds timeout) {
  Mailbox& box = mailbox(node);
  const auto deadline = Clock::now() + timeout;
  std::unique_lock lock(box.mu);
  for (;;) {
    if (down_) throw ChannelDown("channel is shut down");
    const auto now = Clock::now();
    auto next_due = Clock::time_point::max();
    if (auto env = pop_ready(box, now, &next_due)) return std::move(*env);
    if (now >= deadline) throw Timeout("recv timed out at node " + node);
    box.cv.wait_until(lock, std::min(deadline, next_due));
  }
}

std::optional<Envelope> Channel::try_recv(const NodeId& node) {
  Mailbox& box = mailbox(node);
  std::lock_guard lock(box.mu);
  if (down_) throw ChannelDown("channel is shut down");
  return pop_ready(box, Clock::now(), nullptr);
}

std::size_t Channel::pending(const NodeId& node) const {
  Mailbox& box = mailbox(node);
  std::lock_guard lock(box.mu);
  return box.queue.size();
}

void Channel::shutdown() {
  down_ = true;
  std::shared_lock lock(nodes_mu_);
  for (auto& [id, box] : mailboxes_) {
    std::lock_guard box_lock(box->mu);
    box->cv.notify_all();
  }
}

bool Channel::is_down() const { return down_; }

std::chrono::microseconds Channel::virtual_now(const NodeId& node) const {
  Mailbox& box = mailbox(node);
  std::lock_guard lock(box.mu);
  return box.virtual_clock;
}

void Channel::set_wiretap(bool enabled) { tap_enabled_ = enabled; }

std::vector<Envelope> Channel::drain_wiretap() {
  std::lock_guard lock(tap_mu_);
  return std::exchange(tap_, {});
}

std::unique_ptr<Barrier> Channel::make_barrier(std::span<const NodeId> nodes) const {
  for (const auto& n : nodes) {
    if (!has_node(n)) throw UnknownRecipient("barrier participant " + n + " is not registered");
  }
  return std::make_unique<Barrier>(nodes.size());
}

void send(Channel& channel, Envelope env) { channel.send(std::move(env)); }

Envelope recv(Channel& channel, const NodeId& node, std::chrono::microseconds timeout) {
  return channel.recv(node, timeout);
}

}  // namespace qkdn::netsim
