#include <gtest/gtest.h>

#include <map>
#include <set>
#include <thread>

#include "qkdn/netsim/channel.hpp"

namespace qkdn::netsim {
namespace {

using namespace std::chrono;
using namespace std::chrono_literals;

Envelope env(const NodeId& from, const NodeId& to, std::uint8_t tag = 0) {
  return Envelope{from, to, MessageKind::kKeyRelayHop, Bytes{tag}, std::nullopt};
}

Envelope numbered(const NodeId& from, const NodeId& to, std::uint32_t n) {
  Bytes p(4);
  for (int i = 0; i < 4; ++i) p[i] = static_cast<std::uint8_t>(n >> (8 * i));
  return Envelope{from, to, MessageKind::kTnShare, p, std::nullopt};
}

std::uint32_t number_of(const Envelope& e) {
  std::uint32_t n = 0;
  for (int i = 0; i < 4; ++i) n |= static_cast<std::uint32_t>(e.payload[i]) << (8 * i);
  return n;
}

TEST(ChannelConfig, Validation) {
  ChannelConfig c;
  c.capacity = 0;
  EXPECT_THROW(c.validate(), InvalidArgument);
  c.capacity = 1;
  c.latency = FixedLatency{-1us};
  EXPECT_THROW(c.validate(), InvalidArgument);
  c.latency = PerHopLatency{-5us};
  EXPECT_THROW(Channel{c}, InvalidArgument);
}

TEST(Channel, ZeroLatencyImmediatelyReceivable) {
  Channel ch;
  ch.register_node("A");
  ch.register_node("B");
  ch.send(env("A", "B", 7));
  auto got = ch.try_recv("B");
  ASSERT_TRUE(got);
  EXPECT_EQ(got->payload, Bytes{7});
}

TEST(Channel, UnknownRecipientAndTimeout) {
  Channel ch;
  ch.register_node("A");
  EXPECT_THROW(ch.send(env("A", "Z")), UnknownRecipient);
  EXPECT_THROW(ch.recv("A", 1ms), Timeout);
  EXPECT_THROW(ch.recv("Z", 1ms), UnknownRecipient);
}

TEST(Channel, RegisterIsIdempotent) {
  Channel ch;
  ch.register_node("A");
  ch.register_node("B");
  ch.send(env("B", "A"));
  ch.register_node("A");
  EXPECT_EQ(ch.pending("A"), 1u);
}

TEST(Channel, Backpressure) {
  ChannelConfig c;
  c.capacity = 2;
  Channel ch(c);
  ch.register_node("A");
  ch.register_node("B");
  ch.send(env("A", "B"));
  ch.send(env("A", "B"));
  EXPECT_THROW(ch.send(env("A", "B")), Backpressure);
  ch.recv("B", 1ms);
  EXPECT_NO_THROW(ch.send(env("A", "B")));
}

TEST(Channel, FixedLatencyLowerBound) {
  Channel ch(ChannelConfig::fixed_us(100));
  ch.register_node("A");
  ch.register_node("B");
  for (int i = 0; i < 20; ++i) {
    const auto t0 = steady_clock::now();
    ch.send(env("A", "B"));
    if (!ch.try_recv("B")) ch.recv("B", 1s);
    ASSERT_GE(steady_clock::now() - t0, 100us);
  }
}

TEST(Channel, PerHopLatencyScalesWithDistance) {
  ChannelConfig c;
  c.latency = PerHopLatency{2000us};
  Channel ch(c);
  for (auto n : {"A", "B", "C"}) ch.register_node(n);
  ch.set_hop_distance([](const NodeId& a, const NodeId& b) { return std::abs(a[0] - b[0]); });
  const auto t0 = steady_clock::now();
  ch.send(env("A", "C"));
  ch.recv("C", 1s);
  EXPECT_GE(steady_clock::now() - t0, 4000us);
}

TEST(Channel, VirtualTimeAccumulatesWithoutSleeping) {
  ChannelConfig c;
  c.latency = FixedLatency{1s};
  c.time_mode = TimeMode::kVirtual;
  Channel ch(c);
  for (auto n : {"A", "B", "C"}) ch.register_node(n);
  const auto t0 = steady_clock::now();
  ch.send(env("A", "B"));
  ch.recv("B", 1s);
  ch.send(env("B", "C"));
  ch.recv("C", 1s);
  EXPECT_LT(steady_clock::now() - t0, 500ms);
  EXPECT_EQ(ch.virtual_now("B"), 1s);
  EXPECT_EQ(ch.virtual_now("C"), 2s);
  EXPECT_EQ(ch.virtual_now("A"), 0s);
}

TEST(Channel, SingleSenderOrderStress) {
  Channel ch;
  ch.register_node("A");
  ch.register_node("B");
  std::jthread sender([&] {
    for (std::uint32_t i = 0; i < 1000; ++i) ch.send(numbered("A", "B", i));
  });
  for (std::uint32_t i = 0; i < 1000; ++i) ASSERT_EQ(number_of(ch.recv("B", 5s)), i);
}

TEST(Channel, InterleavedSendersKeepPerSenderOrderWithoutLossOrDuplication) {
  for (std::size_t capacity : {1u, 2u, 1024u}) {
    ChannelConfig c;
    c.capacity = capacity;
    Channel ch(c);
    const std::vector<NodeId> senders{"S0", "S1", "S2", "S3"};
    ch.register_node("R");
    for (const auto& s : senders) ch.register_node(s);
    constexpr std::uint32_t kPerSender = 500;
    {
      std::vector<std::jthread> threads;
      for (const auto& s : senders) {
        threads.emplace_back([&, s] {
          for (std::uint32_t i = 0; i < kPerSender;) {
            try {
              ch.send(numbered(s, "R", i));
              ++i;
            } catch (const Backpressure&) {
              std::this_thread::yield();
            }
          }
        });
      }
      std::map<NodeId, std::uint32_t> next;
      for (std::uint32_t k = 0; k < kPerSender * senders.size(); ++k) {
        auto e = ch.recv("R", 5s);
        ASSERT_EQ(number_of(e), next[e.from]++) << "sender " << e.from;
      }
    }
    EXPECT_EQ(ch.pending("R"), 0u);
  }
}

TEST(Channel, ConcurrentSharesAllArrive) {
  Channel ch;
  ch.register_node("TN");
  std::vector<NodeId> nodes;
  for (int i = 0; i < 10; ++i) {
    nodes.push_back("N" + std::to_string(i));
    ch.register_node(nodes.back());
  }
  {
    std::vector<std::jthread> threads;
    for (const auto& n : nodes) threads.emplace_back([&, n] { ch.send(env(n, "TN")); });
  }
  std::set<NodeId> from;
  for (std::size_t i = 0; i < nodes.size(); ++i) from.insert(ch.recv("TN", 1s).from);
  EXPECT_EQ(from.size(), nodes.size());
}

TEST(Channel, ShutdownWakesReceivers) {
  Channel ch;
  ch.register_node("A");
  std::jthread waker([&] {
    std::this_thread::sleep_for(20ms);
    ch.shutdown();
  });
  EXPECT_THROW(ch.recv("A", 5s), ChannelDown);
  EXPECT_TRUE(ch.is_down());
  EXPECT_THROW(ch.send(env("A", "A")), ChannelDown);
}

TEST(Channel, WiretapRecordsInSendOrder) {
  Channel ch;
  ch.register_node("A");
  ch.register_node("B");
  ch.send(env("A", "B", 1));
  ch.set_wiretap(true);
  ch.send(env("A", "B", 2));
  ch.send(env("B", "A", 3));
  ch.set_wiretap(false);
  ch.send(env("A", "B", 4));
  auto tap = ch.drain_wiretap();
  ASSERT_EQ(tap.size(), 2u);
  EXPECT_EQ(tap[0].payload, Bytes{2});
  EXPECT_EQ(tap[1].payload, Bytes{3});
  EXPECT_TRUE(ch.drain_wiretap().empty());
}

TEST(Channel, FreeFunctions) {
  Channel ch;
  ch.register_node("A");
  send(ch, env("A", "A", 9));
  EXPECT_EQ(recv(ch, "A", 1ms).payload, Bytes{9});
}

}  // namespace
}  // namespace qkdn::netsim
