#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qkdn/harness/stats.hpp"
#include "qkdn/kms/client.hpp"
#include "qkdn/netsim/channel.hpp"

namespace qkdn::harness {

struct Scenario {
  Model model = Model::kKr;
  std::vector<int> circuit_sizes{3, 5, 7, 9, 11};
  int trials = 1000;
  /// Leading trials per point that run but are not aggregated.
  int warmup = 10;
  /// Fixed seed for reproducible secrets and keys; OS entropy when absent.
  std::optional<std::uint64_t> seed;
  netsim::ChannelConfig channel;
  bool orr_qkd_every_hop = true;
  std::chrono::microseconds timeout = std::chrono::seconds(10);

  /// Throws InvalidArgument: sizes must lie in [2, 64], trials >= 1,
  /// warmup >= 0.
  void validate() const;
};

/// One measured trial (warm-up trials are not recorded).
struct TrialRecord {
  Model model = Model::kKr;
  int n_nodes = 0;
  int trial = 0;
  bool valid = false;
  double encryption_us = 0;
  double distribution_us = 0;
  std::size_t messages_sent = 0;
  std::string secret_hex;  // empty for invalid trials
  std::string error;       // why the trial was invalid
};

struct ScenarioResult {
  std::vector<StatRow> rows;
  std::vector<TrialRecord> raw;
  std::size_t invalid_trials = 0;

  [[nodiscard]] double invalid_rate() const;
};

/// Runs every circuit size of `s`: provisions one QKD link per adjacent pair
/// of a line topology, builds the circuit, negotiates session keys (ORR), then
/// runs warm-up plus measured trials and aggregates both metrics. Failed
/// trials are counted invalid and excluded from the aggregates.
///
/// `kms` may point at a remote KME; by default each point gets a private
/// in-process service.
ScenarioResult run_scenario(const Scenario& s, kms::KmsClient* kms = nullptr);

/// Node names used for a circuit of `n` nodes: "<prefix>N00", "<prefix>N01", ...
std::vector<std::string> circuit_node_ids(int n, const std::string& prefix = "");

}  // namespace qkdn::harness
