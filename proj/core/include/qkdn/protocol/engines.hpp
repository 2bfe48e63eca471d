#pragma once

#include <chrono>
#include <map>
#include <vector>

#include "qkdn/crypto/bytes.hpp"
#include "qkdn/crypto/rng.hpp"
#include "qkdn/kms/client.hpp"
#include "qkdn/netsim/channel.hpp"
#include "qkdn/protocol/circuit.hpp"
#include "qkdn/protocol/session.hpp"

namespace qkdn::protocol {

struct EngineOptions {
  /// Upper bound on any single wait inside a trial.
  std::chrono::microseconds timeout = std::chrono::seconds(10);
  /// ORR: re-encrypt under the next link's QKD key at every hop (true) or
  /// only on the initiator's first hop (false).
  bool orr_qkd_every_hop = true;
  /// Trusted-node identity for run_tn.
  NodeId trusted_node = "TN";
};

struct DistributionResult {
  crypto::Secret secret_sent;
  crypto::Secret secret_received;
  /// Model-specific encryption region, see each engine.
  std::chrono::nanoseconds encryption_time{0};
  /// Secret generation at the initiator until recovery at the destination.
  std::chrono::nanoseconds distribution_time{0};
  /// Secret-bearing messages only; negotiation and key-sync traffic excluded.
  std::size_t messages_sent = 0;
  /// Every plaintext each node handled during distribution.
  std::map<NodeId, std::vector<Bytes>> transcripts;
  /// Everything put on the classical channel during the trial, in send order.
  std::vector<netsim::Envelope> wire;
  /// QKD key used on circuit link i, or empty when the link went unprotected.
  std::vector<kms::KeyId> link_key_ids;

  [[nodiscard]] bool succeeded() const { return secret_received == secret_sent; }
};

/// Key relay: the initiator one-time-pads the secret with link 0's key (the
/// encryption region is exactly that XOR); each intermediate strips the
/// inbound pad and applies the outbound one.
DistributionResult run_kr(const Circuit& circuit, netsim::Channel& channel, kms::KmsClient& kms,
                          const crypto::Rng& rng, const EngineOptions& options = {});

/// Trusted node: the initiator sends S ^ K0 and intermediate j sends
/// K(j-1) ^ K(j), all concurrently, to the trusted node; it XOR-folds the n-1
/// shares (the encryption region) into S ^ K(last) for the destination.
DistributionResult run_tn(const Circuit& circuit, netsim::Channel& channel, kms::KmsClient& kms,
                          const crypto::Rng& rng, const EngineOptions& options = {});

/// Onion routing relay: the initiator wraps the secret in one session-key
/// layer per downstream node and adds the QKD layer for link 0 (together, the
/// encryption region). Each hop strips the QKD layer, peels its own layer and
/// re-protects the rest for the next link.
DistributionResult run_orr(const Circuit& circuit, netsim::Channel& channel, kms::KmsClient& kms,
                           const NegotiatedKeys& keys, const crypto::Rng& rng,
                           const EngineOptions& options = {});

}  // namespace qkdn::protocol
