#pragma once

#include <chrono>
#include <map>

#include "qkdn/crypto/bytes.hpp"
#include "qkdn/crypto/rng.hpp"
#include "qkdn/netsim/channel.hpp"
#include "qkdn/protocol/circuit.hpp"

namespace qkdn::protocol {

class MissingKey : public Error {
 public:
  using Error::Error;
};

class UnexpectedMessage : public Error {
 public:
  using Error::Error;
};

/// Symmetric session keys indexed by circuit member.
class SessionKeyTable {
 public:
  void set(const NodeId& node, const crypto::SymKey& key) { keys_[node] = key; }
  /// Throws MissingKey.
  [[nodiscard]] const crypto::SymKey& at(const NodeId& node) const;
  [[nodiscard]] bool contains(const NodeId& node) const { return keys_.contains(node); }
  [[nodiscard]] std::size_t size() const { return keys_.size(); }
  [[nodiscard]] const std::map<NodeId, crypto::SymKey>& entries() const { return keys_; }

 private:
  std::map<NodeId, crypto::SymKey> keys_;
};

/// Both ends of every negotiation: what the initiator holds per node, and
/// what each node derived for itself. Equal entry-by-entry when the KEM runs
/// succeed.
struct NegotiatedKeys {
  SessionKeyTable initiator_view;
  SessionKeyTable node_view;
};

/// ML-KEM-768 negotiation between the initiator and every other circuit
/// member, point to point over `channel`. Each responder runs keygen and
/// sends KEM_PK; the initiator encapsulates and answers with KEM_CT; the
/// responder decapsulates. Throws netsim::ChannelDown / netsim::Timeout.
NegotiatedKeys negotiate_session_keys(const Circuit& circuit, netsim::Channel& channel,
                                      const crypto::Rng& rng,
                                      std::chrono::microseconds timeout = std::chrono::seconds(10));

}  // namespace qkdn::protocol
