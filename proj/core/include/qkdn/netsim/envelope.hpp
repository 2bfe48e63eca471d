#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "qkdn/crypto/bytes.hpp"

namespace qkdn::netsim {

using NodeId = std::string;

enum class MessageKind {
  kKemPublicKey,   // responder -> initiator during session-key negotiation
  kKemCiphertext,  // initiator -> responder during session-key negotiation
  kKeySync,        // upstream -> downstream: id of the QKD key agreed for a link
  kKeyRelayHop,    // KR: secret under a link key
  kOnionHop,       // ORR: onion, optionally under a link key
  kTnShare,        // TN: XOR share sent to the trusted node
  kTnFinal,        // TN: folded ciphertext sent to the destination
};

std::string_view to_string(MessageKind kind);

/// True for the messages that carry (a function of) the distributed secret.
/// Negotiation and key-sync traffic is management, not distribution.
constexpr bool is_distribution_message(MessageKind kind) {
  return kind == MessageKind::kKeyRelayHop || kind == MessageKind::kOnionHop ||
         kind == MessageKind::kTnShare || kind == MessageKind::kTnFinal;
}

/// One classical-channel message. `qkd_key_id` is set exactly when the
/// payload is protected by a QKD link key.
struct Envelope {
  NodeId from;
  NodeId to;
  MessageKind kind;
  Bytes payload;
  std::optional<std::string> qkd_key_id;
};

}  // namespace qkdn::netsim
