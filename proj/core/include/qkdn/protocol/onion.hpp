#pragma once

#include "qkdn/crypto/cbc.hpp"
#include "qkdn/protocol/circuit.hpp"
#include "qkdn/protocol/session.hpp"

namespace qkdn::protocol {

/// Nested AES-256-CBC layers, outermost first in peel order.
struct Onion {
  Bytes layers;
};

/// Encrypts `secret` under the destination's key, then successively under
/// each intermediate's key from the last intermediate back to the first.
/// Throws MissingKey when `keys` lacks a circuit member.
Onion wrap_onion(const crypto::Secret& secret, const Circuit& circuit, const SessionKeyTable& keys,
                 crypto::Rng& rng);
Onion wrap_onion(const crypto::Secret& secret, const Circuit& circuit, const SessionKeyTable& keys,
                 crypto::Rng& rng, crypto::CbcCipher& cipher);

/// Removes one layer. Throws crypto::BadPadding on the wrong key or depth.
Bytes peel_layer(ByteView onion_bytes, const crypto::SymKey& key);
Bytes peel_layer(ByteView onion_bytes, const crypto::SymKey& key, crypto::CbcCipher& cipher);

/// Onion length for a circuit of `circuit_nodes` nodes carrying a secret of
/// `secret_len` bytes: one layer per non-initiator node.
constexpr std::size_t onion_size(std::size_t circuit_nodes, std::size_t secret_len = 32) {
  std::size_t len = secret_len;
  for (std::size_t i = 1; i < circuit_nodes; ++i) len = crypto::sym_ciphertext_size(len);
  return len;
}

}  // namespace qkdn::protocol
