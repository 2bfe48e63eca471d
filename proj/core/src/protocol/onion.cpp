#include "qkdn/protocol/onion.hpp"

namespace qkdn::protocol {

Onion wrap_onion(const crypto::Secret& secret, const Circuit& circuit, const SessionKeyTable& keys,
                 crypto::Rng& rng) {
  crypto::CbcCipher cipher;
  return wrap_onion(secret, circuit, keys, rng, cipher);
}

Onion wrap_onion(const crypto::Secret& secret, const Circuit& circuit, const SessionKeyTable& keys,
                 crypto::Rng& rng, crypto::CbcCipher& cipher) {
  const auto& nodes = circuit.nodes();
  Onion onion{secret.to_vector()};
  for (std::size_t i = nodes.size() - 1; i >= 1; --i) {
    onion.layers = cipher.encrypt_framed(keys.at(nodes[i]), onion.layers, rng);
  }
  return onion;
}

Bytes peel_layer(ByteView onion_bytes, const crypto::SymKey& key) {
  crypto::CbcCipher cipher;
  return peel_layer(onion_bytes, key, cipher);
}

Bytes peel_layer(ByteView onion_bytes, const crypto::SymKey& key, crypto::CbcCipher& cipher) {
  return cipher.decrypt_framed(key, onion_bytes);
}

}  // namespace qkdn::protocol
