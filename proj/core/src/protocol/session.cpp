#include "qkdn/protocol/session.hpp"

#include <exception>
#include <thread>

#include "qkdn/crypto/kem.hpp"

namespace qkdn::protocol {

using netsim::Envelope;
using netsim::MessageKind;

const crypto::SymKey& SessionKeyTable::at(const NodeId& node) const {
  auto it = keys_.find(node);
  if (it == keys_.end()) throw MissingKey("no session key for " + node);
  return it->second;
}

NegotiatedKeys negotiate_session_keys(const Circuit& circuit, netsim::Channel& channel,
                                      const crypto::Rng& rng, std::chrono::microseconds timeout) {
  const auto& nodes = circuit.nodes();
  const NodeId& initiator = circuit.initiator();
  for (const auto& n : nodes) channel.register_node(n);

  NegotiatedKeys out;
  std::vector<std::optional<crypto::SymKey>> derived(nodes.size());
  std::vector<std::exception_ptr> errors(nodes.size());

  auto fail = [&](std::size_t i) {
    errors[i] = std::current_exception();
    channel.shutdown();
  };

  {
    std::vector<std::jthread> responders;
    for (std::size_t i = 1; i < nodes.size(); ++i) {
      responders.emplace_back([&, i] {
        try {
          auto node_rng = rng.derive("kem-keygen/" + nodes[i]);
          auto kp = crypto::kem_keygen(node_rng);
          channel.send(Envelope{nodes[i], initiator, MessageKind::kKemPublicKey, kp.public_key, {}});
          auto env = channel.recv(nodes[i], timeout);
          if (env.kind != MessageKind::kKemCiphertext || env.from != initiator) {
            throw UnexpectedMessage(nodes[i] + " expected KEM_CT from " + initiator);
          }
          derived[i] = crypto::kem_decapsulate(kp.secret_key, crypto::KemCiphertext{env.payload});
        } catch (...) {
          fail(i);
        }
      });
    }

    try {
      // Public keys arrive in whatever order the responders run; the
      // encapsulation randomness is per responder so results do not depend
      // on that order.
      for (std::size_t k = 1; k < nodes.size(); ++k) {
        auto env = channel.recv(initiator, timeout);
        if (env.kind != MessageKind::kKemPublicKey) {
          throw UnexpectedMessage(initiator + " expected KEM_PK, got " +
                                  std::string(netsim::to_string(env.kind)));
        }
        (void)circuit.position(env.from);  // rejects strangers
        auto enc_rng = rng.derive("kem-encaps/" + env.from);
        auto enc = crypto::kem_encapsulate(env.payload, enc_rng);
        out.initiator_view.set(env.from, enc.shared_secret);
        channel.send(Envelope{initiator, env.from, MessageKind::kKemCiphertext,
                              std::move(enc.ciphertext.bytes), {}});
      }
    } catch (...) {
      fail(0);
    }
  }

  // Prefer the root cause over the ChannelDown it triggered in peers.
  std::exception_ptr fallout;
  for (auto& e : errors) {
    if (!e) continue;
    try {
      std::rethrow_exception(e);
    } catch (const netsim::ChannelDown&) {
      if (!fallout) fallout = e;
    } catch (...) {
      throw;
    }
  }
  if (fallout) std::rethrow_exception(fallout);
  for (std::size_t i = 1; i < nodes.size(); ++i) out.node_view.set(nodes[i], *derived[i]);
  return out;
}

}  // namespace qkdn::protocol
