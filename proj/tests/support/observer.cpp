#include "observer.hpp"

#include "qkdn/crypto/cbc.hpp"
#include "qkdn/crypto/otp.hpp"

namespace qkdn::testing {

std::vector<crypto::SymKey> link_keys(const protocol::DistributionResult& result,
                                      const protocol::Circuit& circuit, kms::KmsClient& kms) {
  std::vector<crypto::SymKey> keys;
  for (std::size_t i = 0; i < circuit.link_count(); ++i) {
    auto [up, down] = circuit.link(i);
    std::vector<kms::KeyId> ids{result.link_key_ids.at(i)};
    keys.push_back(kms.get_dec_keys(down, up, ids).front().key);
  }
  return keys;
}

namespace {

const netsim::Envelope* first_sent_by(const protocol::DistributionResult& result,
                                      const netsim::NodeId& node) {
  for (const auto& env : result.wire) {
    if (env.from == node && netsim::is_distribution_message(env.kind)) return &env;
  }
  return nullptr;
}

}  // namespace

std::optional<crypto::Secret> xor_attack(const protocol::DistributionResult& result,
                                         const protocol::Circuit& circuit, std::size_t leaked_link,
                                         const crypto::SymKey& leaked_key) {
  constexpr auto kLen = crypto::Secret::kSize;
  const auto& secret = result.secret_sent;

  Bytes fold(leaked_key.view().begin(), leaked_key.view().end());
  bool complete = true;
  for (std::size_t i = 0; i <= leaked_link; ++i) {
    const auto* env = first_sent_by(result, circuit.nodes()[i]);
    if (env == nullptr || env->payload.size() < kLen) {
      complete = false;
      break;
    }
    crypto::xor_into(fold, ByteView(env->payload).first(kLen));
  }
  if (complete && ByteView(fold).size() == kLen && crypto::Secret::from_bytes(fold) == secret) {
    return secret;
  }

  // The payload that crossed the leaked link, under its AES link layer.
  const auto* crossing = first_sent_by(result, circuit.nodes()[leaked_link]);
  if (crossing != nullptr && crossing->payload.size() > kLen) {
    try {
      auto inner = crypto::CbcCipher().decrypt_framed(leaked_key, crossing->payload);
      if (contains(inner, secret.view())) return secret;
    } catch (const Error&) {
    }
  }
  return std::nullopt;
}

bool any_intermediate_sees(const protocol::DistributionResult& result,
                           const protocol::Circuit& circuit) {
  for (const auto& node : circuit.intermediates()) {
    for (const auto& entry : result.transcripts.at(node)) {
      if (contains(entry, result.secret_sent.view())) return true;
    }
  }
  return false;
}

bool all_intermediates_see(const protocol::DistributionResult& result,
                           const protocol::Circuit& circuit) {
  for (const auto& node : circuit.intermediates()) {
    bool seen = false;
    for (const auto& entry : result.transcripts.at(node)) {
      seen = seen || contains(entry, result.secret_sent.view());
    }
    if (!seen) return false;
  }
  return true;
}

}  // namespace qkdn::testing
