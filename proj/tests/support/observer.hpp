#pragma once

#include <optional>
#include <vector>

#include "qkdn/kms/client.hpp"
#include "qkdn/protocol/circuit.hpp"
#include "qkdn/protocol/engines.hpp"

namespace qkdn::testing {

/// Link key bytes for every circuit link, looked up on the dec side (which
/// does not consume them).
std::vector<crypto::SymKey> link_keys(const protocol::DistributionResult& result,
                                      const protocol::Circuit& circuit, kms::KmsClient& kms);

/// Passive eavesdropper that records every classical payload of one run and
/// learns the key of one link. It tries:
///  - the XOR fold of the first 32 bytes of each payload sent by nodes
///    0..leaked_link, combined with the leaked key;
///  - stripping an AES link layer with the leaked key from the payload that
///    crossed that link, then scanning the result for the secret.
/// Returns the secret when either attempt exposes it; success is judged
/// against `result.secret_sent`.
std::optional<crypto::Secret> xor_attack(const protocol::DistributionResult& result,
                                         const protocol::Circuit& circuit, std::size_t leaked_link,
                                         const crypto::SymKey& leaked_key);

/// True when any intermediate transcript contains the secret.
bool any_intermediate_sees(const protocol::DistributionResult& result,
                           const protocol::Circuit& circuit);
/// True when every intermediate transcript contains the secret.
bool all_intermediates_see(const protocol::DistributionResult& result,
                           const protocol::Circuit& circuit);

}  // namespace qkdn::testing
