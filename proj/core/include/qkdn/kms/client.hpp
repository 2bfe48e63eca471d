#pragma once

#include <span>
#include <vector>

#include "qkdn/kms/key_store.hpp"

namespace qkdn::kms {

/// What a node sees of its KME. Implementations translate transport failures
/// into the same typed errors the key store raises.
class KmsClient {
 public:
  virtual ~KmsClient() = default;

  virtual std::vector<QkdKey> get_enc_keys(const SaeId& master, const SaeId& slave, int number,
                                           int size_bits = kSupportedKeyBits) = 0;
  virtual std::vector<QkdKey> get_dec_keys(const SaeId& slave, const SaeId& master,
                                           std::span<const KeyId> key_ids) = 0;

  /// Test-bed administration: creates a link with `count` keys.
  virtual void provision_link(const SaeId& sae_a, const SaeId& sae_b, std::size_t count) = 0;
};

/// Direct calls into a KeyManagementService; no serialization.
class InProcessKmsClient final : public KmsClient {
 public:
  explicit InProcessKmsClient(KeyManagementService& service) : service_(service) {}

  std::vector<QkdKey> get_enc_keys(const SaeId& master, const SaeId& slave, int number,
                                   int size_bits = kSupportedKeyBits) override;
  std::vector<QkdKey> get_dec_keys(const SaeId& slave, const SaeId& master,
                                   std::span<const KeyId> key_ids) override;
  void provision_link(const SaeId& sae_a, const SaeId& sae_b, std::size_t count) override;

 private:
  KeyManagementService& service_;
};

}  // namespace qkdn::kms
