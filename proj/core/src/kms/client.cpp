#include "qkdn/kms/client.hpp"

namespace qkdn::kms {

std::vector<QkdKey> InProcessKmsClient::get_enc_keys(const SaeId& master, const SaeId& slave,
                                                     int number, int size_bits) {
  return service_.get_enc_keys(master, slave, number, size_bits);
}

std::vector<QkdKey> InProcessKmsClient::get_dec_keys(const SaeId& slave, const SaeId& master,
                                                     std::span<const KeyId> key_ids) {
  return service_.get_dec_keys(slave, master, key_ids);
}

void InProcessKmsClient::provision_link(const SaeId& sae_a, const SaeId& sae_b, std::size_t count) {
  service_.provision_link(sae_a, sae_b, count);
}

}  // namespace qkdn::kms
