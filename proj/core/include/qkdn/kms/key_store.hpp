#pragma once

#include <cstddef>
#include <deque>
#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <span>
#include <string>
#include <vector>

#include "qkdn/crypto/bytes.hpp"
#include "qkdn/crypto/rng.hpp"

namespace qkdn::kms {

using SaeId = std::string;
using KeyId = std::string;

inline constexpr int kSupportedKeyBits = 256;

class DuplicateLink : public Error {
 public:
  using Error::Error;
};
class UnknownLink : public Error {
 public:
  using Error::Error;
};
class UnknownKeyId : public Error {
 public:
  using Error::Error;
};
class Exhausted : public Error {
 public:
  using Error::Error;
};
class UnsupportedSize : public Error {
 public:
  using Error::Error;
};

/// A QKD key as delivered to an SAE: a v4 UUID plus 256 bits of material.
struct QkdKey {
  KeyId key_id;
  crypto::SymKey key;

  friend bool operator==(const QkdKey&, const QkdKey&) = default;
};

struct LinkStats {
  std::size_t available = 0;
  std::size_t delivered = 0;
};

/// Key pool shared by the two endpoints of one QKD link. Keys leave
/// `available` exactly once, through an enc_keys request; dec_keys lookups by
/// id do not consume.
class LinkStore {
 public:
  LinkStore(SaeId master, SaeId slave);

  [[nodiscard]] const SaeId& master_sae_id() const { return master_; }
  [[nodiscard]] const SaeId& slave_sae_id() const { return slave_; }

  void add_keys(std::size_t count, crypto::Rng& rng);
  std::vector<QkdKey> take(std::size_t number);
  std::vector<QkdKey> lookup(std::span<const KeyId> key_ids) const;
  [[nodiscard]] LinkStats stats() const;

 private:
  SaeId master_;
  SaeId slave_;
  mutable std::mutex mu_;
  std::deque<QkdKey> available_;
  std::map<KeyId, QkdKey> delivered_;
};

/// One logical KME holding every link's store. Links are unordered pairs:
/// either endpoint may play master for enc_keys, and the peer retrieves the
/// same bytes by id via dec_keys.
class KeyManagementService {
 public:
  explicit KeyManagementService(crypto::Rng rng);

  LinkStore& provision_link(const SaeId& sae_a, const SaeId& sae_b, std::size_t count);
  LinkStore& provision_link(const SaeId& sae_a, const SaeId& sae_b, std::size_t count,
                            crypto::Rng& rng);

  /// Adds `count` fresh keys to an existing link.
  void replenish(const SaeId& sae_a, const SaeId& sae_b, std::size_t count);

  std::vector<QkdKey> get_enc_keys(const SaeId& master, const SaeId& slave, int number,
                                   int size_bits = kSupportedKeyBits);
  std::vector<QkdKey> get_dec_keys(const SaeId& slave, const SaeId& master,
                                   std::span<const KeyId> key_ids);

  [[nodiscard]] bool has_link(const SaeId& sae_a, const SaeId& sae_b) const;
  [[nodiscard]] LinkStats stats(const SaeId& sae_a, const SaeId& sae_b) const;

 private:
  using LinkKey = std::pair<SaeId, SaeId>;
  static LinkKey normalize(const SaeId& a, const SaeId& b);
  LinkStore& find(const SaeId& a, const SaeId& b) const;

  mutable std::shared_mutex mu_;
  std::map<LinkKey, std::unique_ptr<LinkStore>> links_;
  std::mutex rng_mu_;
  crypto::Rng rng_;
};

}  // namespace qkdn::kms
