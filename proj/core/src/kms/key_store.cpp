#include "qkdn/kms/key_store.hpp"

#include "qkdn/kms/uuid.hpp"

namespace qkdn::kms {

LinkStore::LinkStore(SaeId master, SaeId slave) : master_(std::move(master)), slave_(std::move(slave)) {}

void LinkStore::add_keys(std::size_t count, crypto::Rng& rng) {
  std::vector<QkdKey> fresh;
  fresh.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    QkdKey k;
    k.key_id = uuid_v4(rng);
    rng.fill(k.key.mutable_view());
    fresh.push_back(std::move(k));
  }
  std::lock_guard lock(mu_);
  available_.insert(available_.end(), fresh.begin(), fresh.end());
}

std::vector<QkdKey> LinkStore::take(std::size_t number) {
  std::lock_guard lock(mu_);
  if (number > available_.size()) {
    throw Exhausted("link " + master_ + "<->" + slave_ + " has " +
                    std::to_string(available_.size()) + " keys, " + std::to_string(number) +
                    " requested");
  }
  std::vector<QkdKey> out(available_.begin(), available_.begin() + static_cast<long>(number));
  available_.erase(available_.begin(), available_.begin() + static_cast<long>(number));
  for (const auto& k : out) delivered_.emplace(k.key_id, k);
  return out;
}

std::vector<QkdKey> LinkStore::lookup(std::span<const KeyId> key_ids) const {
  std::lock_guard lock(mu_);
  std::vector<QkdKey> out;
  out.reserve(key_ids.size());
  for (const auto& id : key_ids) {
    auto it = delivered_.find(id);
    if (it == delivered_.end()) throw UnknownKeyId("key_ID " + id + " was not delivered on this link");
    out.push_back(it->second);
  }
  return out;
}

LinkStats LinkStore::stats() const {
  std::lock_guard lock(mu_);
  return {available_.size(), delivered_.size()};
}

KeyManagementService::KeyManagementService(crypto::Rng rng) : rng_(std::move(rng)) {}

KeyManagementService::LinkKey KeyManagementService::normalize(const SaeId& a, const SaeId& b) {
  return a < b ? LinkKey{a, b} : LinkKey{b, a};
}

LinkStore& KeyManagementService::provision_link(const SaeId& sae_a, const SaeId& sae_b,
                                                std::size_t count) {
  std::lock_guard lock(rng_mu_);
  return provision_link(sae_a, sae_b, count, rng_);
}

LinkStore& KeyManagementService::provision_link(const SaeId& sae_a, const SaeId& sae_b,
                                                std::size_t count, crypto::Rng& rng) {
  if (sae_a == sae_b) throw InvalidArgument("a link needs two distinct SAEs");
  if (count == 0) throw InvalidArgument("a link must be provisioned with at least one key");
  auto store = std::make_unique<LinkStore>(sae_a, sae_b);
  store->add_keys(count, rng);
  std::unique_lock lock(mu_);
  auto [it, inserted] = links_.emplace(normalize(sae_a, sae_b), std::move(store));
  if (!inserted) throw DuplicateLink("link " + sae_a + "<->" + sae_b + " already provisioned");
  return *it->second;
}

void KeyManagementService::replenish(const SaeId& sae_a, const SaeId& sae_b, std::size_t count) {
  auto& store = find(sae_a, sae_b);
  std::lock_guard lock(rng_mu_);
  store.add_keys(count, rng_);
}

LinkStore& KeyManagementService::find(const SaeId& a, const SaeId& b) const {
  std::shared_lock lock(mu_);
  auto it = links_.find(normalize(a, b));
  if (it == links_.end()) throw UnknownLink("no QKD link between " + a + " and " + b);
  return *it->second;
}

std::vector<QkdKey> KeyManagementService::get_enc_keys(const SaeId& master, const SaeId& slave,
                                                       int number, int size_bits) {
  if (size_bits != kSupportedKeyBits) {
    throw UnsupportedSize("only 256-bit keys are served, requested " + std::to_string(size_bits));
  }
  if (number < 1) throw InvalidArgument("number must be >= 1");
  return find(master, slave).take(static_cast<std::size_t>(number));
}

std::vector<QkdKey> KeyManagementService::get_dec_keys(const SaeId& slave, const SaeId& master,
                                                       std::span<const KeyId> key_ids) {
  if (key_ids.empty()) throw InvalidArgument("at least one key_ID is required");
  return find(slave, master).lookup(key_ids);
}

bool KeyManagementService::has_link(const SaeId& sae_a, const SaeId& sae_b) const {
  std::shared_lock lock(mu_);
  return links_.contains(normalize(sae_a, sae_b));
}

LinkStats KeyManagementService::stats(const SaeId& sae_a, const SaeId& sae_b) const {
  return find(sae_a, sae_b).stats();
}

}  // namespace qkdn::kms
