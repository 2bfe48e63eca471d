#include <gtest/gtest.h>

#include <set>
#include <thread>

#include "qkdn/crypto/rng.hpp"
#include "qkdn/kms/client.hpp"
#include "qkdn/kms/key_store.hpp"
#include "qkdn/kms/uuid.hpp"

namespace qkdn::kms {
namespace {

KeyManagementService make_service(std::uint64_t seed = 1) {
  return KeyManagementService(crypto::Rng::from_seed(seed));
}

std::vector<KeyId> ids_of(const std::vector<QkdKey>& keys) {
  std::vector<KeyId> out;
  for (const auto& k : keys) out.push_back(k.key_id);
  return out;
}

TEST(Uuid, V4Format) {
  auto rng = crypto::Rng::from_seed(1);
  for (int i = 0; i < 100; ++i) {
    auto id = uuid_v4(rng);
    ASSERT_TRUE(is_uuid(id)) << id;
    ASSERT_EQ(id[14], '4');
    ASSERT_NE(std::string("89ab").find(id[19]), std::string::npos);
  }
  EXPECT_FALSE(is_uuid("not-a-uuid"));
  EXPECT_FALSE(is_uuid("3f2a6c1e-8b4d-4e5f-9a7b-0c1d2e3f4a5")); // one short
}

TEST(KeyStore, ProvisionCardinality) {
  auto kms = make_service();
  kms.provision_link("A", "B", 100);
  EXPECT_EQ(kms.stats("A", "B").available, 100u);
  EXPECT_EQ(kms.stats("B", "A").available, 100u);
}

TEST(KeyStore, DuplicateLinkInEitherOrder) {
  auto kms = make_service();
  kms.provision_link("A", "B", 1);
  EXPECT_THROW(kms.provision_link("A", "B", 1), DuplicateLink);
  EXPECT_THROW(kms.provision_link("B", "A", 1), DuplicateLink);
}

TEST(KeyStore, ProvisionPreconditions) {
  auto kms = make_service();
  EXPECT_THROW(kms.provision_link("A", "A", 1), InvalidArgument);
  EXPECT_THROW(kms.provision_link("A", "B", 0), InvalidArgument);
}

TEST(KeyStore, KeysPairwiseDistinct) {
  auto kms = make_service();
  kms.provision_link("A", "B", 1000);
  auto keys = kms.get_enc_keys("A", "B", 1000);
  std::set<Bytes> material;
  std::set<KeyId> ids;
  for (const auto& k : keys) {
    material.insert(k.key.to_vector());
    ids.insert(k.key_id);
  }
  EXPECT_EQ(material.size(), 1000u);
  EXPECT_EQ(ids.size(), 1000u);
}

TEST(KeyStore, EncKeysShrinkStore) {
  auto kms = make_service();
  kms.provision_link("A", "B", 5);
  auto keys = kms.get_enc_keys("A", "B", 1);
  ASSERT_EQ(keys.size(), 1u);
  EXPECT_TRUE(is_uuid(keys[0].key_id));
  EXPECT_EQ(kms.stats("A", "B").available, 4u);
  EXPECT_EQ(kms.stats("A", "B").delivered, 1u);
}

TEST(KeyStore, ExhaustedIsMonotone) {
  auto kms = make_service();
  kms.provision_link("A", "B", 3);
  EXPECT_THROW(kms.get_enc_keys("A", "B", 4), Exhausted);
  EXPECT_EQ(kms.stats("A", "B").available, 3u);  // failed request consumes nothing
  kms.get_enc_keys("A", "B", 2);
  for (int m = 2; m < 6; ++m) EXPECT_THROW(kms.get_enc_keys("A", "B", m), Exhausted);
  kms.replenish("A", "B", 2);
  EXPECT_EQ(kms.get_enc_keys("A", "B", 3).size(), 3u);
}

TEST(KeyStore, DecKeysMatchEncKeys) {
  auto kms = make_service();
  kms.provision_link("A", "B", 10);
  auto enc = kms.get_enc_keys("A", "B", 3);
  auto ids = ids_of(enc);
  auto dec = kms.get_dec_keys("B", "A", ids);
  EXPECT_EQ(dec, enc);
  // Retrieval by id does not consume.
  EXPECT_EQ(kms.get_dec_keys("B", "A", ids), enc);
}

TEST(KeyStore, DecKeysKeepRequestOrder) {
  auto kms = make_service();
  kms.provision_link("A", "B", 3);
  auto enc = kms.get_enc_keys("A", "B", 3);
  std::vector<KeyId> ids{enc[2].key_id, enc[0].key_id, enc[1].key_id};
  auto dec = kms.get_dec_keys("B", "A", ids);
  ASSERT_EQ(dec.size(), 3u);
  EXPECT_EQ(dec[0], enc[2]);
  EXPECT_EQ(dec[1], enc[0]);
  EXPECT_EQ(dec[2], enc[1]);
}

TEST(KeyStore, UnknownKeyIdAndLink) {
  auto kms = make_service();
  kms.provision_link("A", "B", 2);
  auto rng = crypto::Rng::from_seed(9);
  std::vector<KeyId> random_id{uuid_v4(rng)};
  EXPECT_THROW(kms.get_dec_keys("B", "A", random_id), UnknownKeyId);
  EXPECT_THROW(kms.get_enc_keys("A", "C", 1), UnknownLink);
  EXPECT_THROW(kms.get_dec_keys("C", "A", random_id), UnknownLink);
}

TEST(KeyStore, UnsupportedSize) {
  auto kms = make_service();
  kms.provision_link("A", "B", 2);
  EXPECT_THROW(kms.get_enc_keys("A", "B", 1, 128), UnsupportedSize);
  EXPECT_THROW(kms.get_enc_keys("A", "B", 0), InvalidArgument);
}

TEST(KeyStore, NoKeyDeliveredTwiceUnderConcurrency) {
  auto kms = make_service();
  kms.provision_link("A", "B", 4000);
  std::vector<std::vector<QkdKey>> got(4);
  {
    std::vector<std::jthread> threads;
    for (int t = 0; t < 4; ++t) {
      threads.emplace_back([&, t] {
        for (int i = 0; i < 1000; ++i) {
          auto k = kms.get_enc_keys(t % 2 ? "A" : "B", t % 2 ? "B" : "A", 1);
          got[t].push_back(k.front());
        }
      });
    }
  }
  std::set<KeyId> ids;
  for (const auto& v : got) {
    for (const auto& k : v) ids.insert(k.key_id);
  }
  EXPECT_EQ(ids.size(), 4000u);
  EXPECT_THROW(kms.get_enc_keys("A", "B", 1), Exhausted);
}

TEST(KeyStore, InProcessClientDelegates) {
  auto kms = make_service();
  InProcessKmsClient client(kms);
  client.provision_link("X", "Y", 2);
  auto enc = client.get_enc_keys("X", "Y", 1);
  EXPECT_EQ(client.get_dec_keys("Y", "X", ids_of(enc)), enc);
}

TEST(KeyStore, SeededProvisioningReproduces) {
  auto a = make_service(5);
  auto b = make_service(5);
  a.provision_link("A", "B", 3);
  b.provision_link("A", "B", 3);
  EXPECT_EQ(a.get_enc_keys("A", "B", 3), b.get_enc_keys("A", "B", 3));
}

}  // namespace
}  // namespace qkdn::kms
