#include <gtest/gtest.h>

#include "qkdn/crypto/cbc.hpp"
#include "qkdn/crypto/kem.hpp"
#include "qkdn/crypto/rng.hpp"

namespace qkdn::crypto {
namespace {

TEST(Kem, ObjectSizes) {
  auto rng = Rng::from_seed(1);
  auto kp = kem_keygen(rng);
  EXPECT_EQ(kp.public_key.size(), 1184u);
  EXPECT_EQ(kp.secret_key.size(), 2400u);
  auto enc = kem_encapsulate(kp.public_key, rng);
  EXPECT_EQ(enc.ciphertext.bytes.size(), 1088u);
  EXPECT_EQ(enc.shared_secret.size(), 32u);
}

TEST(Kem, KeygenIsRandomized) {
  auto rng = Rng::from_seed(2);
  EXPECT_NE(kem_keygen(rng).public_key, kem_keygen(rng).public_key);
}

TEST(Kem, EncapsulationIsRandomized) {
  auto rng = Rng::from_seed(3);
  auto kp = kem_keygen(rng);
  EXPECT_NE(kem_encapsulate(kp.public_key, rng).shared_secret,
            kem_encapsulate(kp.public_key, rng).shared_secret);
}

TEST(Kem, RoundTrips) {
  auto rng = Rng::from_seed(4);
  for (int i = 0; i < 1000; ++i) {
    auto kp = kem_keygen(rng);
    auto enc = kem_encapsulate(kp.public_key, rng);
    ASSERT_EQ(kem_decapsulate(kp.secret_key, enc.ciphertext), enc.shared_secret);
  }
}

TEST(Kem, FlippedCiphertextBitGivesDifferentKey) {
  auto rng = Rng::from_seed(5);
  auto kp = kem_keygen(rng);
  auto enc = kem_encapsulate(kp.public_key, rng);
  for (std::size_t pos : {0u, 500u, 1087u}) {
    auto ct = enc.ciphertext;
    ct.bytes[pos] ^= 0x80;
    EXPECT_NE(kem_decapsulate(kp.secret_key, ct), enc.shared_secret);
  }
}

TEST(Kem, WrongSecretKeyGivesDifferentKey) {
  auto rng = Rng::from_seed(6);
  auto a = kem_keygen(rng);
  auto b = kem_keygen(rng);
  auto enc = kem_encapsulate(a.public_key, rng);
  EXPECT_NE(kem_decapsulate(b.secret_key, enc.ciphertext), enc.shared_secret);
}

TEST(Kem, MalformedInputs) {
  auto rng = Rng::from_seed(7);
  auto kp = kem_keygen(rng);
  EXPECT_THROW(kem_encapsulate(Bytes(1183), rng), InvalidPublicKey);
  auto pk = kp.public_key;
  pk[0] = 0xff;
  pk[1] = 0xff;
  EXPECT_THROW(kem_encapsulate(pk, rng), InvalidPublicKey);
  auto enc = kem_encapsulate(kp.public_key, rng);
  EXPECT_THROW(kem_decapsulate(Bytes(10), enc.ciphertext), InvalidSecretKey);
  EXPECT_THROW(kem_decapsulate(kp.secret_key, KemCiphertext{Bytes(1087)}), MalformedCiphertext);
}

TEST(Kem, SeededRunsReproduce) {
  auto a = Rng::from_seed(8);
  auto b = Rng::from_seed(8);
  auto ka = kem_keygen(a);
  auto kb = kem_keygen(b);
  EXPECT_EQ(ka.public_key, kb.public_key);
  EXPECT_EQ(kem_encapsulate(ka.public_key, a).ciphertext.bytes,
            kem_encapsulate(kb.public_key, b).ciphertext.bytes);
}

}  // namespace
}  // namespace qkdn::crypto
