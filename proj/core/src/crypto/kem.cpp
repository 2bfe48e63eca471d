#include "qkdn/crypto/kem.hpp"

#include "qkdn/crypto/cbc.hpp"

namespace qkdn::crypto {

KemKeyPair kem_keygen(Rng& rng) {
  std::array<std::uint8_t, 32> d{};
  std::array<std::uint8_t, 32> z{};
  rng.fill(d);
  rng.fill(z);
  auto kp = mlkem768::keygen_internal(d, z);
  return {std::move(kp.encapsulation_key), std::move(kp.decapsulation_key)};
}

KemEncapsulation kem_encapsulate(ByteView public_key, Rng& rng) {
  if (!mlkem768::valid_encapsulation_key(public_key)) {
    throw InvalidPublicKey("ML-KEM-768 encapsulation key failed type/modulus check");
  }
  std::array<std::uint8_t, 32> m{};
  rng.fill(m);
  auto enc = mlkem768::encaps_internal(public_key, m);
  return {KemCiphertext{std::move(enc.ciphertext)}, SymKey::from_bytes(enc.shared_secret)};
}

SymKey kem_decapsulate(ByteView secret_key, const KemCiphertext& ct) {
  if (!mlkem768::valid_decapsulation_key(secret_key)) {
    throw InvalidSecretKey("ML-KEM-768 decapsulation key failed type/hash check");
  }
  if (ct.bytes.size() != mlkem768::kCiphertextBytes) {
    throw MalformedCiphertext("ML-KEM-768 ciphertext must be 1088 bytes, got " +
                              std::to_string(ct.bytes.size()));
  }
  return SymKey::from_bytes(mlkem768::decaps_internal(secret_key, ct.bytes));
}

}  // namespace qkdn::crypto
