#pragma once

#include "qkdn/crypto/bytes.hpp"
#include "qkdn/crypto/mlkem768.hpp"
#include "qkdn/crypto/rng.hpp"

namespace qkdn::crypto {

class InvalidPublicKey : public Error {
 public:
  using Error::Error;
};

class InvalidSecretKey : public Error {
 public:
  using Error::Error;
};

struct KemKeyPair {
  Bytes public_key;  // 1184 bytes
  Bytes secret_key;  // 2400 bytes
};

struct KemCiphertext {
  Bytes bytes;  // 1088 bytes
};

struct KemEncapsulation {
  KemCiphertext ciphertext;
  SymKey shared_secret;
};

KemKeyPair kem_keygen(Rng& rng);

/// Throws InvalidPublicKey when `public_key` fails the ML-KEM input checks.
KemEncapsulation kem_encapsulate(ByteView public_key, Rng& rng);

/// The 32-byte shared secret is used directly as an AES-256 key. A tampered or
/// mismatched ciphertext does not raise; it yields an unrelated key.
/// Throws InvalidSecretKey / MalformedCiphertext only on wrong-sized inputs.
SymKey kem_decapsulate(ByteView secret_key, const KemCiphertext& ct);

}  // namespace qkdn::crypto
