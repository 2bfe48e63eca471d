#pragma once

#include <array>
#include <cstdint>
#include <span>

#include "qkdn/crypto/bytes.hpp"

/// ML-KEM-768 (FIPS 203) deterministic core. The randomized wrappers in kem.hpp
/// are what protocol code should use; these entry points exist so known-answer
/// vectors can drive the scheme with fixed seeds.
namespace qkdn::crypto::mlkem768 {

inline constexpr std::size_t kEncapsulationKeyBytes = 1184;
inline constexpr std::size_t kDecapsulationKeyBytes = 2400;
inline constexpr std::size_t kCiphertextBytes = 1088;
inline constexpr std::size_t kSharedSecretBytes = 32;
inline constexpr std::size_t kSeedBytes = 32;

using Seed = std::span<const std::uint8_t, kSeedBytes>;
using SharedSecret = std::array<std::uint8_t, kSharedSecretBytes>;

struct KeyPair {
  Bytes encapsulation_key;
  Bytes decapsulation_key;
};

struct Encapsulated {
  SharedSecret shared_secret;
  Bytes ciphertext;
};

/// ML-KEM.KeyGen_internal(d, z).
KeyPair keygen_internal(Seed d, Seed z);

/// ML-KEM.Encaps_internal(ek, m). The caller must have validated `ek`.
Encapsulated encaps_internal(ByteView ek, Seed m);

/// ML-KEM.Decaps_internal(dk, c), with implicit rejection: a ciphertext that
/// does not re-encrypt identically yields J(z || c) instead of an error.
SharedSecret decaps_internal(ByteView dk, ByteView c);

/// Type check plus modulus check on an encapsulation key.
bool valid_encapsulation_key(ByteView ek);

/// Type check plus the embedded H(ek) hash check on a decapsulation key.
bool valid_decapsulation_key(ByteView dk);

}  // namespace qkdn::crypto::mlkem768
