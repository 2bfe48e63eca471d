#pragma once

#include <array>
#include <memory>

#include "qkdn/crypto/bytes.hpp"
#include "qkdn/crypto/rng.hpp"

namespace qkdn::crypto {

inline constexpr std::size_t kAesBlock = 16;

class BadPadding : public Error {
 public:
  using Error::Error;
};

class MalformedCiphertext : public Error {
 public:
  using Error::Error;
};

using Iv = std::array<std::uint8_t, kAesBlock>;

/// AES-256-CBC output framed as iv || body. PKCS#7 always appends padding,
/// so the body is never empty.
struct SymCiphertext {
  Iv iv{};
  Bytes body;

  [[nodiscard]] std::size_t size() const { return iv.size() + body.size(); }
  [[nodiscard]] Bytes serialize() const;
  /// Throws MalformedCiphertext unless the body is a positive multiple of 16.
  static SymCiphertext parse(ByteView framed);

  friend bool operator==(const SymCiphertext&, const SymCiphertext&) = default;
};

/// Framed ciphertext length for a plaintext of `plaintext_len` bytes.
constexpr std::size_t sym_ciphertext_size(std::size_t plaintext_len) {
  return kAesBlock + kAesBlock * (plaintext_len / kAesBlock + 1);
}

/// Reusable AES-256-CBC context. The cipher implementation is fetched once on
/// construction, so layering many encryptions through one instance avoids a
/// provider lookup per call.
class CbcCipher {
 public:
  CbcCipher();
  CbcCipher(CbcCipher&&) noexcept;
  CbcCipher& operator=(CbcCipher&&) noexcept;
  ~CbcCipher();

  SymCiphertext encrypt(const SymKey& key, ByteView plaintext, Rng& rng);
  SymCiphertext encrypt_with_iv(const SymKey& key, const Iv& iv, ByteView plaintext);
  Bytes decrypt(const SymKey& key, const SymCiphertext& ct);

  /// iv || body in one buffer, without the intermediate SymCiphertext.
  Bytes encrypt_framed(const SymKey& key, ByteView plaintext, Rng& rng);
  Bytes decrypt_framed(const SymKey& key, ByteView framed);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Encrypts with a fresh random IV. Throws InvalidArgument on empty plaintext.
SymCiphertext sym_encrypt(const SymKey& key, ByteView plaintext, Rng& rng);

/// Throws BadPadding when the final block does not carry valid PKCS#7 padding
/// (wrong key or corrupted layer) and MalformedCiphertext on bad framing.
Bytes sym_decrypt(const SymKey& key, const SymCiphertext& ct);

}  // namespace qkdn::crypto
