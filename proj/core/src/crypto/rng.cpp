#include "qkdn/crypto/rng.hpp"

#include <openssl/evp.h>
#include <openssl/rand.h>
#include <openssl/sha.h>

#include <algorithm>
#include <array>
#include <cstring>

namespace qkdn::crypto {

struct Rng::Impl {
  std::array<std::uint8_t, 32> key{};
  EVP_CIPHER_CTX* ctx = nullptr;

  explicit Impl(std::span<const std::uint8_t, 32> k) {
    std::copy(k.begin(), k.end(), key.begin());
    ctx = EVP_CIPHER_CTX_new();
    static const std::array<std::uint8_t, 16> kZeroCounter{};
    if (ctx == nullptr ||
        EVP_EncryptInit_ex(ctx, EVP_aes_256_ctr(), nullptr, key.data(), kZeroCounter.data()) != 1) {
      EVP_CIPHER_CTX_free(ctx);
      throw Error("failed to initialize AES-CTR keystream");
    }
  }
  ~Impl() { EVP_CIPHER_CTX_free(ctx); }
  Impl(const Impl&) = delete;
  Impl& operator=(const Impl&) = delete;
};

Rng::Rng(std::unique_ptr<Impl> impl) : impl_(std::move(impl)) {}
Rng::Rng(Rng&&) noexcept = default;
Rng& Rng::operator=(Rng&&) noexcept = default;
Rng::~Rng() = default;

Rng Rng::from_seed(std::uint64_t seed) {
  std::array<std::uint8_t, 8> le{};
  for (std::size_t i = 0; i < le.size(); ++i) le[i] = static_cast<std::uint8_t>(seed >> (8 * i));
  std::array<std::uint8_t, 32> key{};
  SHA256(le.data(), le.size(), key.data());
  return from_key(key);
}

Rng Rng::from_key(std::span<const std::uint8_t, 32> key) {
  return Rng(std::make_unique<Impl>(key));
}

Rng Rng::from_entropy() { return Rng(nullptr); }

void Rng::fill(std::span<std::uint8_t> out) {
  if (out.empty()) return;
  if (!impl_) {
    if (RAND_bytes(out.data(), static_cast<int>(out.size())) != 1) {
      throw Error("RAND_bytes failed");
    }
    return;
  }
  std::memset(out.data(), 0, out.size());
  int len = 0;
  if (EVP_EncryptUpdate(impl_->ctx, out.data(), &len, out.data(), static_cast<int>(out.size())) !=
      1) {
    throw Error("AES-CTR keystream failed");
  }
}

Bytes Rng::bytes(std::size_t n) {
  Bytes out(n);
  fill(out);
  return out;
}

Rng Rng::derive(std::string_view label) const {
  if (!impl_) return from_entropy();
  Bytes material(impl_->key.begin(), impl_->key.end());
  material.insert(material.end(), label.begin(), label.end());
  std::array<std::uint8_t, 32> child{};
  SHA256(material.data(), material.size(), child.data());
  return from_key(child);
}

Bytes random_bytes(std::size_t n, Rng& rng) { return rng.bytes(n); }

}  // namespace qkdn::crypto
