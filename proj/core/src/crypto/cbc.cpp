#include "qkdn/crypto/cbc.hpp"

#include <openssl/evp.h>

#include <algorithm>

namespace qkdn::crypto {

namespace {

void check_framing(std::size_t body_size) {
  if (body_size == 0 || body_size % kAesBlock != 0) {
    throw MalformedCiphertext("ciphertext body must be a positive multiple of 16 bytes, got " +
                              std::to_string(body_size));
  }
}

}  // namespace

Bytes SymCiphertext::serialize() const {
  Bytes out;
  out.reserve(size());
  out.insert(out.end(), iv.begin(), iv.end());
  out.insert(out.end(), body.begin(), body.end());
  return out;
}

SymCiphertext SymCiphertext::parse(ByteView framed) {
  if (framed.size() < kAesBlock) {
    throw MalformedCiphertext("ciphertext shorter than its iv");
  }
  check_framing(framed.size() - kAesBlock);
  SymCiphertext ct;
  std::copy_n(framed.begin(), kAesBlock, ct.iv.begin());
  ct.body.assign(framed.begin() + kAesBlock, framed.end());
  return ct;
}

struct CbcCipher::Impl {
  EVP_CIPHER* cipher = nullptr;
  EVP_CIPHER_CTX* ctx = nullptr;

  Impl() {
    cipher = EVP_CIPHER_fetch(nullptr, "AES-256-CBC", nullptr);
    ctx = EVP_CIPHER_CTX_new();
    if (cipher == nullptr || ctx == nullptr) {
      EVP_CIPHER_free(cipher);
      EVP_CIPHER_CTX_free(ctx);
      throw Error("AES-256-CBC unavailable");
    }
  }
  ~Impl() {
    EVP_CIPHER_CTX_free(ctx);
    EVP_CIPHER_free(cipher);
  }
  Impl(const Impl&) = delete;
  Impl& operator=(const Impl&) = delete;

  // Writes the CBC body of `plaintext` to `out`, which must have room for
  // sym_ciphertext_size(plaintext.size()) - kAesBlock bytes.
  std::size_t encrypt_body(const SymKey& key, const std::uint8_t* iv, ByteView plaintext,
                           std::uint8_t* out) {
    if (plaintext.empty()) throw InvalidArgument("plaintext must be non-empty");
    int len = 0;
    int tail = 0;
    if (EVP_EncryptInit_ex2(ctx, cipher, key.view().data(), iv, nullptr) != 1 ||
        EVP_EncryptUpdate(ctx, out, &len, plaintext.data(), static_cast<int>(plaintext.size())) !=
            1 ||
        EVP_EncryptFinal_ex(ctx, out + len, &tail) != 1) {
      throw Error("AES-256-CBC encryption failed");
    }
    return static_cast<std::size_t>(len + tail);
  }

  Bytes decrypt_body(const SymKey& key, const std::uint8_t* iv, ByteView body) {
    check_framing(body.size());
    Bytes out(body.size());
    int len = 0;
    int tail = 0;
    if (EVP_DecryptInit_ex2(ctx, cipher, key.view().data(), iv, nullptr) != 1 ||
        EVP_DecryptUpdate(ctx, out.data(), &len, body.data(), static_cast<int>(body.size())) != 1) {
      throw Error("AES-256-CBC decryption failed");
    }
    if (EVP_DecryptFinal_ex(ctx, out.data() + len, &tail) != 1) {
      throw BadPadding("invalid PKCS#7 padding");
    }
    out.resize(static_cast<std::size_t>(len + tail));
    return out;
  }
};

CbcCipher::CbcCipher() : impl_(std::make_unique<Impl>()) {}
CbcCipher::CbcCipher(CbcCipher&&) noexcept = default;
CbcCipher& CbcCipher::operator=(CbcCipher&&) noexcept = default;
CbcCipher::~CbcCipher() = default;

SymCiphertext CbcCipher::encrypt(const SymKey& key, ByteView plaintext, Rng& rng) {
  Iv iv;
  rng.fill(iv);
  return encrypt_with_iv(key, iv, plaintext);
}

SymCiphertext CbcCipher::encrypt_with_iv(const SymKey& key, const Iv& iv, ByteView plaintext) {
  SymCiphertext ct;
  ct.iv = iv;
  ct.body.resize(sym_ciphertext_size(plaintext.size()) - kAesBlock);
  ct.body.resize(impl_->encrypt_body(key, iv.data(), plaintext, ct.body.data()));
  return ct;
}

Bytes CbcCipher::decrypt(const SymKey& key, const SymCiphertext& ct) {
  return impl_->decrypt_body(key, ct.iv.data(), ct.body);
}

Bytes CbcCipher::encrypt_framed(const SymKey& key, ByteView plaintext, Rng& rng) {
  Bytes out(sym_ciphertext_size(plaintext.size()));
  rng.fill(std::span(out).first(kAesBlock));
  auto n = impl_->encrypt_body(key, out.data(), plaintext, out.data() + kAesBlock);
  out.resize(kAesBlock + n);
  return out;
}

Bytes CbcCipher::decrypt_framed(const SymKey& key, ByteView framed) {
  if (framed.size() < kAesBlock) throw MalformedCiphertext("ciphertext shorter than its iv");
  return impl_->decrypt_body(key, framed.data(), framed.subspan(kAesBlock));
}

SymCiphertext sym_encrypt(const SymKey& key, ByteView plaintext, Rng& rng) {
  return CbcCipher().encrypt(key, plaintext, rng);
}

Bytes sym_decrypt(const SymKey& key, const SymCiphertext& ct) {
  return CbcCipher().decrypt(key, ct);
}

}  // namespace qkdn::crypto
