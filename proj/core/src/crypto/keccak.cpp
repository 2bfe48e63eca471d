#include "keccak.hpp"

#include <openssl/evp.h>

#include <memory>

namespace qkdn::crypto::keccak {

namespace {

struct MdDeleter {
  void operator()(EVP_MD* md) const { EVP_MD_free(md); }
};
struct CtxDeleter {
  void operator()(EVP_MD_CTX* ctx) const { EVP_MD_CTX_free(ctx); }
};

using MdPtr = std::unique_ptr<EVP_MD, MdDeleter>;

// Method objects are immutable once fetched and shared across threads.
MdPtr fetch(const char* name) {
  MdPtr md(EVP_MD_fetch(nullptr, name, nullptr));
  if (!md) throw Error(std::string("digest unavailable: ") + name);
  return md;
}

void digest(const EVP_MD* md, Parts in, std::span<std::uint8_t> out, bool xof) {
  std::unique_ptr<EVP_MD_CTX, CtxDeleter> ctx(EVP_MD_CTX_new());
  if (!ctx || EVP_DigestInit_ex(ctx.get(), md, nullptr) != 1) throw Error("digest init failed");
  for (auto part : in) {
    if (EVP_DigestUpdate(ctx.get(), part.data(), part.size()) != 1) {
      throw Error("digest update failed");
    }
  }
  int ok = xof ? EVP_DigestFinalXOF(ctx.get(), out.data(), out.size())
               : EVP_DigestFinal_ex(ctx.get(), out.data(), nullptr);
  if (ok != 1) throw Error("digest final failed");
}

}  // namespace

std::array<std::uint8_t, 32> sha3_256(Parts in) {
  static const MdPtr md = fetch("SHA3-256");
  std::array<std::uint8_t, 32> out{};
  digest(md.get(), in, out, false);
  return out;
}

std::array<std::uint8_t, 64> sha3_512(Parts in) {
  static const MdPtr md = fetch("SHA3-512");
  std::array<std::uint8_t, 64> out{};
  digest(md.get(), in, out, false);
  return out;
}

void shake128(Parts in, std::span<std::uint8_t> out) {
  static const MdPtr md = fetch("SHAKE128");
  digest(md.get(), in, out, true);
}

void shake256(Parts in, std::span<std::uint8_t> out) {
  static const MdPtr md = fetch("SHAKE256");
  digest(md.get(), in, out, true);
}

}  // namespace qkdn::crypto::keccak
