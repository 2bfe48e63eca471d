#pragma once

#include <array>
#include <cstdint>
#include <initializer_list>
#include <span>

#include "qkdn/crypto/bytes.hpp"

// SHA-3 family hashes over a concatenation of input parts, backed by OpenSSL.
namespace qkdn::crypto::keccak {

using Parts = std::initializer_list<ByteView>;

std::array<std::uint8_t, 32> sha3_256(Parts in);
std::array<std::uint8_t, 64> sha3_512(Parts in);
void shake128(Parts in, std::span<std::uint8_t> out);
void shake256(Parts in, std::span<std::uint8_t> out);

}  // namespace qkdn::crypto::keccak
