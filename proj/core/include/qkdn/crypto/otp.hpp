#pragma once

#include "qkdn/crypto/bytes.hpp"

namespace qkdn::crypto {

class LengthMismatch : public Error {
 public:
  using Error::Error;
};

/// One-time-pad combination: out[i] = a[i] ^ b[i]. Throws LengthMismatch when
/// the operands differ in length.
Bytes xor_otp(ByteView a, ByteView b);

/// In-place variant used by XOR folds: acc[i] ^= b[i].
void xor_into(std::span<std::uint8_t> acc, ByteView b);

}  // namespace qkdn::crypto
