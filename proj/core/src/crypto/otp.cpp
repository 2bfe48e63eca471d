#include "qkdn/crypto/otp.hpp"

namespace qkdn::crypto {

Bytes xor_otp(ByteView a, ByteView b) {
  if (a.size() != b.size()) {
    throw LengthMismatch("xor operands differ in length: " + std::to_string(a.size()) + " vs " +
                         std::to_string(b.size()));
  }
  Bytes out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] ^ b[i];
  return out;
}

void xor_into(std::span<std::uint8_t> acc, ByteView b) {
  if (acc.size() != b.size()) {
    throw LengthMismatch("xor operands differ in length: " + std::to_string(acc.size()) + " vs " +
                         std::to_string(b.size()));
  }
  for (std::size_t i = 0; i < acc.size(); ++i) acc[i] ^= b[i];
}

}  // namespace qkdn::crypto
