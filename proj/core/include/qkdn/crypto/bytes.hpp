#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qkdn/error.hpp"

namespace qkdn {

using Bytes = std::vector<std::uint8_t>;
using ByteView = std::span<const std::uint8_t>;

std::string to_hex(ByteView bytes);

/// Parses lowercase or uppercase hex. Throws InvalidArgument on odd length or
/// non-hex characters.
Bytes from_hex(std::string_view hex);

/// True when `needle` occurs as a contiguous run inside `haystack`.
bool contains(ByteView haystack, ByteView needle);

namespace crypto {

class Rng;

/// Fixed-length key material with a distinct type per role so a session key
/// can never be passed where a secret or a link key is expected.
template <std::size_t N, class Tag>
class FixedBytes {
 public:
  static constexpr std::size_t kSize = N;

  FixedBytes() = default;

  static FixedBytes from_bytes(ByteView bytes) {
    if (bytes.size() != N) {
      throw InvalidArgument("expected " + std::to_string(N) + " bytes, got " +
                            std::to_string(bytes.size()));
    }
    FixedBytes out;
    std::copy(bytes.begin(), bytes.end(), out.data_.begin());
    return out;
  }

  [[nodiscard]] ByteView view() const { return data_; }
  [[nodiscard]] std::span<std::uint8_t, N> mutable_view() { return data_; }
  [[nodiscard]] Bytes to_vector() const { return {data_.begin(), data_.end()}; }
  [[nodiscard]] constexpr std::size_t size() const { return N; }

  friend bool operator==(const FixedBytes&, const FixedBytes&) = default;

 private:
  std::array<std::uint8_t, N> data_{};
};

/// The value distributed end to end.
using Secret = FixedBytes<32, struct SecretTag>;
/// AES-256 key material: KEM-derived session keys and QKD link keys alike.
using SymKey = FixedBytes<32, struct SymKeyTag>;

/// Draws a fresh secret from `rng`.
Secret generate_secret(Rng& rng);

}  // namespace crypto
}  // namespace qkdn
