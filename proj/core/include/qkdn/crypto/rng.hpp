#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string_view>

#include "qkdn/crypto/bytes.hpp"

namespace qkdn::crypto {

/// Random byte source. Either OS entropy (RAND_bytes) or a deterministic
/// AES-256-CTR keystream keyed from a seed, for reproducible runs.
///
/// An Rng is owned by exactly one execution context; it is movable but not
/// copyable and not internally synchronized.
class Rng {
 public:
  static Rng from_seed(std::uint64_t seed);
  static Rng from_key(std::span<const std::uint8_t, 32> key);
  static Rng from_entropy();

  Rng(Rng&&) noexcept;
  Rng& operator=(Rng&&) noexcept;
  ~Rng();

  void fill(std::span<std::uint8_t> out);
  Bytes bytes(std::size_t n);

  /// Independent child stream. For a deterministic Rng the child depends only
  /// on this Rng's root key and `label`, not on how much has been drawn.
  [[nodiscard]] Rng derive(std::string_view label) const;

  [[nodiscard]] bool deterministic() const { return impl_ != nullptr; }

 private:
  struct Impl;
  explicit Rng(std::unique_ptr<Impl> impl);
  std::unique_ptr<Impl> impl_;  // null in entropy mode
};

/// Returns `n` bytes from `rng`.
Bytes random_bytes(std::size_t n, Rng& rng);

}  // namespace qkdn::crypto
