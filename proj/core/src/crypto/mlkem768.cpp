#include "qkdn/crypto/mlkem768.hpp"

#include <openssl/crypto.h>

#include <algorithm>

#include "keccak.hpp"

// Straightforward rendering of FIPS 203 with k = 3, eta1 = eta2 = 2, du = 10,
// dv = 4. Coefficients are kept fully reduced in [0, q) throughout; no
// Montgomery or Barrett tricks, since throughput is not the bottleneck here.
namespace qkdn::crypto::mlkem768 {

namespace {

constexpr int kN = 256;
constexpr std::uint32_t kQ = 3329;
constexpr int kK = 3;
constexpr int kEta1 = 2;
constexpr int kEta2 = 2;
constexpr int kDu = 10;
constexpr int kDv = 4;

constexpr std::size_t kPolyBytes = 384;  // 256 coefficients * 12 bits
constexpr std::size_t kPkePublicBytes = kPolyBytes * kK + 32;
constexpr std::size_t kPkeSecretBytes = kPolyBytes * kK;
constexpr std::size_t kC1Bytes = 32 * kDu * kK;
constexpr std::size_t kC2Bytes = 32 * kDv;

static_assert(kPkePublicBytes == kEncapsulationKeyBytes);
static_assert(kPkeSecretBytes + kPkePublicBytes + 64 == kDecapsulationKeyBytes);
static_assert(kC1Bytes + kC2Bytes == kCiphertextBytes);

using Poly = std::array<std::uint16_t, kN>;
using PolyVec = std::array<Poly, kK>;
using Matrix = std::array<PolyVec, kK>;

constexpr std::uint32_t pow_mod(std::uint32_t base, std::uint32_t exp) {
  std::uint32_t result = 1;
  base %= kQ;
  while (exp > 0) {
    if (exp & 1u) result = result * base % kQ;
    base = base * base % kQ;
    exp >>= 1;
  }
  return result;
}

constexpr std::uint32_t bitrev7(std::uint32_t x) {
  std::uint32_t r = 0;
  for (int i = 0; i < 7; ++i) r |= ((x >> i) & 1u) << (6 - i);
  return r;
}

// zeta = 17 is the primitive 256-th root of unity mod q.
constexpr auto kZetas = [] {
  std::array<std::uint16_t, 128> z{};
  for (std::uint32_t i = 0; i < 128; ++i) z[i] = static_cast<std::uint16_t>(pow_mod(17, bitrev7(i)));
  return z;
}();

constexpr auto kGammas = [] {
  std::array<std::uint16_t, 128> g{};
  for (std::uint32_t i = 0; i < 128; ++i) {
    g[i] = static_cast<std::uint16_t>(pow_mod(17, 2 * bitrev7(i) + 1));
  }
  return g;
}();

static_assert(kZetas[1] == 1729);
static_assert(pow_mod(128, kQ - 2) == 3303);

inline std::uint16_t add_q(std::uint32_t a, std::uint32_t b) {
  return static_cast<std::uint16_t>((a + b) % kQ);
}
inline std::uint16_t sub_q(std::uint32_t a, std::uint32_t b) {
  return static_cast<std::uint16_t>((a + kQ - b) % kQ);
}
inline std::uint16_t mul_q(std::uint32_t a, std::uint32_t b) {
  return static_cast<std::uint16_t>(a * b % kQ);
}

// Algorithm 9.
void ntt(Poly& f) {
  std::size_t i = 1;
  for (std::size_t len = 128; len >= 2; len /= 2) {
    for (std::size_t start = 0; start < kN; start += 2 * len) {
      std::uint32_t zeta = kZetas[i++];
      for (std::size_t j = start; j < start + len; ++j) {
        std::uint16_t t = mul_q(zeta, f[j + len]);
        f[j + len] = sub_q(f[j], t);
        f[j] = add_q(f[j], t);
      }
    }
  }
}

// Algorithm 10.
void ntt_inverse(Poly& f) {
  std::size_t i = 127;
  for (std::size_t len = 2; len <= 128; len *= 2) {
    for (std::size_t start = 0; start < kN; start += 2 * len) {
      std::uint32_t zeta = kZetas[i--];
      for (std::size_t j = start; j < start + len; ++j) {
        std::uint16_t t = f[j];
        f[j] = add_q(t, f[j + len]);
        f[j + len] = mul_q(zeta, sub_q(f[j + len], t));
      }
    }
  }
  for (auto& c : f) c = mul_q(c, 3303);
}

// Algorithms 11 and 12, accumulated into `acc`.
void multiply_ntts_add(Poly& acc, const Poly& f, const Poly& g) {
  for (std::size_t i = 0; i < 128; ++i) {
    std::uint32_t a0 = f[2 * i], a1 = f[2 * i + 1];
    std::uint32_t b0 = g[2 * i], b1 = g[2 * i + 1];
    std::uint32_t c0 = (a0 * b0 + static_cast<std::uint32_t>(mul_q(a1, b1)) * kGammas[i]) % kQ;
    std::uint32_t c1 = (a0 * b1 + a1 * b0) % kQ;
    acc[2 * i] = add_q(acc[2 * i], c0);
    acc[2 * i + 1] = add_q(acc[2 * i + 1], c1);
  }
}

void poly_add(Poly& acc, const Poly& g) {
  for (std::size_t i = 0; i < kN; ++i) acc[i] = add_q(acc[i], g[i]);
}

// Algorithm 5: 256 d-bit integers, little-endian bit order.
void byte_encode(const Poly& f, int d, std::uint8_t* out) {
  std::uint32_t acc = 0;
  int bits = 0;
  std::size_t pos = 0;
  for (auto c : f) {
    acc |= static_cast<std::uint32_t>(c) << bits;
    bits += d;
    while (bits >= 8) {
      out[pos++] = static_cast<std::uint8_t>(acc);
      acc >>= 8;
      bits -= 8;
    }
  }
}

// Algorithm 6. For d = 12 coefficients are reduced mod q.
Poly byte_decode(const std::uint8_t* in, int d) {
  Poly f{};
  std::uint32_t acc = 0;
  int bits = 0;
  std::size_t pos = 0;
  const std::uint32_t mask = (1u << d) - 1;
  for (auto& c : f) {
    while (bits < d) {
      acc |= static_cast<std::uint32_t>(in[pos++]) << bits;
      bits += 8;
    }
    std::uint32_t v = acc & mask;
    acc >>= d;
    bits -= d;
    c = static_cast<std::uint16_t>(d == 12 ? v % kQ : v);
  }
  return f;
}

std::uint16_t compress(std::uint32_t x, int d) {
  return static_cast<std::uint16_t>((((x << d) + kQ / 2) / kQ) & ((1u << d) - 1));
}

std::uint16_t decompress(std::uint32_t y, int d) {
  return static_cast<std::uint16_t>((y * kQ + (1u << (d - 1))) >> d);
}

Poly compress_poly(const Poly& f, int d) {
  Poly out{};
  for (std::size_t i = 0; i < kN; ++i) out[i] = compress(f[i], d);
  return out;
}

Poly decompress_poly(const Poly& f, int d) {
  Poly out{};
  for (std::size_t i = 0; i < kN; ++i) out[i] = decompress(f[i], d);
  return out;
}

// Algorithm 7. The XOF stream is squeezed in one shot; if rejection sampling
// runs past it, the whole stream is recomputed longer (XOF output is
// prefix-stable, so the result is unchanged).
Poly sample_ntt(ByteView rho, std::uint8_t j, std::uint8_t i) {
  const std::array<std::uint8_t, 2> idx{j, i};
  Poly a{};
  std::size_t filled = 0;
  std::size_t pos = 0;
  Bytes stream(3 * 168);
  keccak::shake128({rho, idx}, stream);
  while (filled < kN) {
    if (pos + 3 > stream.size()) {
      stream.resize(stream.size() * 2);
      keccak::shake128({rho, idx}, stream);
    }
    std::uint32_t c0 = stream[pos], c1 = stream[pos + 1], c2 = stream[pos + 2];
    pos += 3;
    std::uint32_t d1 = c0 + 256 * (c1 % 16);
    std::uint32_t d2 = c1 / 16 + 16 * c2;
    if (d1 < kQ) a[filled++] = static_cast<std::uint16_t>(d1);
    if (d2 < kQ && filled < kN) a[filled++] = static_cast<std::uint16_t>(d2);
  }
  return a;
}

// Algorithm 8 composed with PRF_eta(s, b) = SHAKE256(s || b, 64 * eta).
Poly sample_cbd(ByteView seed, std::uint8_t nonce, int eta) {
  std::array<std::uint8_t, 64 * 3> buf{};
  auto prf = std::span(buf).first(static_cast<std::size_t>(64 * eta));
  const std::array<std::uint8_t, 1> n{nonce};
  keccak::shake256({seed, n}, prf);
  auto bit = [&](std::size_t k) -> std::uint32_t { return (prf[k / 8] >> (k % 8)) & 1u; };
  Poly f{};
  for (std::size_t i = 0; i < kN; ++i) {
    std::uint32_t x = 0, y = 0;
    for (int j = 0; j < eta; ++j) {
      x += bit(2 * i * eta + j);
      y += bit(2 * i * eta + eta + j);
    }
    f[i] = sub_q(x, y);
  }
  return f;
}

Matrix expand_matrix(ByteView rho) {
  Matrix a{};
  for (int i = 0; i < kK; ++i) {
    for (int j = 0; j < kK; ++j) {
      a[i][j] = sample_ntt(rho, static_cast<std::uint8_t>(j), static_cast<std::uint8_t>(i));
    }
  }
  return a;
}

struct PkeKeys {
  Bytes ek;  // ByteEncode12(t_hat) || rho
  Bytes dk;  // ByteEncode12(s_hat)
};

// Algorithm 13.
PkeKeys pke_keygen(Seed d) {
  const std::array<std::uint8_t, 1> k{kK};
  auto g = keccak::sha3_512({d, k});
  ByteView rho(g.data(), 32);
  ByteView sigma(g.data() + 32, 32);

  Matrix a = expand_matrix(rho);
  std::uint8_t nonce = 0;
  PolyVec s{}, e{};
  for (auto& p : s) p = sample_cbd(sigma, nonce++, kEta1);
  for (auto& p : e) p = sample_cbd(sigma, nonce++, kEta1);
  for (auto& p : s) ntt(p);
  for (auto& p : e) ntt(p);

  PkeKeys keys;
  keys.ek.resize(kPkePublicBytes);
  keys.dk.resize(kPkeSecretBytes);
  for (int i = 0; i < kK; ++i) {
    Poly t = e[i];
    for (int j = 0; j < kK; ++j) multiply_ntts_add(t, a[i][j], s[j]);
    byte_encode(t, 12, keys.ek.data() + i * kPolyBytes);
    byte_encode(s[i], 12, keys.dk.data() + i * kPolyBytes);
  }
  std::copy(rho.begin(), rho.end(), keys.ek.begin() + kK * kPolyBytes);
  return keys;
}

// Algorithm 14.
Bytes pke_encrypt(ByteView ek, ByteView m, ByteView r) {
  PolyVec t{};
  for (int i = 0; i < kK; ++i) t[i] = byte_decode(ek.data() + i * kPolyBytes, 12);
  ByteView rho = ek.subspan(kK * kPolyBytes, 32);
  Matrix a = expand_matrix(rho);

  std::uint8_t nonce = 0;
  PolyVec y{}, e1{};
  for (auto& p : y) p = sample_cbd(r, nonce++, kEta1);
  for (auto& p : e1) p = sample_cbd(r, nonce++, kEta2);
  Poly e2 = sample_cbd(r, nonce++, kEta2);
  for (auto& p : y) ntt(p);

  Bytes c(kCiphertextBytes);
  for (int i = 0; i < kK; ++i) {
    Poly u{};
    for (int j = 0; j < kK; ++j) multiply_ntts_add(u, a[j][i], y[j]);
    ntt_inverse(u);
    poly_add(u, e1[i]);
    byte_encode(compress_poly(u, kDu), kDu, c.data() + i * 32 * kDu);
  }

  Poly v{};
  for (int i = 0; i < kK; ++i) multiply_ntts_add(v, t[i], y[i]);
  ntt_inverse(v);
  poly_add(v, e2);
  poly_add(v, decompress_poly(byte_decode(m.data(), 1), 1));
  byte_encode(compress_poly(v, kDv), kDv, c.data() + kC1Bytes);
  return c;
}

// Algorithm 15.
std::array<std::uint8_t, 32> pke_decrypt(ByteView dk_pke, ByteView c) {
  Poly w{};
  for (int i = 0; i < kK; ++i) {
    Poly u = decompress_poly(byte_decode(c.data() + i * 32 * kDu, kDu), kDu);
    ntt(u);
    Poly s = byte_decode(dk_pke.data() + i * kPolyBytes, 12);
    multiply_ntts_add(w, s, u);
  }
  ntt_inverse(w);
  Poly v = decompress_poly(byte_decode(c.data() + kC1Bytes, kDv), kDv);
  for (std::size_t i = 0; i < kN; ++i) w[i] = sub_q(v[i], w[i]);

  std::array<std::uint8_t, 32> m{};
  byte_encode(compress_poly(w, 1), 1, m.data());
  return m;
}

}  // namespace

KeyPair keygen_internal(Seed d, Seed z) {
  PkeKeys pke = pke_keygen(d);
  auto h = keccak::sha3_256({pke.ek});

  KeyPair kp;
  kp.decapsulation_key.reserve(kDecapsulationKeyBytes);
  kp.decapsulation_key.insert(kp.decapsulation_key.end(), pke.dk.begin(), pke.dk.end());
  kp.decapsulation_key.insert(kp.decapsulation_key.end(), pke.ek.begin(), pke.ek.end());
  kp.decapsulation_key.insert(kp.decapsulation_key.end(), h.begin(), h.end());
  kp.decapsulation_key.insert(kp.decapsulation_key.end(), z.begin(), z.end());
  kp.encapsulation_key = std::move(pke.ek);
  return kp;
}

Encapsulated encaps_internal(ByteView ek, Seed m) {
  auto h = keccak::sha3_256({ek});
  auto g = keccak::sha3_512({m, h});
  Encapsulated out;
  std::copy_n(g.begin(), 32, out.shared_secret.begin());
  out.ciphertext = pke_encrypt(ek, m, ByteView(g.data() + 32, 32));
  return out;
}

SharedSecret decaps_internal(ByteView dk, ByteView c) {
  ByteView dk_pke = dk.first(kPkeSecretBytes);
  ByteView ek_pke = dk.subspan(kPkeSecretBytes, kPkePublicBytes);
  ByteView h = dk.subspan(kPkeSecretBytes + kPkePublicBytes, 32);
  ByteView z = dk.subspan(kPkeSecretBytes + kPkePublicBytes + 32, 32);

  auto m_prime = pke_decrypt(dk_pke, c);
  auto g = keccak::sha3_512({m_prime, h});
  SharedSecret k_bar{};
  keccak::shake256({z, c}, k_bar);
  Bytes c_prime = pke_encrypt(ek_pke, m_prime, ByteView(g.data() + 32, 32));

  SharedSecret out{};
  const bool equal = CRYPTO_memcmp(c.data(), c_prime.data(), kCiphertextBytes) == 0;
  // Branch-free select between K' and K_bar.
  const std::uint8_t mask = static_cast<std::uint8_t>(-static_cast<int>(equal));
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = static_cast<std::uint8_t>((g[i] & mask) | (k_bar[i] & ~mask));
  }
  return out;
}

bool valid_encapsulation_key(ByteView ek) {
  if (ek.size() != kEncapsulationKeyBytes) return false;
  std::array<std::uint8_t, kPolyBytes> reencoded{};
  for (int i = 0; i < kK; ++i) {
    const std::uint8_t* chunk = ek.data() + i * kPolyBytes;
    byte_encode(byte_decode(chunk, 12), 12, reencoded.data());
    if (!std::equal(reencoded.begin(), reencoded.end(), chunk)) return false;
  }
  return true;
}

bool valid_decapsulation_key(ByteView dk) {
  if (dk.size() != kDecapsulationKeyBytes) return false;
  auto h = keccak::sha3_256({dk.subspan(kPkeSecretBytes, kPkePublicBytes)});
  return std::equal(h.begin(), h.end(), dk.begin() + kPkeSecretBytes + kPkePublicBytes);
}

}  // namespace qkdn::crypto::mlkem768
