// Microbenchmarks for the primitives behind each model's encryption region,
// plus whole distribution runs over an in-process KMS.
#include <benchmark/benchmark.h>

#include "qkdn/crypto/bytes.hpp"
#include "qkdn/crypto/cbc.hpp"
#include "qkdn/crypto/kem.hpp"
#include "qkdn/crypto/otp.hpp"
#include "qkdn/crypto/rng.hpp"
#include "qkdn/harness/scenario.hpp"
#include "qkdn/kms/client.hpp"
#include "qkdn/kms/key_store.hpp"
#include "qkdn/protocol/engines.hpp"
#include "qkdn/protocol/onion.hpp"
#include "qkdn/protocol/session.hpp"

namespace {

using namespace qkdn;

void BM_XorInto(benchmark::State& state) {
  auto rng = crypto::Rng::from_seed(1);
  Bytes acc = rng.bytes(32);
  const Bytes key = rng.bytes(32);
  for (auto _ : state) {
    crypto::xor_into(acc, key);
    benchmark::DoNotOptimize(acc.data());
  }
}
BENCHMARK(BM_XorInto);

// The trusted node's fold over n-1 shares.
void BM_TnFold(benchmark::State& state) {
  auto rng = crypto::Rng::from_seed(2);
  std::vector<Bytes> shares;
  for (int i = 0; i < state.range(0) - 1; ++i) shares.push_back(rng.bytes(32));
  Bytes folded(32);
  for (auto _ : state) {
    std::fill(folded.begin(), folded.end(), 0);
    for (const auto& s : shares) crypto::xor_into(folded, s);
    benchmark::DoNotOptimize(folded.data());
  }
}
BENCHMARK(BM_TnFold)->DenseRange(3, 11, 2);

void BM_AesCbcEncrypt(benchmark::State& state) {
  auto rng = crypto::Rng::from_seed(3);
  const auto key = crypto::SymKey::from_bytes(rng.bytes(32));
  const Bytes plain = rng.bytes(static_cast<std::size_t>(state.range(0)));
  crypto::CbcCipher cipher;
  for (auto _ : state) benchmark::DoNotOptimize(cipher.encrypt(key, plain, rng));
  state.SetBytesProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_AesCbcEncrypt)->RangeMultiplier(4)->Range(32, 2048);

void BM_KemKeygen(benchmark::State& state) {
  auto rng = crypto::Rng::from_seed(4);
  for (auto _ : state) benchmark::DoNotOptimize(crypto::kem_keygen(rng));
}
BENCHMARK(BM_KemKeygen);

void BM_KemEncapsulate(benchmark::State& state) {
  auto rng = crypto::Rng::from_seed(5);
  const auto kp = crypto::kem_keygen(rng);
  for (auto _ : state) benchmark::DoNotOptimize(crypto::kem_encapsulate(kp.public_key, rng));
}
BENCHMARK(BM_KemEncapsulate);

void BM_KemDecapsulate(benchmark::State& state) {
  auto rng = crypto::Rng::from_seed(6);
  const auto kp = crypto::kem_keygen(rng);
  const auto enc = crypto::kem_encapsulate(kp.public_key, rng);
  for (auto _ : state) benchmark::DoNotOptimize(crypto::kem_decapsulate(kp.secret_key, enc.ciphertext));
}
BENCHMARK(BM_KemDecapsulate);

struct Fixture {
  protocol::Circuit circuit;
  kms::KeyManagementService service{crypto::Rng::from_seed(7)};
  kms::InProcessKmsClient client{service};
  protocol::NegotiatedKeys keys;

  Fixture(int n, std::size_t keys_per_link) : circuit(harness::circuit_node_ids(n)) {
    for (std::size_t i = 0; i < circuit.link_count(); ++i) {
      auto [a, b] = circuit.link(i);
      service.provision_link(a, b, keys_per_link);
    }
    netsim::Channel neg;
    keys = protocol::negotiate_session_keys(circuit, neg, crypto::Rng::from_seed(8));
  }
};

void BM_WrapOnion(benchmark::State& state) {
  Fixture f(static_cast<int>(state.range(0)), 1);
  auto rng = crypto::Rng::from_seed(9);
  const auto secret = crypto::generate_secret(rng);
  crypto::CbcCipher cipher;
  for (auto _ : state) {
    benchmark::DoNotOptimize(protocol::wrap_onion(secret, f.circuit, f.keys.initiator_view, rng, cipher));
  }
}
BENCHMARK(BM_WrapOnion)->DenseRange(3, 11, 2);

void BM_Negotiation(benchmark::State& state) {
  protocol::Circuit circuit(harness::circuit_node_ids(static_cast<int>(state.range(0))));
  const auto rng = crypto::Rng::from_seed(10);
  for (auto _ : state) {
    netsim::Channel channel;
    benchmark::DoNotOptimize(protocol::negotiate_session_keys(circuit, channel, rng));
  }
}
BENCHMARK(BM_Negotiation)->DenseRange(3, 11, 4)->Unit(benchmark::kMicrosecond);

template <harness::Model M>
void BM_Distribution(benchmark::State& state) {
  // Each run consumes one key per link; provision for a generous upper bound.
  Fixture f(static_cast<int>(state.range(0)), 200000);
  const auto rng = crypto::Rng::from_seed(11);
  for (auto _ : state) {
    netsim::Channel channel;
    protocol::DistributionResult r;
    if constexpr (M == harness::Model::kKr) r = protocol::run_kr(f.circuit, channel, f.client, rng);
    if constexpr (M == harness::Model::kTn) r = protocol::run_tn(f.circuit, channel, f.client, rng);
    if constexpr (M == harness::Model::kOrr) {
      r = protocol::run_orr(f.circuit, channel, f.client, f.keys, rng);
    }
    if (!r.succeeded()) state.SkipWithError("secret mismatch");
  }
}
BENCHMARK(BM_Distribution<harness::Model::kKr>)->DenseRange(3, 11, 4)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_Distribution<harness::Model::kTn>)->DenseRange(3, 11, 4)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_Distribution<harness::Model::kOrr>)->DenseRange(3, 11, 4)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
