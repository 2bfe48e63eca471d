#include "engine_common.hpp"
#include "qkdn/crypto/otp.hpp"

namespace qkdn::protocol {

using namespace detail;

DistributionResult run_kr(const Circuit& circuit, netsim::Channel& channel, kms::KmsClient& kms,
                          const crypto::Rng& rng, const EngineOptions& options) {
  const auto& nodes = circuit.nodes();
  const std::size_t last = nodes.size() - 1;
  std::vector<Participant> participants;

  participants.push_back({nodes[0], [&](NodeContext& ctx) {
    auto out = ctx.offer_link_key(nodes[1]);
    ctx.start_distribution();

    auto& report = ctx.report();
    ctx.mark_secret_created();
    auto secret = crypto::generate_secret(ctx.rng());
    // The buffer is allocated outside the timed region; only the XOR is measured.
    auto cipher = secret.to_vector();
    const auto t0 = Clock::now();
    crypto::xor_into(cipher, out.key.view());
    report.encryption = Clock::now() - t0;
    report.secret = secret;
    report.transcript.push_back(secret.to_vector());
    ctx.send(nodes[1], MessageKind::kKeyRelayHop, std::move(cipher), out.key_id);
  }});

  for (std::size_t i = 1; i < last; ++i) {
    participants.push_back({nodes[i], [&, i](NodeContext& ctx) {
      auto in = ctx.accept_link_key(nodes[i - 1]);
      auto out = ctx.offer_link_key(nodes[i + 1]);
      ctx.start_distribution();

      auto env = ctx.expect(MessageKind::kKeyRelayHop);
      check_key_id(env, in);
      auto plain = crypto::xor_otp(env.payload, in.key.view());
      auto onward = crypto::xor_otp(plain, out.key.view());
      ctx.report().transcript.push_back(std::move(plain));
      ctx.send(nodes[i + 1], MessageKind::kKeyRelayHop, std::move(onward), out.key_id);
    }});
  }

  participants.push_back({nodes[last], [&](NodeContext& ctx) {
    auto in = ctx.accept_link_key(nodes[last - 1]);
    ctx.start_distribution();

    auto env = ctx.expect(MessageKind::kKeyRelayHop);
    check_key_id(env, in);
    auto secret = crypto::Secret::from_bytes(crypto::xor_otp(env.payload, in.key.view()));
    auto& report = ctx.report();
    report.secret_recovered = Clock::now();
    report.secret = secret;
    report.transcript.push_back(secret.to_vector());
  }});

  auto reports = run_trial(participants, channel, kms, rng, options);
  return assemble(circuit, participants, reports, channel);
}

}  // namespace qkdn::protocol
