#include "engine_common.hpp"
#include "qkdn/crypto/otp.hpp"

namespace qkdn::protocol {

using namespace detail;

DistributionResult run_tn(const Circuit& circuit, netsim::Channel& channel, kms::KmsClient& kms,
                          const crypto::Rng& rng, const EngineOptions& options) {
  const auto& nodes = circuit.nodes();
  const auto& tn = options.trusted_node;
  for (const auto& n : nodes) {
    if (n == tn) throw InvalidArgument("the trusted node must not be a circuit member");
  }
  const std::size_t last = nodes.size() - 1;
  std::vector<Participant> participants;

  participants.push_back({nodes[0], [&](NodeContext& ctx) {
    auto out = ctx.offer_link_key(nodes[1]);
    ctx.start_distribution();

    auto& report = ctx.report();
    ctx.mark_secret_created();
    auto secret = crypto::generate_secret(ctx.rng());
    report.secret = secret;
    report.transcript.push_back(secret.to_vector());
    ctx.send(tn, MessageKind::kTnShare, crypto::xor_otp(secret.view(), out.key.view()), out.key_id);
  }});

  for (std::size_t i = 1; i < last; ++i) {
    participants.push_back({nodes[i], [&, i](NodeContext& ctx) {
      auto in = ctx.accept_link_key(nodes[i - 1]);
      auto out = ctx.offer_link_key(nodes[i + 1]);
      ctx.start_distribution();
      ctx.await_secret();

      auto share = crypto::xor_otp(in.key.view(), out.key.view());
      ctx.report().transcript.push_back(share);
      ctx.send(tn, MessageKind::kTnShare, std::move(share), out.key_id);
    }});
  }

  participants.push_back({nodes[last], [&](NodeContext& ctx) {
    auto in = ctx.accept_link_key(nodes[last - 1]);
    ctx.start_distribution();

    auto env = ctx.expect(MessageKind::kTnFinal);
    check_key_id(env, in);
    auto secret = crypto::Secret::from_bytes(crypto::xor_otp(env.payload, in.key.view()));
    auto& report = ctx.report();
    report.secret_recovered = Clock::now();
    report.secret = secret;
    report.transcript.push_back(secret.to_vector());
  }});

  participants.push_back({tn, [&](NodeContext& ctx) {
    ctx.start_distribution();

    std::vector<netsim::Envelope> shares;
    shares.reserve(last);
    for (std::size_t k = 0; k < last; ++k) shares.push_back(ctx.expect(MessageKind::kTnShare));

    auto& report = ctx.report();
    Bytes folded(crypto::Secret::kSize, 0);
    const auto t0 = Clock::now();
    for (const auto& s : shares) crypto::xor_into(folded, s.payload);
    report.encryption = Clock::now() - t0;

    std::optional<std::string> final_key_id;
    for (const auto& s : shares) {
      report.transcript.push_back(s.payload);
      if (s.from == nodes[last - 1]) final_key_id = s.qkd_key_id;
    }
    report.transcript.push_back(folded);
    ctx.send(nodes[last], MessageKind::kTnFinal, std::move(folded), final_key_id);
  }});

  auto reports = run_trial(participants, channel, kms, rng, options);
  return assemble(circuit, participants, reports, channel);
}

}  // namespace qkdn::protocol
