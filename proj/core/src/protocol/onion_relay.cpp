#include "engine_common.hpp"
#include "qkdn/protocol/onion.hpp"

namespace qkdn::protocol {

using namespace detail;

namespace {

bool link_protected(std::size_t link, const EngineOptions& options) {
  return link == 0 || options.orr_qkd_every_hop;
}

}  // namespace

DistributionResult run_orr(const Circuit& circuit, netsim::Channel& channel, kms::KmsClient& kms,
                           const NegotiatedKeys& keys, const crypto::Rng& rng,
                           const EngineOptions& options) {
  const auto& nodes = circuit.nodes();
  const std::size_t last = nodes.size() - 1;
  for (std::size_t i = 1; i <= last; ++i) {
    (void)keys.initiator_view.at(nodes[i]);  // throws MissingKey
    (void)keys.node_view.at(nodes[i]);
  }

  // Strips the inbound QKD layer when the link is protected.
  auto receive_onion = [&](NodeContext& ctx, std::size_t i, const std::optional<kms::QkdKey>& in) {
    auto env = ctx.expect(MessageKind::kOnionHop);
    if (!in) {
      if (env.qkd_key_id) throw UnexpectedMessage("unexpected QKD layer on link " + std::to_string(i - 1));
      return std::move(env.payload);
    }
    check_key_id(env, *in);
    return ctx.cipher().decrypt_framed(in->key, env.payload);
  };
  auto inbound_key = [&](NodeContext& ctx, std::size_t i) -> std::optional<kms::QkdKey> {
    if (!link_protected(i - 1, options)) return std::nullopt;
    return ctx.accept_link_key(nodes[i - 1]);
  };

  std::vector<Participant> participants;

  participants.push_back({nodes[0], [&](NodeContext& ctx) {
    auto out = ctx.offer_link_key(nodes[1]);
    ctx.start_distribution();

    auto& report = ctx.report();
    ctx.mark_secret_created();
    auto secret = crypto::generate_secret(ctx.rng());
    const auto t0 = Clock::now();
    auto onion = wrap_onion(secret, circuit, keys.initiator_view, ctx.rng(), ctx.cipher());
    auto framed = ctx.cipher().encrypt_framed(out.key, onion.layers, ctx.rng());
    report.encryption = Clock::now() - t0;
    report.secret = secret;
    report.transcript.push_back(secret.to_vector());
    report.transcript.push_back(std::move(onion.layers));
    ctx.send(nodes[1], MessageKind::kOnionHop, std::move(framed), out.key_id);
  }});

  for (std::size_t i = 1; i < last; ++i) {
    participants.push_back({nodes[i], [&, i](NodeContext& ctx) {
      auto in = inbound_key(ctx, i);
      std::optional<kms::QkdKey> out;
      if (link_protected(i, options)) out = ctx.offer_link_key(nodes[i + 1]);
      const auto& own = keys.node_view.at(nodes[i]);
      ctx.start_distribution();

      auto onion = receive_onion(ctx, i, in);
      auto inner = peel_layer(onion, own, ctx.cipher());
      auto& report = ctx.report();
      report.transcript.push_back(std::move(onion));
      report.transcript.push_back(inner);
      if (out) {
        ctx.send(nodes[i + 1], MessageKind::kOnionHop,
                 ctx.cipher().encrypt_framed(out->key, inner, ctx.rng()), out->key_id);
      } else {
        ctx.send(nodes[i + 1], MessageKind::kOnionHop, std::move(inner));
      }
    }});
  }

  participants.push_back({nodes[last], [&](NodeContext& ctx) {
    auto in = inbound_key(ctx, last);
    const auto& own = keys.node_view.at(nodes[last]);
    ctx.start_distribution();

    auto onion = receive_onion(ctx, last, in);
    auto secret = crypto::Secret::from_bytes(peel_layer(onion, own, ctx.cipher()));
    auto& report = ctx.report();
    report.secret_recovered = Clock::now();
    report.secret = secret;
    report.transcript.push_back(std::move(onion));
    report.transcript.push_back(secret.to_vector());
  }});

  auto reports = run_trial(participants, channel, kms, rng, options);
  return assemble(circuit, participants, reports, channel);
}

}  // namespace qkdn::protocol
