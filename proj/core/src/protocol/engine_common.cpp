#include "engine_common.hpp"

#include <exception>
#include <thread>

namespace qkdn::protocol::detail {

void NodeContext::send(const NodeId& to, MessageKind kind, Bytes payload,
                       std::optional<std::string> qkd_key_id) {
  channel_.send(netsim::Envelope{id_, to, kind, std::move(payload), std::move(qkd_key_id)});
}

netsim::Envelope NodeContext::expect(MessageKind kind) {
  auto env = channel_.recv(id_, options_.timeout);
  if (env.kind != kind) {
    throw UnexpectedMessage(id_ + " expected " + std::string(netsim::to_string(kind)) + ", got " +
                            std::string(netsim::to_string(env.kind)) + " from " + env.from);
  }
  return env;
}

kms::QkdKey NodeContext::offer_link_key(const NodeId& downstream) {
  auto keys = kms_.get_enc_keys(id_, downstream, 1, kms::kSupportedKeyBits);
  report_.outbound_key_id = keys.front().key_id;
  const auto& id = keys.front().key_id;
  send(downstream, MessageKind::kKeySync, Bytes(id.begin(), id.end()));
  return keys.front();
}

kms::QkdKey NodeContext::accept_link_key(const NodeId& upstream) {
  auto env = expect(MessageKind::kKeySync);
  if (env.from != upstream) {
    throw UnexpectedMessage(id_ + " expected key sync from " + upstream + ", got " + env.from);
  }
  std::vector<kms::KeyId> ids{kms::KeyId(env.payload.begin(), env.payload.end())};
  return kms_.get_dec_keys(id_, upstream, ids).front();
}

void Gate::open() {
  {
    std::lock_guard lock(mu_);
    open_ = true;
  }
  cv_.notify_all();
}

void Gate::abort() {
  {
    std::lock_guard lock(mu_);
    aborted_ = true;
  }
  cv_.notify_all();
}

void Gate::wait(std::chrono::microseconds timeout) {
  std::unique_lock lock(mu_);
  if (!cv_.wait_for(lock, timeout, [&] { return open_ || aborted_; })) {
    throw netsim::Timeout("timed out waiting for the distribution to start");
  }
  if (aborted_) throw netsim::BarrierAborted("trial aborted");
}

std::vector<NodeReport> run_trial(std::vector<Participant> participants, netsim::Channel& channel,
                                  kms::KmsClient& kms, const crypto::Rng& rng,
                                  const EngineOptions& options) {
  for (const auto& p : participants) channel.register_node(p.id);
  channel.drain_wiretap();
  channel.set_wiretap(true);

  std::vector<NodeId> ids;
  for (const auto& p : participants) ids.push_back(p.id);
  auto start = channel.make_barrier(ids);
  Gate secret_gate;

  std::vector<NodeReport> reports(participants.size());
  std::vector<std::exception_ptr> errors(participants.size());
  {
    std::vector<std::jthread> threads;
    threads.reserve(participants.size());
    for (std::size_t i = 0; i < participants.size(); ++i) {
      threads.emplace_back([&, i] {
        try {
          NodeContext ctx(participants[i].id, channel, kms, rng.derive(participants[i].id), *start,
                          secret_gate, options, reports[i]);
          participants[i].body(ctx);
        } catch (...) {
          errors[i] = std::current_exception();
          start->abort();
          secret_gate.abort();
          channel.shutdown();
        }
      });
    }
  }

  // Prefer the root cause over the ChannelDown/BarrierAborted fallout it caused.
  std::exception_ptr first;
  for (auto& e : errors) {
    if (!e) continue;
    try {
      std::rethrow_exception(e);
    } catch (const netsim::ChannelDown&) {
      if (!first) first = e;
    } catch (const netsim::BarrierAborted&) {
      if (!first) first = e;
    } catch (...) {
      std::rethrow_exception(e);
    }
  }
  if (first) std::rethrow_exception(first);
  return reports;
}

DistributionResult assemble(const Circuit& circuit, const std::vector<Participant>& participants,
                            std::vector<NodeReport>& reports, netsim::Channel& channel) {
  DistributionResult result;
  const auto& init = reports.front();
  const auto& dest = reports[circuit.size() - 1];
  if (!init.secret || !dest.secret || !init.secret_created || !dest.secret_recovered) {
    throw Error("trial finished without a secret on both ends");
  }
  result.secret_sent = *init.secret;
  result.secret_received = *dest.secret;
  result.distribution_time = *dest.secret_recovered - *init.secret_created;
  if (channel.config().time_mode == netsim::TimeMode::kVirtual) {
    // Neither end receives anything after the secret exists on it, so their
    // final virtual clocks bracket the simulated network latency.
    const auto& nodes = circuit.nodes();
    result.distribution_time += channel.virtual_now(nodes.back()) - channel.virtual_now(nodes.front());
  }

  for (const auto& r : reports) result.encryption_time += r.encryption;
  for (std::size_t i = 0; i < participants.size(); ++i) {
    result.transcripts[participants[i].id] = std::move(reports[i].transcript);
  }
  for (std::size_t i = 0; i < circuit.link_count(); ++i) {
    result.link_key_ids.push_back(reports[i].outbound_key_id);
  }

  channel.set_wiretap(false);
  result.wire = channel.drain_wiretap();
  for (const auto& env : result.wire) {
    if (netsim::is_distribution_message(env.kind)) ++result.messages_sent;
  }
  return result;
}

void check_key_id(const netsim::Envelope& env, const kms::QkdKey& key) {
  if (env.qkd_key_id != key.key_id) {
    throw UnexpectedMessage("payload from " + env.from + " is not protected by the agreed link key");
  }
}

}  // namespace qkdn::protocol::detail
