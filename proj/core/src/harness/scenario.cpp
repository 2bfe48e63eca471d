#include "qkdn/harness/scenario.hpp"

#include <algorithm>
#include <cstdio>
#include <variant>
#include <optional>

#include "qkdn/kms/key_store.hpp"
#include "qkdn/protocol/circuit.hpp"
#include "qkdn/protocol/engines.hpp"

namespace qkdn::harness {

namespace {

using namespace std::chrono;

double to_us(nanoseconds d) { return duration<double, std::micro>(d).count(); }

std::string point_label(Model model, int n) {
  return std::string(to_string(model)) + "/" + std::to_string(n);
}

void configure_distances(netsim::Channel& channel, const protocol::Circuit& circuit) {
  if (!std::holds_alternative<netsim::PerHopLatency>(channel.config().latency)) return;
  channel.set_hop_distance([&circuit](const netsim::NodeId& a, const netsim::NodeId& b) {
    const auto& nodes = circuit.nodes();
    auto pa = std::find(nodes.begin(), nodes.end(), a);
    auto pb = std::find(nodes.begin(), nodes.end(), b);
    // The trusted node is one classical hop from everyone.
    if (pa == nodes.end() || pb == nodes.end()) return 1;
    return static_cast<int>(pa > pb ? pa - pb : pb - pa);
  });
}

}  // namespace

void Scenario::validate() const {
  if (circuit_sizes.empty()) throw InvalidArgument("at least one circuit size is required");
  for (int n : circuit_sizes) {
    if (n < 2 || n > 64) throw InvalidArgument("circuit sizes must lie in [2, 64], got " + std::to_string(n));
  }
  if (trials < 1) throw InvalidArgument("trials must be >= 1");
  if (warmup < 0) throw InvalidArgument("warmup must be >= 0");
  channel.validate();
}

double ScenarioResult::invalid_rate() const {
  const auto total = raw.size();
  return total == 0 ? 0.0 : static_cast<double>(invalid_trials) / static_cast<double>(total);
}

std::vector<std::string> circuit_node_ids(int n, const std::string& prefix) {
  std::vector<std::string> ids;
  for (int i = 0; i < n; ++i) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "N%02d", i);
    ids.push_back(prefix + buf);
  }
  return ids;
}

ScenarioResult run_scenario(const Scenario& s, kms::KmsClient* external_kms) {
  s.validate();
  const auto master = s.seed ? crypto::Rng::from_seed(*s.seed) : crypto::Rng::from_entropy();

  // A remote KME outlives this run, so link names must not collide with
  // earlier runs against the same server.
  std::string run_tag;
  if (external_kms != nullptr) {
    auto tag_rng = crypto::Rng::from_entropy();
    run_tag = to_hex(tag_rng.bytes(4)) + ".";
  }

  protocol::EngineOptions options;
  options.timeout = s.timeout;
  options.orr_qkd_every_hop = s.orr_qkd_every_hop;

  ScenarioResult out;
  for (int n : s.circuit_sizes) {
    const auto label = point_label(s.model, n);
    const auto prefix = run_tag + std::string(to_string(s.model)) + ".n" + std::to_string(n) + ".";
    const auto ids = circuit_node_ids(n, prefix);
    const auto circuit = protocol::build_circuit(protocol::Topology::line(ids), ids.front(), ids.back());
    options.trusted_node = prefix + "TN";

    std::optional<kms::KeyManagementService> local_kms;
    std::optional<kms::InProcessKmsClient> local_client;
    kms::KmsClient* kms = external_kms;
    if (kms == nullptr) {
      local_kms.emplace(master.derive("kms/" + label));
      local_client.emplace(*local_kms);
      kms = &*local_client;
    }
    const auto total = static_cast<std::size_t>(s.warmup + s.trials);
    for (std::size_t i = 0; i < circuit.link_count(); ++i) {
      auto [a, b] = circuit.link(i);
      kms->provision_link(a, b, total);
    }

    protocol::NegotiatedKeys keys;
    if (s.model == Model::kOrr) {
      netsim::Channel negotiation(s.channel);
      configure_distances(negotiation, circuit);
      keys = protocol::negotiate_session_keys(circuit, negotiation,
                                              master.derive("negotiation/" + label), s.timeout);
    }

    std::vector<double> enc, dist;
    for (int t = 0; t < s.warmup + s.trials; ++t) {
      const bool measured = t >= s.warmup;
      TrialRecord rec;
      rec.model = s.model;
      rec.n_nodes = n;
      rec.trial = t - s.warmup;

      netsim::Channel channel(s.channel);
      configure_distances(channel, circuit);
      const auto trial_rng = master.derive("trial/" + label + "/" + std::to_string(t));
      try {
        protocol::DistributionResult r;
        switch (s.model) {
          case Model::kKr:
            r = protocol::run_kr(circuit, channel, *kms, trial_rng, options);
            break;
          case Model::kTn:
            r = protocol::run_tn(circuit, channel, *kms, trial_rng, options);
            break;
          case Model::kOrr:
            r = protocol::run_orr(circuit, channel, *kms, keys, trial_rng, options);
            break;
        }
        if (!r.succeeded()) throw Error("destination recovered a different secret");
        rec.valid = true;
        rec.encryption_us = to_us(r.encryption_time);
        rec.distribution_us = to_us(r.distribution_time);
        rec.messages_sent = r.messages_sent;
        rec.secret_hex = to_hex(r.secret_sent.view());
      } catch (const std::exception& e) {
        rec.error = label + " trial " + std::to_string(t) + ": " + e.what();
        ++out.invalid_trials;
      }
      if (!measured) continue;
      if (rec.valid) {
        enc.push_back(rec.encryption_us);
        dist.push_back(rec.distribution_us);
      }
      out.raw.push_back(std::move(rec));
    }

    if (enc.empty()) continue;
    for (auto metric : {Metric::kEncryptionTime, Metric::kDistributionTime}) {
      const auto& samples = metric == Metric::kEncryptionTime ? enc : dist;
      auto sum = summarize(samples);
      out.rows.push_back(StatRow{s.model, n, metric, sum.mean, sum.median, sum.p95, sum.stddev,
                                 static_cast<int>(samples.size())});
    }
  }
  return out;
}

}  // namespace qkdn::harness
