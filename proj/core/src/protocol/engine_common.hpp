#pragma once

#include <condition_variable>
#include <functional>
#include <mutex>
#include <optional>

#include "qkdn/crypto/cbc.hpp"
#include "qkdn/netsim/barrier.hpp"
#include "qkdn/protocol/engines.hpp"

namespace qkdn::protocol::detail {

using Clock = std::chrono::steady_clock;
using netsim::MessageKind;

/// Written only by the owning node thread; read after join.
struct NodeReport {
  std::vector<Bytes> transcript;
  std::optional<crypto::Secret> secret;  // generated (initiator) or recovered (destination)
  std::optional<Clock::time_point> secret_created;
  std::optional<Clock::time_point> secret_recovered;
  std::chrono::nanoseconds encryption{0};
  kms::KeyId outbound_key_id;
};

/// One-shot signal: waiters block until open() or abort().
class Gate {
 public:
  void open();
  void abort();
  /// Throws netsim::Timeout or netsim::BarrierAborted.
  void wait(std::chrono::microseconds timeout);

 private:
  std::mutex mu_;
  std::condition_variable cv_;
  bool open_ = false;
  bool aborted_ = false;
};

class NodeContext {
 public:
  NodeContext(NodeId id, netsim::Channel& channel, kms::KmsClient& kms, crypto::Rng rng,
              netsim::Barrier& start, Gate& secret_gate, const EngineOptions& options,
              NodeReport& report)
      : id_(std::move(id)),
        channel_(channel),
        kms_(kms),
        rng_(std::move(rng)),
        start_(start),
        secret_gate_(secret_gate),
        options_(options),
        report_(report) {}

  [[nodiscard]] const NodeId& id() const { return id_; }
  crypto::Rng& rng() { return rng_; }
  kms::KmsClient& kms() { return kms_; }
  crypto::CbcCipher& cipher() { return cipher_; }
  NodeReport& report() { return report_; }
  [[nodiscard]] const EngineOptions& options() const { return options_; }

  void send(const NodeId& to, MessageKind kind, Bytes payload,
            std::optional<std::string> qkd_key_id = std::nullopt);

  /// Receives the next envelope and checks its kind. Throws UnexpectedMessage.
  netsim::Envelope expect(MessageKind kind);

  /// Setup-phase QKD key agreement with a neighbour: the upstream end draws a
  /// key via enc_keys and announces its id with KEY_SYNC; the downstream end
  /// fetches the same bytes via dec_keys.
  kms::QkdKey offer_link_key(const NodeId& downstream);
  kms::QkdKey accept_link_key(const NodeId& upstream);

  /// Ends setup; distribution starts once every participant gets here.
  void start_distribution() { start_.arrive_and_wait(options_.timeout); }

  /// Initiator: stamps the start of the distribution clock and releases
  /// nodes waiting in await_secret().
  void mark_secret_created() {
    report_.secret_created = Clock::now();
    secret_gate_.open();
  }
  /// For nodes whose distribution work needs no inbound message: keeps it
  /// from running ahead of the clock start.
  void await_secret() { secret_gate_.wait(options_.timeout); }

 private:
  NodeId id_;
  netsim::Channel& channel_;
  kms::KmsClient& kms_;
  crypto::Rng rng_;
  netsim::Barrier& start_;
  Gate& secret_gate_;
  const EngineOptions& options_;
  NodeReport& report_;
  crypto::CbcCipher cipher_;
};

struct Participant {
  NodeId id;
  std::function<void(NodeContext&)> body;
};

/// Runs every participant on its own thread and returns their reports in
/// participant order. The first failure aborts the trial: the channel is shut
/// down so blocked peers unwind, and that failure is rethrown after join.
std::vector<NodeReport> run_trial(std::vector<Participant> participants, netsim::Channel& channel,
                                  kms::KmsClient& kms, const crypto::Rng& rng,
                                  const EngineOptions& options);

/// Folds the reports of circuit nodes (in circuit order, first circuit.size()
/// entries of `reports`) plus any extra participants into a result.
DistributionResult assemble(const Circuit& circuit, const std::vector<Participant>& participants,
                            std::vector<NodeReport>& reports, netsim::Channel& channel);

/// Throws UnexpectedMessage unless `env` is protected by `key`.
void check_key_id(const netsim::Envelope& env, const kms::QkdKey& key);

}  // namespace qkdn::protocol::detail
