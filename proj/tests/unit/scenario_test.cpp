#include <gtest/gtest.h>

#include <cmath>
#include <map>

#include "qkdn/crypto/rng.hpp"
#include "qkdn/harness/scenario.hpp"
#include "qkdn/harness/stats.hpp"
#include "qkdn/kms/http.hpp"
#include "qkdn/kms/key_store.hpp"

namespace qkdn::harness {
namespace {

Scenario small(Model m, std::vector<int> sizes, int trials) {
  Scenario s;
  s.model = m;
  s.circuit_sizes = std::move(sizes);
  s.trials = trials;
  s.warmup = 2;
  s.seed = 42;
  return s;
}

TEST(Scenario, Validation) {
  auto s = small(Model::kKr, {3}, 1);
  s.circuit_sizes = {1};
  EXPECT_THROW(s.validate(), InvalidArgument);
  s.circuit_sizes = {65};
  EXPECT_THROW(s.validate(), InvalidArgument);
  s.circuit_sizes = {};
  EXPECT_THROW(s.validate(), InvalidArgument);
  s.circuit_sizes = {3};
  s.trials = 0;
  EXPECT_THROW(s.validate(), InvalidArgument);
  s.trials = 1;
  s.warmup = -1;
  EXPECT_THROW(run_scenario(s), InvalidArgument);
}

TEST(Scenario, KrTenTrialsGivesTwoRows) {
  auto r = run_scenario(small(Model::kKr, {3}, 10));
  ASSERT_EQ(r.rows.size(), 2u);
  EXPECT_EQ(r.invalid_trials, 0u);
  EXPECT_EQ(r.raw.size(), 10u);
  for (const auto& row : r.rows) {
    EXPECT_EQ(row.trials, 10);
    EXPECT_EQ(row.n_nodes, 3);
  }
}

TEST(Scenario, AllModelsAllSizes) {
  for (auto m : {Model::kKr, Model::kTn, Model::kOrr}) {
    auto r = run_scenario(small(m, {3, 5, 7, 9, 11}, 5));
    EXPECT_EQ(r.rows.size(), 10u);
    EXPECT_EQ(r.invalid_trials, 0u);
    EXPECT_DOUBLE_EQ(r.invalid_rate(), 0.0);
    for (const auto& t : r.raw) {
      ASSERT_TRUE(t.valid);
      ASSERT_GE(t.distribution_us, t.encryption_us);
      ASSERT_EQ(t.messages_sent, static_cast<std::size_t>(m == Model::kTn ? t.n_nodes : t.n_nodes - 1));
    }
  }
}

TEST(Scenario, AggregatesMatchRawRecords) {
  auto r = run_scenario(small(Model::kOrr, {3, 5}, 25));
  std::map<std::pair<int, Metric>, std::vector<double>> samples;
  for (const auto& t : r.raw) {
    samples[{t.n_nodes, Metric::kEncryptionTime}].push_back(t.encryption_us);
    samples[{t.n_nodes, Metric::kDistributionTime}].push_back(t.distribution_us);
  }
  for (const auto& row : r.rows) {
    auto s = summarize(samples.at({row.n_nodes, row.metric}));
    EXPECT_NEAR(row.mean_us, s.mean, 1e-9 * std::max(1.0, s.mean));
    EXPECT_DOUBLE_EQ(row.median_us, s.median);
  }
}

TEST(Scenario, FixedSeedReproducesSecrets) {
  for (auto m : {Model::kKr, Model::kTn, Model::kOrr}) {
    auto a = run_scenario(small(m, {3, 4}, 6));
    auto b = run_scenario(small(m, {3, 4}, 6));
    ASSERT_EQ(a.raw.size(), b.raw.size());
    for (std::size_t i = 0; i < a.raw.size(); ++i) EXPECT_EQ(a.raw[i].secret_hex, b.raw[i].secret_hex);
    auto c = small(m, {3}, 6);
    c.seed = 43;
    EXPECT_NE(run_scenario(c).raw.front().secret_hex, a.raw.front().secret_hex);
  }
}

TEST(Scenario, NodeIds) {
  EXPECT_EQ(circuit_node_ids(3, "x."), (std::vector<std::string>{"x.N00", "x.N01", "x.N02"}));
}

TEST(Scenario, RemoteKmsAcrossRepeatedRuns) {
  kms::KeyManagementService service(crypto::Rng::from_seed(1));
  kms::KmsHttpServer server(service);
  const int port = server.start("127.0.0.1", 0);
  kms::HttpKmsClient client("127.0.0.1", port);
  for (int run = 0; run < 2; ++run) {
    auto r = run_scenario(small(Model::kOrr, {3}, 3), &client);
    EXPECT_EQ(r.invalid_trials, 0u);
    EXPECT_EQ(r.rows.size(), 2u);
  }
  server.stop();
}

TEST(Scenario, VirtualLatencyShowsInDistributionTime) {
  auto s = small(Model::kKr, {3, 5}, 3);
  s.channel.latency = netsim::FixedLatency{std::chrono::milliseconds(10)};
  s.channel.time_mode = netsim::TimeMode::kVirtual;
  auto r = run_scenario(s);
  for (const auto& t : r.raw) EXPECT_GE(t.distribution_us, 10000.0 * (t.n_nodes - 1));
}

}  // namespace
}  // namespace qkdn::harness
