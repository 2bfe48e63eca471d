#include <gtest/gtest.h>

#include <vector>

#include "qkdn/crypto/rng.hpp"
#include "qkdn/harness/stats.hpp"

namespace qkdn::harness {
namespace {

TEST(Summarize, KnownValues) {
  std::vector<double> v{4, 1, 3, 2};
  auto s = summarize(v);
  EXPECT_DOUBLE_EQ(s.mean, 2.5);
  EXPECT_DOUBLE_EQ(s.median, 2.5);
  EXPECT_DOUBLE_EQ(s.min, 1);
  EXPECT_DOUBLE_EQ(s.max, 4);
  EXPECT_DOUBLE_EQ(s.p95, 4);
  EXPECT_NEAR(s.stddev, 1.2909944487358056, 1e-12);
}

TEST(Summarize, OddCountAndNearestRankP95) {
  std::vector<double> v;
  for (int i = 1; i <= 101; ++i) v.push_back(i);
  auto s = summarize(v);
  EXPECT_DOUBLE_EQ(s.median, 51);
  EXPECT_DOUBLE_EQ(s.p95, 96);  // ceil(0.95 * 101) = 96th value
  std::vector<double> twenty;
  for (int i = 1; i <= 20; ++i) twenty.push_back(i);
  EXPECT_DOUBLE_EQ(summarize(twenty).p95, 19);
}

TEST(Summarize, SingleSample) {
  std::vector<double> v{7.5};
  auto s = summarize(v);
  EXPECT_DOUBLE_EQ(s.median, 7.5);
  EXPECT_DOUBLE_EQ(s.p95, 7.5);
  EXPECT_DOUBLE_EQ(s.stddev, 0);
}

TEST(Summarize, EmptyRejected) { EXPECT_THROW(summarize({}), InvalidArgument); }

TEST(Summarize, MeanAndMedianWithinRange) {
  auto rng = crypto::Rng::from_seed(1);
  for (int trial = 0; trial < 500; ++trial) {
    const auto n = 1 + rng.bytes(1)[0] % 50;
    std::vector<double> v;
    for (std::size_t i = 0; i < n; ++i) {
      auto b = rng.bytes(2);
      v.push_back((b[0] * 256 + b[1]) / 7.0);
    }
    auto s = summarize(v);
    ASSERT_LE(s.min, s.mean);
    ASSERT_LE(s.mean, s.max);
    ASSERT_LE(s.min, s.median);
    ASSERT_LE(s.median, s.max);
    ASSERT_LE(s.median, s.p95);
  }
}

TEST(Names, ParseAndFormat) {
  EXPECT_EQ(parse_model("orr"), Model::kOrr);
  EXPECT_EQ(parse_model("TN"), Model::kTn);
  EXPECT_EQ(to_string(Model::kKr), "KR");
  EXPECT_THROW(parse_model("xx"), InvalidArgument);
  EXPECT_EQ(parse_metric(to_string(Metric::kDistributionTime)), Metric::kDistributionTime);
  EXPECT_THROW(parse_metric("latency"), InvalidArgument);
}

}  // namespace
}  // namespace qkdn::harness
