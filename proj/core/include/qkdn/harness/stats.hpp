#pragma once

#include <span>
#include <string>
#include <string_view>

#include "qkdn/error.hpp"

namespace qkdn::harness {

enum class Model { kKr, kTn, kOrr };
enum class Metric { kEncryptionTime, kDistributionTime };

std::string_view to_string(Model model);
std::string_view to_string(Metric metric);
/// Accepts "kr"/"KR", "tn"/"TN", "orr"/"ORR". Throws InvalidArgument.
Model parse_model(std::string_view text);
/// Accepts "encryption_time" / "distribution_time". Throws InvalidArgument.
Metric parse_metric(std::string_view text);

/// Aggregate of one metric over the valid trials of one (model, n) point.
/// All times in microseconds.
struct StatRow {
  Model model = Model::kKr;
  int n_nodes = 0;
  Metric metric = Metric::kEncryptionTime;
  double mean_us = 0;
  double median_us = 0;
  double p95_us = 0;
  double stddev_us = 0;
  int trials = 0;

  friend bool operator==(const StatRow&, const StatRow&) = default;
};

struct Summary {
  double mean = 0;
  double median = 0;
  double p95 = 0;     // nearest-rank
  double stddev = 0;  // sample (n - 1) standard deviation; 0 for one sample
  double min = 0;
  double max = 0;
};

/// Throws InvalidArgument on an empty sample set.
Summary summarize(std::span<const double> samples);

}  // namespace qkdn::harness
