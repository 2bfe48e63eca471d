#pragma once

#include <map>
#include <string>
#include <vector>

#include "qkdn/harness/stats.hpp"

namespace qkdn::harness {

class IncompleteData : public Error {
 public:
  using Error::Error;
};

struct PointOrdering {
  int n_nodes = 0;
  /// Models from slowest to fastest median.
  std::vector<Model> encryption;
  std::vector<Model> distribution;
};

struct ModelTrend {
  /// Least-squares slope of the median against n, in microseconds per node.
  double encryption_slope = 0;
  double distribution_slope = 0;
  /// Median at the largest n divided by the median at the smallest n.
  double encryption_ratio = 0;
  /// Median at the largest n minus the median at the smallest n.
  double distribution_growth = 0;
};

struct ComparisonReport {
  std::vector<int> n_values;
  std::vector<PointOrdering> points;
  std::map<Model, ModelTrend> trends;
  /// Medians by model, metric and n.
  std::map<Model, std::map<Metric, std::map<int, double>>> medians;
};

/// Orders the three models at every n they share. Throws IncompleteData when
/// any model is missing or the models share no n value.
ComparisonReport compare_models(const std::vector<StatRow>& rows);

std::string format_report(const ComparisonReport& report);

}  // namespace qkdn::harness
