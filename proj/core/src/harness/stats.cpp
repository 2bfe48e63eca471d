#include "qkdn/harness/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace qkdn::harness {

std::string_view to_string(Model model) {
  switch (model) {
    case Model::kKr:
      return "KR";
    case Model::kTn:
      return "TN";
    case Model::kOrr:
      return "ORR";
  }
  return "?";
}

std::string_view to_string(Metric metric) {
  return metric == Metric::kEncryptionTime ? "encryption_time" : "distribution_time";
}

Model parse_model(std::string_view text) {
  if (text == "kr" || text == "KR") return Model::kKr;
  if (text == "tn" || text == "TN") return Model::kTn;
  if (text == "orr" || text == "ORR") return Model::kOrr;
  throw InvalidArgument("unknown model '" + std::string(text) + "'");
}

Metric parse_metric(std::string_view text) {
  if (text == "encryption_time") return Metric::kEncryptionTime;
  if (text == "distribution_time") return Metric::kDistributionTime;
  throw InvalidArgument("unknown metric '" + std::string(text) + "'");
}

Summary summarize(std::span<const double> samples) {
  if (samples.empty()) throw InvalidArgument("cannot summarize an empty sample set");
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  const std::size_t n = sorted.size();

  Summary s;
  s.min = sorted.front();
  s.max = sorted.back();
  s.mean = std::accumulate(sorted.begin(), sorted.end(), 0.0) / static_cast<double>(n);
  s.median = n % 2 == 1 ? sorted[n / 2] : (sorted[n / 2 - 1] + sorted[n / 2]) / 2.0;
  const auto rank = static_cast<std::size_t>(std::ceil(0.95 * static_cast<double>(n)));
  s.p95 = sorted[std::max<std::size_t>(rank, 1) - 1];
  if (n > 1) {
    double ss = 0;
    for (double x : sorted) ss += (x - s.mean) * (x - s.mean);
    s.stddev = std::sqrt(ss / static_cast<double>(n - 1));
  }
  // Guard the documented [min, max] bound against accumulated rounding.
  s.mean = std::clamp(s.mean, s.min, s.max);
  return s;
}

}  // namespace qkdn::harness
