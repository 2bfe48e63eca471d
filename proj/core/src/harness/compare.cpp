#include "qkdn/harness/compare.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace qkdn::harness {

namespace {

constexpr Model kModels[] = {Model::kKr, Model::kTn, Model::kOrr};

double slope(const std::map<int, double>& points, const std::vector<int>& ns) {
  if (ns.size() < 2) return 0;
  double mx = 0, my = 0;
  for (int n : ns) {
    mx += n;
    my += points.at(n);
  }
  mx /= static_cast<double>(ns.size());
  my /= static_cast<double>(ns.size());
  double num = 0, den = 0;
  for (int n : ns) {
    num += (n - mx) * (points.at(n) - my);
    den += (n - mx) * (n - mx);
  }
  return num / den;
}

std::vector<Model> slowest_first(const std::map<Model, std::map<Metric, std::map<int, double>>>& m,
                                 Metric metric, int n) {
  std::vector<Model> order(std::begin(kModels), std::end(kModels));
  std::stable_sort(order.begin(), order.end(), [&](Model a, Model b) {
    return m.at(a).at(metric).at(n) > m.at(b).at(metric).at(n);
  });
  return order;
}

}  // namespace

ComparisonReport compare_models(const std::vector<StatRow>& rows) {
  ComparisonReport report;
  for (const auto& r : rows) report.medians[r.model][r.metric][r.n_nodes] = r.median_us;

  std::set<int> shared;
  bool first = true;
  for (Model model : kModels) {
    auto it = report.medians.find(model);
    if (it == report.medians.end()) {
      throw IncompleteData("no rows for model " + std::string(to_string(model)));
    }
    std::set<int> have;
    for (const auto& [n, v] : it->second[Metric::kEncryptionTime]) {
      if (it->second[Metric::kDistributionTime].contains(n)) have.insert(n);
    }
    if (first) {
      shared = have;
      first = false;
    } else {
      std::set<int> both;
      std::set_intersection(shared.begin(), shared.end(), have.begin(), have.end(),
                            std::inserter(both, both.begin()));
      shared = std::move(both);
    }
  }
  if (shared.empty()) throw IncompleteData("the models share no circuit size");
  report.n_values.assign(shared.begin(), shared.end());

  for (int n : report.n_values) {
    report.points.push_back({n, slowest_first(report.medians, Metric::kEncryptionTime, n),
                             slowest_first(report.medians, Metric::kDistributionTime, n)});
  }
  const int lo = report.n_values.front();
  const int hi = report.n_values.back();
  for (Model model : kModels) {
    const auto& enc = report.medians[model][Metric::kEncryptionTime];
    const auto& dist = report.medians[model][Metric::kDistributionTime];
    ModelTrend t;
    t.encryption_slope = slope(enc, report.n_values);
    t.distribution_slope = slope(dist, report.n_values);
    t.encryption_ratio = enc.at(lo) > 0 ? enc.at(hi) / enc.at(lo) : 0;
    t.distribution_growth = dist.at(hi) - dist.at(lo);
    report.trends[model] = t;
  }
  return report;
}

std::string format_report(const ComparisonReport& report) {
  std::ostringstream out;
  out.setf(std::ios::fixed);
  out.precision(3);
  out << "median times in microseconds\n";
  out << "n    model  encryption  distribution\n";
  for (int n : report.n_values) {
    for (Model model : kModels) {
      const auto& m = report.medians.at(model);
      out << n << (n < 10 ? "    " : "   ") << to_string(model)
          << std::string(7 - to_string(model).size(), ' ') << m.at(Metric::kEncryptionTime).at(n)
          << "  " << m.at(Metric::kDistributionTime).at(n) << '\n';
    }
  }
  auto names = [](const std::vector<Model>& order) {
    std::string s;
    for (Model m : order) s += (s.empty() ? "" : " > ") + std::string(to_string(m));
    return s;
  };
  out << "\nordering, slowest first\n";
  for (const auto& p : report.points) {
    out << "n=" << p.n_nodes << "  encryption: " << names(p.encryption)
        << "  distribution: " << names(p.distribution) << '\n';
  }
  out << "\ntrends from n=" << report.n_values.front() << " to n=" << report.n_values.back() << '\n';
  for (const auto& [model, t] : report.trends) {
    out << to_string(model) << "  encryption slope " << t.encryption_slope << " us/node, ratio "
        << t.encryption_ratio << "; distribution slope " << t.distribution_slope
        << " us/node, growth " << t.distribution_growth << " us\n";
  }
  return out.str();
}

}  // namespace qkdn::harness
