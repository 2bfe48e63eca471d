#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "qkdn/harness/scenario.hpp"
#include "qkdn/harness/stats.hpp"

namespace qkdn::harness {

class IoError : public Error {
 public:
  using Error::Error;
};

class CsvError : public Error {
 public:
  using Error::Error;
};

inline constexpr std::string_view kStatsHeader =
    "model,n_nodes,metric,mean_us,median_us,p95_us,stddev_us,trials";
inline constexpr std::string_view kRawHeader =
    "model,n_nodes,trial,valid,encryption_us,distribution_us,messages_sent,secret";

/// Rows sorted by (model, n, metric); doubles in shortest round-trip form.
/// Throws InvalidArgument on an empty row set.
std::string to_csv(std::vector<StatRow> rows);
std::vector<StatRow> parse_csv(std::string_view text);

/// Throws IoError.
void export_csv(const std::vector<StatRow>& rows, const std::filesystem::path& path);
std::vector<StatRow> import_csv(const std::filesystem::path& path);

/// The same rows and order as to_csv, as a JSON array of objects keyed by the
/// CSV column names. Throws InvalidArgument on an empty row set.
std::string to_json(std::vector<StatRow> rows);
void export_json(const std::vector<StatRow>& rows, const std::filesystem::path& path);

std::string raw_to_csv(const std::vector<TrialRecord>& records);
void export_raw_csv(const std::vector<TrialRecord>& records, const std::filesystem::path& path);

}  // namespace qkdn::harness
