#include "qkdn/harness/csv.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <tuple>

namespace qkdn::harness {

namespace {

std::string format_double(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    auto comma = line.find(',', start);
    out.push_back(line.substr(start, comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

void sort_rows(std::vector<StatRow>& rows) {
  std::sort(rows.begin(), rows.end(), [](const StatRow& a, const StatRow& b) {
    return std::tie(a.model, a.n_nodes, a.metric) < std::tie(b.model, b.n_nodes, b.metric);
  });
}

template <class T>
T parse_number(std::string_view field, std::size_t line_no) {
  T value{};
  auto [end, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc{} || end != field.data() + field.size()) {
    throw CsvError("line " + std::to_string(line_no) + ": bad number '" + std::string(field) + "'");
  }
  return value;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << text;
  out.flush();
  if (!out) throw IoError("failed writing " + path.string());
}

}  // namespace

std::string to_csv(std::vector<StatRow> rows) {
  if (rows.empty()) throw InvalidArgument("no rows to export");
  sort_rows(rows);
  std::string out(kStatsHeader);
  out += '\n';
  for (const auto& r : rows) {
    out += to_string(r.model);
    out += ',' + std::to_string(r.n_nodes);
    out += ',';
    out += to_string(r.metric);
    for (double v : {r.mean_us, r.median_us, r.p95_us, r.stddev_us}) out += ',' + format_double(v);
    out += ',' + std::to_string(r.trials) + '\n';
  }
  return out;
}

std::vector<StatRow> parse_csv(std::string_view text) {
  std::vector<StatRow> rows;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (!text.empty()) {
    auto nl = text.find('\n');
    auto line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    if (!header_seen) {
      if (line != kStatsHeader) throw CsvError("unexpected header: " + std::string(line));
      header_seen = true;
      continue;
    }
    auto f = split(line);
    if (f.size() != 8) throw CsvError("line " + std::to_string(line_no) + ": expected 8 fields");
    StatRow r;
    try {
      r.model = parse_model(f[0]);
      r.metric = parse_metric(f[2]);
    } catch (const InvalidArgument& e) {
      throw CsvError("line " + std::to_string(line_no) + ": " + e.what());
    }
    r.n_nodes = parse_number<int>(f[1], line_no);
    r.mean_us = parse_number<double>(f[3], line_no);
    r.median_us = parse_number<double>(f[4], line_no);
    r.p95_us = parse_number<double>(f[5], line_no);
    r.stddev_us = parse_number<double>(f[6], line_no);
    r.trials = parse_number<int>(f[7], line_no);
    rows.push_back(r);
  }
  if (!header_seen) throw CsvError("empty input");
  return rows;
}

void export_csv(const std::vector<StatRow>& rows, const std::filesystem::path& path) {
  write_file(path, to_csv(rows));
}

std::vector<StatRow> import_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_csv(buf.str());
}

std::string to_json(std::vector<StatRow> rows) {
  if (rows.empty()) throw InvalidArgument("no rows to export");
  sort_rows(rows);
  auto out = nlohmann::json::array();
  for (const auto& r : rows) {
    out.push_back({{"model", to_string(r.model)},
                   {"n_nodes", r.n_nodes},
                   {"metric", to_string(r.metric)},
                   {"mean_us", r.mean_us},
                   {"median_us", r.median_us},
                   {"p95_us", r.p95_us},
                   {"stddev_us", r.stddev_us},
                   {"trials", r.trials}});
  }
  return out.dump(2) + "\n";
}

void export_json(const std::vector<StatRow>& rows, const std::filesystem::path& path) {
  write_file(path, to_json(rows));
}

std::string raw_to_csv(const std::vector<TrialRecord>& records) {
  std::string out(kRawHeader);
  out += '\n';
  for (const auto& r : records) {
    out += to_string(r.model);
    out += ',' + std::to_string(r.n_nodes) + ',' + std::to_string(r.trial) + ',' +
           (r.valid ? "1" : "0") + ',' + format_double(r.encryption_us) + ',' +
           format_double(r.distribution_us) + ',' + std::to_string(r.messages_sent) + ',' +
           r.secret_hex + '\n';
  }
  return out;
}

void export_raw_csv(const std::vector<TrialRecord>& records, const std::filesystem::path& path) {
  write_file(path, raw_to_csv(records));
}

}  // namespace qkdn::harness
