// qkdn-orr: runs KR/TN/ORR distribution experiments, serves a KME, and
// compares result files.
#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "qkdn/harness/compare.hpp"
#include "qkdn/harness/csv.hpp"
#include "qkdn/harness/scenario.hpp"
#include "qkdn/kms/http.hpp"
#include "qkdn/kms/key_store.hpp"

namespace {

using namespace qkdn;

struct RunArgs {
  std::string model = "all";
  std::vector<int> nodes{3, 5, 7, 9, 11};
  int trials = 1000;
  int warmup = 10;
  std::optional<std::uint64_t> seed;
  std::int64_t latency_us = 0;
  bool per_hop = false;
  bool virtual_time = false;
  bool orr_qkd_every_hop = true;
  std::string out = "results.csv";
  std::string raw;
  std::string json;
  std::string kms_http;
  std::int64_t timeout_ms = 10000;
};

int do_run(const RunArgs& a) {
  std::vector<harness::Model> models;
  if (a.model == "all") {
    models = {harness::Model::kKr, harness::Model::kTn, harness::Model::kOrr};
  } else {
    models = {harness::parse_model(a.model)};
  }

  harness::Scenario base;
  base.circuit_sizes = a.nodes;
  base.trials = a.trials;
  base.warmup = a.warmup;
  base.seed = a.seed;
  base.orr_qkd_every_hop = a.orr_qkd_every_hop;
  base.timeout = std::chrono::milliseconds(a.timeout_ms);
  const std::chrono::microseconds latency(a.latency_us);
  if (a.per_hop) {
    base.channel.latency = netsim::PerHopLatency{latency};
  } else if (a.latency_us != 0) {
    base.channel.latency = netsim::FixedLatency{latency};
  }
  if (a.virtual_time) base.channel.time_mode = netsim::TimeMode::kVirtual;

  std::unique_ptr<kms::HttpKmsClient> remote;
  if (!a.kms_http.empty()) remote = kms::HttpKmsClient::from_address(a.kms_http);

  std::vector<harness::StatRow> rows;
  std::vector<harness::TrialRecord> raw;
  std::size_t invalid = 0, attempted = 0;
  std::vector<std::string> errors;
  for (auto model : models) {
    auto s = base;
    s.model = model;
    std::cerr << "running " << harness::to_string(model) << " ...\n";
    auto result = harness::run_scenario(s, remote.get());
    rows.insert(rows.end(), result.rows.begin(), result.rows.end());
    invalid += result.invalid_trials;
    attempted += s.circuit_sizes.size() * static_cast<std::size_t>(s.trials + s.warmup);
    for (auto& r : result.raw) {
      if (!r.valid && errors.size() < 5) errors.push_back(r.error);
    }
    raw.insert(raw.end(), std::make_move_iterator(result.raw.begin()),
               std::make_move_iterator(result.raw.end()));
  }

  if (!rows.empty()) harness::export_csv(rows, a.out);
  if (!a.raw.empty()) harness::export_raw_csv(raw, a.raw);
  if (!a.json.empty() && !rows.empty()) harness::export_json(rows, a.json);
  std::cerr << "wrote " << rows.size() << " rows to " << a.out << '\n';
  if (models.size() == 3 && !rows.empty()) {
    try {
      std::cout << harness::format_report(harness::compare_models(rows));
    } catch (const harness::IncompleteData&) {
    }
  }

  if (invalid > 0) {
    std::cerr << "error: " << invalid << " of " << attempted << " trials were invalid\n";
    for (const auto& e : errors) std::cerr << "  " << e << '\n';
    return 1;
  }
  return 0;
}

int do_serve(const std::string& addr, std::optional<std::uint64_t> seed) {
  auto colon = addr.rfind(':');
  if (colon == std::string::npos) throw InvalidArgument("expected host:port, got '" + addr + "'");
  const auto host = addr.substr(0, colon);
  const int port = std::stoi(addr.substr(colon + 1));
  kms::KeyManagementService service(seed ? crypto::Rng::from_seed(*seed)
                                         : crypto::Rng::from_entropy());
  kms::KmsHttpServer server(service);
  std::cerr << "KME listening on " << host << ':' << port << '\n';
  server.listen(host, port);
  return 0;
}

int do_compare(const std::string& in) {
  auto rows = harness::import_csv(in);
  std::cout << harness::format_report(harness::compare_models(rows));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Key distribution over simulated QKD networks: KR, TN and ORR"};
  app.require_subcommand(1);

  RunArgs run;
  auto* run_cmd = app.add_subcommand("run", "Run distribution experiments and export statistics");
  run_cmd->fallthrough();  // lets --config follow the subcommand
  app.set_config("--config", "", "TOML/INI file; keys under [run] mirror the run flags");
  run_cmd->add_option("--model", run.model, "kr, tn, orr or all")
      ->check(CLI::IsMember({"kr", "tn", "orr", "all", "KR", "TN", "ORR"}))
      ->capture_default_str();
  run_cmd->add_option("--nodes", run.nodes, "Circuit sizes")
      ->delimiter(',')
      ->check(CLI::Range(2, 64))
      ->capture_default_str();
  run_cmd->add_option("--trials", run.trials, "Measured trials per point")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  run_cmd->add_option("--warmup", run.warmup, "Discarded leading trials per point")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  run_cmd->add_option("--seed", run.seed, "Fixed seed (OS entropy when omitted)");
  run_cmd->add_option("--latency-us", run.latency_us, "Injected classical latency")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  run_cmd->add_flag("--per-hop", run.per_hop, "Scale latency by hop distance");
  run_cmd->add_flag("--virtual-time", run.virtual_time, "Accrue latency on a virtual clock");
  run_cmd->add_option("--orr-qkd-every-hop", run.orr_qkd_every_hop,
                      "Protect every ORR hop with a QKD layer (false: first hop only)")
      ->capture_default_str();
  run_cmd->add_option("--out", run.out, "Statistics CSV")->capture_default_str();
  run_cmd->add_option("--raw", run.raw, "Per-trial CSV");
  run_cmd->add_option("--json", run.json, "Statistics as JSON");
  auto* http = run_cmd->add_option("--kms-http", run.kms_http, "Remote KME address host:port");
  bool inproc = false;
  run_cmd->add_flag("--kms-inproc", inproc, "Use an in-process KME (default)")->excludes(http);
  run_cmd->add_option("--timeout-ms", run.timeout_ms, "Per-receive timeout")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  std::string addr = "127.0.0.1:8014";
  std::optional<std::uint64_t> kms_seed;
  auto* kms_cmd = app.add_subcommand("kms", "Key management entity");
  kms_cmd->require_subcommand(1);
  auto* serve_cmd = kms_cmd->add_subcommand("serve", "Serve the key delivery API over HTTP");
  serve_cmd->add_option("--addr", addr, "host:port")->capture_default_str();
  serve_cmd->add_option("--seed", kms_seed, "Fixed seed for key material");

  std::string in;
  auto* compare_cmd = app.add_subcommand("compare", "Order the models in a statistics CSV");
  compare_cmd->add_option("--in", in, "Statistics CSV")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run_cmd) return do_run(run);
    if (*serve_cmd) return do_serve(addr, kms_seed);
    if (*compare_cmd) return do_compare(in);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
