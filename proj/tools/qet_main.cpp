#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qet/report.hpp"

namespace {

using namespace qet;

struct CommonOpts {
  int qubits = 3;
  double h = 1.0;
  double k = 1.0;
  std::uint64_t shots = 100000;
  std::uint64_t seed = 0;
  std::string order;
  std::string prep = "linear";
  std::string mode = "sampled";
  std::string out_json;
  std::string out_csv;
  std::string compare_source;
  std::string reference_path;
};

void add_common_flags(CLI::App* cmd, CommonOpts& opts, bool with_mode = true) {
  // long-only help so the short -h slot stays free for the weight option
  cmd->set_help_flag("--help", "print help");
  cmd->add_option("--qubits", opts.qubits, "register width N (>= 2)")
      ->check(CLI::Range(2, QuantumState::kMaxQubits));
  cmd->add_option("--h", opts.h, "W-component weight")->check(CLI::NonNegativeNumber);
  cmd->add_option("--k", opts.k, "vacuum weight")->check(CLI::NonNegativeNumber);
  cmd->add_option("--shots", opts.shots, "shots per sampled run")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--seed", opts.seed, "master seed");
  cmd->add_option("--order", opts.order,
                  "receiver measurement order, comma list of qubits 1..N-1");
  cmd->add_option("--prep", opts.prep, "W preparation strategy")
      ->check(CLI::IsMember({"linear", "log"}));
  if (with_mode) {
    cmd->add_option("--mode", opts.mode, "sampled, exact or both")
        ->check(CLI::IsMember({"sampled", "exact", "both"}));
  }
  cmd->add_option("--out-json", opts.out_json, "write JSON report here");
  cmd->add_option("--out-csv", opts.out_csv, "write CSV rows here");
  cmd->add_option("--compare", opts.compare_source,
                  "also print deviations against a reference column")
      ->check(CLI::IsMember({"simulator", "device"}));
  cmd->add_option("--reference", opts.reference_path,
                  "reference data file (default: built-in dataset)");
}

std::vector<int> parse_order(const std::string& text) {
  std::vector<int> order;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (!tok.empty()) order.push_back(std::stoi(tok));
  }
  return order;
}

ProtocolConfig make_config(const CommonOpts& opts) {
  ProtocolConfig config;
  config.params = {opts.qubits, opts.h, opts.k};
  config.shots = opts.shots;
  config.master_seed = opts.seed;
  config.strategy = opts.prep == "log" ? PrepStrategy::LogDepthTree
                                       : PrepStrategy::LinearCascade;
  if (!opts.order.empty()) config.receiver_order = parse_order(opts.order);
  config.validate();
  return config;
}

const ReferenceDataset& dataset_for(const CommonOpts& opts,
                                    ReferenceDataset& storage) {
  if (opts.reference_path.empty()) return builtin_reference();
  storage = load_reference_file(opts.reference_path);
  return storage;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
}

ExperimentReport execute(const ProtocolConfig& config, const std::string& mode,
                         bool with_symmetry) {
  ExperimentReport report;
  report.config = config;
  if (mode == "sampled" || mode == "both") {
    report.sampled = run_protocol(config);
    report.has_sampled = true;
  }
  if (mode == "exact" || mode == "both") {
    report.exact = run_protocol_exact(config);
    report.has_exact = true;
  }
  if (with_symmetry && config.params.num_qubits >= 3) {
    report.symmetry.push_back(
        translational_test(config, SymmetryMode::Exact));
    std::vector<int> forward = config.effective_order();
    std::vector<int> reversed(forward.rbegin(), forward.rend());
    report.symmetry.push_back(
        exchange_test(config, forward, reversed, SymmetryMode::Exact));
  }
  return report;
}

int cmd_run(const CommonOpts& opts) {
  const auto start = std::chrono::steady_clock::now();
  const ProtocolConfig config = make_config(opts);
  const ExperimentReport report = execute(config, opts.mode, true);
  std::cout << ledger_table_text(report);
  if (!opts.compare_source.empty()) {
    const EnergyLedger& ledger =
        report.has_sampled ? report.sampled : report.exact;
    const ReferenceSource source = opts.compare_source == "device"
                                       ? ReferenceSource::Device
                                       : ReferenceSource::Simulator;
    ReferenceDataset storage;
    const auto rows =
        compare_reference(ledger, config, dataset_for(opts, storage), source);
    std::cout << deviation_table_text(rows, source);
  }
  if (!opts.out_json.empty()) write_file(opts.out_json, report_json_text(report));
  if (!opts.out_csv.empty()) write_file(opts.out_csv, reports_csv_text({report}));
  const auto elapsed = std::chrono::duration<double>(
                           std::chrono::steady_clock::now() - start)
                           .count();
  std::cout << "wall time: " << elapsed << " s\n";
  return 0;
}

int cmd_reproduce_all(const CommonOpts& opts) {
  const auto start = std::chrono::steady_clock::now();
  std::vector<ExperimentReport> reports;
  ReferenceDataset storage;
  const ReferenceDataset& dataset = dataset_for(opts, storage);
  for (int n : {3, 4, 5}) {
    for (auto [h, k] : {std::pair{2.0, 1.0}, std::pair{1.0, 1.0}}) {
      CommonOpts one = opts;
      one.qubits = n;
      one.h = h;
      one.k = k;
      const ProtocolConfig config = make_config(one);
      ExperimentReport report = execute(config, "both", true);
      std::cout << ledger_table_text(report);
      const auto rows = compare_reference(report.sampled, config, dataset,
                                          ReferenceSource::Simulator);
      std::cout << deviation_table_text(rows, ReferenceSource::Simulator);
      reports.push_back(std::move(report));
    }
  }
  if (!opts.out_json.empty()) {
    write_file(opts.out_json, reports_json_text(reports));
  }
  if (!opts.out_csv.empty()) {
    write_file(opts.out_csv, reports_csv_text(reports));
  }
  const auto elapsed = std::chrono::duration<double>(
                           std::chrono::steady_clock::now() - start)
                           .count();
  std::cout << "wall time: " << elapsed << " s\n";
  return 0;
}

int cmd_symmetry(const CommonOpts& opts) {
  const ProtocolConfig config = make_config(opts);
  const SymmetryMode mode =
      opts.mode == "sampled" ? SymmetryMode::Sampled : SymmetryMode::Exact;
  std::vector<SymmetryReport> results;
  results.push_back(translational_test(config, mode));
  std::vector<int> forward = config.effective_order();
  std::vector<int> reversed(forward.rbegin(), forward.rend());
  results.push_back(exchange_test(config, forward, reversed, mode));
  bool all_pass = true;
  for (const auto& r : results) {
    std::cout << to_string(r.kind) << " (" << to_string(r.mode)
              << "): max dev " << r.max_deviation << " vs threshold "
              << r.threshold << " -> " << (r.pass ? "pass" : "FAIL") << "\n";
    all_pass = all_pass && r.pass;
  }
  if (!opts.out_json.empty()) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& r : results) arr.push_back(to_json(r));
    write_file(opts.out_json, arr.dump(2) + "\n");
  }
  return all_pass ? 0 : 1;
}

int cmd_compare(const CommonOpts& opts) {
  const ProtocolConfig config = make_config(opts);
  const ExperimentReport report = execute(config, opts.mode, false);
  const EnergyLedger& ledger =
      report.has_sampled ? report.sampled : report.exact;
  ReferenceDataset storage;
  const ReferenceDataset& dataset = dataset_for(opts, storage);
  const ReferenceSource source = opts.compare_source == "device"
                                     ? ReferenceSource::Device
                                     : ReferenceSource::Simulator;
  const auto rows = compare_reference(ledger, config, dataset, source);
  std::cout << deviation_table_text(rows, source);
  if (!opts.out_json.empty()) {
    write_file(opts.out_json, to_json(rows).dump(2) + "\n");
  }
  return 0;
}

int cmd_emit_reference(const std::string& path) {
  const ReferenceDataset& d = builtin_reference();
  const std::string body = canonical_reference_text(d);
  char checksum[32];
  std::snprintf(checksum, sizeof(checksum), "%016llx",
                static_cast<unsigned long long>(fnv1a64(body)));
  write_file(path,
             "# QET reference energy readings (simulator and device columns)\n"
             "# qubits,h,k,quantity,source,value,stderr\n"
             "# checksum " +
                 std::string(checksum) + "\n" + body);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"W-state quantum energy teleportation experiment runner"};
  app.require_subcommand(1);

  CommonOpts run_opts, all_opts, sym_opts, cmp_opts;
  std::string emit_path = "reference_tables.csv";

  auto* run = app.add_subcommand("run", "run one experiment configuration");
  add_common_flags(run, run_opts);

  auto* all = app.add_subcommand(
      "reproduce-all", "run the full 3/4/5-qubit matrix for both (h,k)");
  add_common_flags(all, all_opts, /*with_mode=*/false);

  auto* sym = app.add_subcommand("symmetry",
                                 "translational and exchange symmetry tests");
  add_common_flags(sym, sym_opts);

  auto* cmp = app.add_subcommand("compare",
                                 "deviation table against reference data");
  add_common_flags(cmp, cmp_opts);
  cmp->get_option("--compare")->default_str("simulator");

  auto* emit = app.add_subcommand("emit-reference",
                                  "write the checksummed reference data file");
  emit->add_option("--out", emit_path, "output path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (run->parsed()) return cmd_run(run_opts);
    if (all->parsed()) return cmd_reproduce_all(all_opts);
    if (sym->parsed()) return cmd_symmetry(sym_opts);
    if (cmp->parsed()) return cmd_compare(cmp_opts);
    if (emit->parsed()) return cmd_emit_reference(emit_path);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
