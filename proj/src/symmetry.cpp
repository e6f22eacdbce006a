#include "qet/symmetry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qet {

std::string to_string(SymmetryKind k) {
  return k == SymmetryKind::Translational ? "translational" : "exchange";
}

std::string to_string(SymmetryMode m) {
  return m == SymmetryMode::Exact ? "exact" : "sampled";
}

SymmetryReport translational_test(const ProtocolConfig& config,
                                  SymmetryMode mode) {
  if (config.params.num_qubits < 3) {
    throw std::invalid_argument("translational test needs N >= 3");
  }
  const EnergyLedger ledger = mode == SymmetryMode::Exact
                                  ? run_protocol_exact(config)
                                  : run_protocol(config);
  const int n = config.params.num_qubits;

  SymmetryReport report;
  report.kind = SymmetryKind::Translational;
  report.mode = mode;
  double worst_stderr = 0.0;
  for (int i = 1; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const Estimate& a = ledger.local[static_cast<std::size_t>(i)];
      const Estimate& b = ledger.local[static_cast<std::size_t>(j)];
      report.max_deviation =
          std::max(report.max_deviation, std::abs(a.mean - b.mean));
      worst_stderr = std::max(
          worst_stderr, std::sqrt(a.stderr_ * a.stderr_ + b.stderr_ * b.stderr_));
    }
  }
  report.threshold =
      mode == SymmetryMode::Exact ? kTolProbability : 5.0 * worst_stderr;
  report.pass = report.max_deviation <= report.threshold;
  return report;
}

SymmetryReport exchange_test(const ProtocolConfig& config,
                             const std::vector<int>& order_a,
                             const std::vector<int>& order_b,
                             SymmetryMode mode) {
  std::vector<int> sa = order_a, sb = order_b;
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  if (sa != sb) throw std::invalid_argument("orders cover different receivers");

  ProtocolConfig ca = config;
  ca.receiver_order = order_a;
  ProtocolConfig cb = config;
  cb.receiver_order = order_b;
  const bool exact = mode == SymmetryMode::Exact;
  const EnergyLedger la = exact ? run_protocol_exact(ca) : run_protocol(ca);
  const EnergyLedger lb = exact ? run_protocol_exact(cb) : run_protocol(cb);

  SymmetryReport report;
  report.kind = SymmetryKind::Exchange;
  report.mode = mode;
  double worst_stderr = 0.0;
  auto compare = [&](const Estimate& a, const Estimate& b) {
    report.max_deviation =
        std::max(report.max_deviation, std::abs(a.mean - b.mean));
    worst_stderr = std::max(
        worst_stderr, std::sqrt(a.stderr_ * a.stderr_ + b.stderr_ * b.stderr_));
  };
  compare(la.h_total_post, lb.h_total_post);
  for (std::size_t i = 0; i < la.h_sub.size(); ++i) {
    compare(la.h_sub[i], lb.h_sub[i]);
  }
  // per-receiver quantities: indexed by qubit, independent of order
  for (std::size_t i = 0; i < la.local.size(); ++i) {
    compare(la.local[i], lb.local[i]);
  }
  for (std::size_t i = 0; i < la.harvested.size(); ++i) {
    compare(la.harvested[i], lb.harvested[i]);
  }
  report.threshold =
      exact ? kTolProbability : 5.0 * std::max(worst_stderr, 1e-300);
  report.pass = report.max_deviation <= report.threshold;
  return report;
}

}  // namespace qet
