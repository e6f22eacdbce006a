#include "qet/report.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>
#include <tuple>

namespace qet {

namespace {

std::string fmt(double v, const char* spec = "%.10g") {
  char buf[40];
  std::snprintf(buf, sizeof(buf), spec, v);
  return buf;
}

}  // namespace

nlohmann::ordered_json to_json(const Estimate& e) {
  return {{"mean", e.mean}, {"stderr", e.stderr_}, {"shots", e.shots}};
}

nlohmann::ordered_json to_json(const EnergyLedger& ledger) {
  nlohmann::ordered_json j;
  j["e0"] = ledger.e0;
  j["h_total_post"] = to_json(ledger.h_total_post);
  j["h_sub"] = nlohmann::ordered_json::array();
  for (const auto& e : ledger.h_sub) j["h_sub"].push_back(to_json(e));
  j["local"] = nlohmann::ordered_json::array();
  for (const auto& e : ledger.local) j["local"].push_back(to_json(e));
  j["harvested"] = nlohmann::ordered_json::array();
  for (const auto& e : ledger.harvested) j["harvested"].push_back(to_json(e));
  j["mu_plus_probability"] = to_json(ledger.mu_plus_probability);
  return j;
}

nlohmann::ordered_json to_json(const ProtocolConfig& config) {
  nlohmann::ordered_json j;
  j["qubits"] = config.params.num_qubits;
  j["h"] = config.params.h;
  j["k"] = config.params.k;
  j["shots"] = config.shots;
  j["seed"] = config.master_seed;
  j["prep"] = to_string(config.strategy);
  j["receiver_order"] = config.effective_order();
  j["e0_convention"] = config.convention == E0Convention::TableConsistent
                           ? "table-consistent"
                           : "as-printed";
  j["feedforward"] = config.feedforward_enabled;
  return j;
}

nlohmann::ordered_json to_json(const SymmetryReport& report) {
  nlohmann::ordered_json j;
  j["kind"] = to_string(report.kind);
  j["mode"] = to_string(report.mode);
  j["max_deviation"] = report.max_deviation;
  j["threshold"] = report.threshold;
  j["pass"] = report.pass;
  return j;
}

nlohmann::ordered_json to_json(const ExperimentReport& report) {
  nlohmann::ordered_json j;
  j["schema_version"] = kReportSchemaVersion;
  j["artifact_version"] = kArtifactVersion;
  j["config"] = to_json(report.config);
  if (report.has_sampled) j["sampled"] = to_json(report.sampled);
  if (report.has_exact) j["exact"] = to_json(report.exact);
  j["symmetry"] = nlohmann::ordered_json::array();
  for (const auto& s : report.symmetry) j["symmetry"].push_back(to_json(s));
  return j;
}

nlohmann::ordered_json to_json(const std::vector<DeviationRow>& rows) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& r : rows) {
    arr.push_back({{"quantity", r.quantity},
                   {"artifact", r.artifact},
                   {"artifact_stderr", r.artifact_stderr},
                   {"reference", r.reference},
                   {"reference_stderr", r.reference_stderr},
                   {"deviation", r.deviation},
                   {"stderr_ratio", r.stderr_ratio},
                   {"reconstruction_gap", r.reconstruction_gap}});
  }
  return arr;
}

std::string report_json_text(const ExperimentReport& report) {
  return to_json(report).dump(2) + "\n";
}

std::string reports_json_text(const std::vector<ExperimentReport>& reports) {
  nlohmann::ordered_json j;
  j["schema_version"] = kReportSchemaVersion;
  j["artifact_version"] = kArtifactVersion;
  j["reports"] = nlohmann::ordered_json::array();
  for (const auto& r : reports) j["reports"].push_back(to_json(r));
  return j.dump(2) + "\n";
}

namespace {

struct CsvRow {
  int n;
  double h, k;
  std::string mode;
  std::string quantity;
  double value;
  double stderr_;
  std::uint64_t shots;
};

void ledger_rows(const ExperimentReport& report, const EnergyLedger& ledger,
                 const std::string& mode, std::vector<CsvRow>& rows) {
  const int n = report.config.params.num_qubits;
  const double h = report.config.params.h;
  const double k = report.config.params.k;
  auto push = [&](const std::string& q, double v, double s,
                  std::uint64_t shots) {
    rows.push_back({n, h, k, mode, q, v, s, shots});
  };
  push("E_o", ledger.e0, 0.0, 0);
  push("H_tot", ledger.h_total_post.mean, ledger.h_total_post.stderr_,
       ledger.h_total_post.shots);
  for (int m = 1; m < n; ++m) {
    const auto& e = ledger.h_sub[static_cast<std::size_t>(m - 1)];
    push("H_sub_" + std::to_string(m), e.mean, e.stderr_, e.shots);
  }
  for (int j = 1; j < n; ++j) {
    const auto& e = ledger.harvested[static_cast<std::size_t>(j - 1)];
    push("dE_" + std::to_string(j), e.mean, e.stderr_, e.shots);
  }
  for (int q = 0; q < n; ++q) {
    const auto& e = ledger.local[static_cast<std::size_t>(q)];
    push("H_local_" + std::to_string(q), e.mean, e.stderr_, e.shots);
  }
}

}  // namespace

std::string reports_csv_text(const std::vector<ExperimentReport>& reports) {
  std::vector<CsvRow> rows;
  for (const auto& r : reports) {
    if (r.has_sampled) ledger_rows(r, r.sampled, "sampled", rows);
    if (r.has_exact) ledger_rows(r, r.exact, "exact", rows);
  }
  std::stable_sort(rows.begin(), rows.end(), [](const CsvRow& a,
                                                const CsvRow& b) {
    return std::tuple(a.n, -a.h, a.quantity, a.mode) <
           std::tuple(b.n, -b.h, b.quantity, b.mode);
  });
  std::string out = "qubits,h,k,mode,quantity,value,stderr,shots\n";
  for (const auto& r : rows) {
    out += std::to_string(r.n) + "," + fmt(r.h) + "," + fmt(r.k) + "," +
           r.mode + "," + r.quantity + "," + fmt(r.value, "%.12g") + "," +
           fmt(r.stderr_, "%.6g") + "," + std::to_string(r.shots) + "\n";
  }
  return out;
}

std::string ledger_table_text(const ExperimentReport& report) {
  std::ostringstream os;
  const int n = report.config.params.num_qubits;
  os << "N=" << n << "  h=" << report.config.params.h
     << "  k=" << report.config.params.k
     << "  seed=" << report.config.master_seed << "\n";
  char buf[160];
  auto line = [&](const std::string& q, const Estimate* sampled,
                  const Estimate* exact) {
    std::snprintf(buf, sizeof(buf), "  %-10s", q.c_str());
    os << buf;
    if (sampled) {
      std::snprintf(buf, sizeof(buf), "  %10.4f +/- %.4f", sampled->mean,
                    sampled->stderr_);
      os << buf;
    }
    if (exact) {
      std::snprintf(buf, sizeof(buf), "  exact %10.6f", exact->mean);
      os << buf;
    }
    os << "\n";
  };
  os << "  quantity    " << (report.has_sampled ? "sampled              " : "")
     << (report.has_exact ? "exact" : "") << "\n";
  const Estimate e0_est{report.has_sampled ? report.sampled.e0
                                           : report.exact.e0,
                        0.0, 0};
  line("E_o", report.has_sampled ? &e0_est : nullptr,
       report.has_exact ? &e0_est : nullptr);
  line("H_tot", report.has_sampled ? &report.sampled.h_total_post : nullptr,
       report.has_exact ? &report.exact.h_total_post : nullptr);
  for (int m = 1; m < n; ++m) {
    line("H_sub_" + std::to_string(m),
         report.has_sampled ? &report.sampled.h_sub[m - 1] : nullptr,
         report.has_exact ? &report.exact.h_sub[m - 1] : nullptr);
  }
  for (int j = 1; j < n; ++j) {
    line("dE_" + std::to_string(j),
         report.has_sampled ? &report.sampled.harvested[j - 1] : nullptr,
         report.has_exact ? &report.exact.harvested[j - 1] : nullptr);
  }
  for (int q = 0; q < n; ++q) {
    line("H_local_" + std::to_string(q),
         report.has_sampled ? &report.sampled.local[q] : nullptr,
         report.has_exact ? &report.exact.local[q] : nullptr);
  }
  line("P(mu=+1)",
       report.has_sampled ? &report.sampled.mu_plus_probability : nullptr,
       report.has_exact ? &report.exact.mu_plus_probability : nullptr);
  for (const auto& s : report.symmetry) {
    os << "  symmetry " << to_string(s.kind) << " (" << to_string(s.mode)
       << "): max dev " << fmt(s.max_deviation, "%.3g") << " vs threshold "
       << fmt(s.threshold, "%.3g") << " -> "
       << (s.pass ? "pass" : "FAIL") << "\n";
  }
  return os.str();
}

std::string deviation_table_text(const std::vector<DeviationRow>& rows,
                                 ReferenceSource source) {
  std::ostringstream os;
  os << "comparison against " << to_string(source) << " column\n";
  char buf[200];
  std::snprintf(buf, sizeof(buf), "  %-10s %12s %12s %10s %8s  %s\n",
                "quantity", "artifact", "reference", "deviation", "sigma",
                "note");
  os << buf;
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof(buf), "  %-10s %12.4f %12.4f %10.4f %8.2f  %s\n",
                  r.quantity.c_str(), r.artifact, r.reference, r.deviation,
                  r.stderr_ratio,
                  r.reconstruction_gap ? "reconstruction gap" : "");
    os << buf;
  }
  return os.str();
}

}  // namespace qet
