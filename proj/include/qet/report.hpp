#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "qet/protocol.hpp"
#include "qet/reference.hpp"
#include "qet/symmetry.hpp"

namespace qet {

inline constexpr int kReportSchemaVersion = 1;
inline constexpr const char* kArtifactVersion = "1.0.0";

// Everything needed to reproduce one experiment: config echo plus results.
// Wall time is printed to the console, never serialized, so reports are
// byte-stable for a fixed (version, config, seed).
struct ExperimentReport {
  ProtocolConfig config;
  bool has_sampled = false;
  EnergyLedger sampled;
  bool has_exact = false;
  EnergyLedger exact;
  std::vector<SymmetryReport> symmetry;
};

nlohmann::ordered_json to_json(const Estimate& e);
nlohmann::ordered_json to_json(const EnergyLedger& ledger);
nlohmann::ordered_json to_json(const ProtocolConfig& config);
nlohmann::ordered_json to_json(const SymmetryReport& report);
nlohmann::ordered_json to_json(const ExperimentReport& report);
nlohmann::ordered_json to_json(const std::vector<DeviationRow>& rows);

std::string report_json_text(const ExperimentReport& report);
std::string reports_json_text(const std::vector<ExperimentReport>& reports);

// One CSV row per (quantity, h, k, N), sorted by (N, h desc, quantity).
std::string reports_csv_text(const std::vector<ExperimentReport>& reports);

// Aligned-column text for terminals.
std::string ledger_table_text(const ExperimentReport& report);
std::string deviation_table_text(const std::vector<DeviationRow>& rows,
                                 ReferenceSource source);

}  // namespace qet
