#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qet/protocol.hpp"

namespace qet {

enum class ReferenceSource { Simulator, Device };

std::string to_string(ReferenceSource s);

struct ReferenceEntry {
  int num_qubits = 0;
  double h = 0.0;
  double k = 0.0;
  std::string quantity;  // H_tot, H_sub_m, E_o, H_i
  ReferenceSource source = ReferenceSource::Simulator;
  double value = 0.0;
  double stderr_ = 0.0;  // 0 when the source table gives no error bar
};

// Published energy readings bundled with the artifact.
struct ReferenceDataset {
  std::vector<ReferenceEntry> entries;

  std::optional<ReferenceEntry> find(int num_qubits, double h, double k,
                                     const std::string& quantity,
                                     ReferenceSource source) const;
};

// Built-in dataset (the shipped data file carries the same rows).
const ReferenceDataset& builtin_reference();

// Canonical serialization of the dataset rows; its FNV-1a hash is the
// checksum stored in the data file.
std::string canonical_reference_text(const ReferenceDataset& dataset);
std::uint64_t fnv1a64(const std::string& text);

// Load and checksum-verify a dataset file (format: docs/file-formats.md).
ReferenceDataset load_reference_file(const std::string& path);

struct DeviationRow {
  std::string quantity;
  double artifact = 0.0;
  double artifact_stderr = 0.0;
  double reference = 0.0;
  double reference_stderr = 0.0;
  double deviation = 0.0;
  double stderr_ratio = 0.0;  // deviation / combined stderr, 0 if undefined
  bool reconstruction_gap = false;
};

// Informational comparison of a ledger against one reference column. Never
// a correctness gate: the published subsystem magnitudes are not derivable
// from the stated operators, so large deviations are expected and flagged.
std::vector<DeviationRow> compare_reference(const EnergyLedger& ledger,
                                            const ProtocolConfig& config,
                                            const ReferenceDataset& dataset,
                                            ReferenceSource source);

}  // namespace qet
