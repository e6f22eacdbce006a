#pragma once

#include <string>
#include <vector>

#include "qet/protocol.hpp"

namespace qet {

enum class SymmetryKind { Translational, Exchange };
enum class SymmetryMode { Exact, Sampled };

struct SymmetryReport {
  SymmetryKind kind = SymmetryKind::Translational;
  SymmetryMode mode = SymmetryMode::Exact;
  double max_deviation = 0.0;
  double threshold = 0.0;
  bool pass = false;
};

std::string to_string(SymmetryKind k);
std::string to_string(SymmetryMode m);

// Receiver equivalence: after injection every receiver reads the same local
// energy. Exact threshold 1e-12; sampled threshold 5x the largest combined
// stderr over receiver pairs.
SymmetryReport translational_test(const ProtocolConfig& config,
                                  SymmetryMode mode);

// Receiver-order independence: ledgers compared per receiver (dE attributed
// to the receiver qubit, not the measurement position).
SymmetryReport exchange_test(const ProtocolConfig& config,
                             const std::vector<int>& order_a,
                             const std::vector<int>& order_b,
                             SymmetryMode mode);

}  // namespace qet
