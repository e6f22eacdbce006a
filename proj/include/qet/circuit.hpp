#pragma once

#include <string>
#include <vector>

#include "qet/gates.hpp"
#include "qet/rng.hpp"
#include "qet/state.hpp"

namespace qet {

enum class PrepStrategy { LinearCascade, LogDepthTree };

std::string to_string(PrepStrategy s);

// Ordered program of unitaries, measurements and classically conditioned
// gates over a fixed register width.
struct Circuit {
  int num_qubits = 0;
  std::vector<GateOp> ops;

  void append(GateOp op) { ops.push_back(std::move(op)); }
  void append(const Circuit& other);

  // Longest dependency chain over shared qubits; a conditioned gate also
  // depends on the measurement that wrote its classical bit.
  int depth() const;
  int two_qubit_gate_count() const;
  int measure_count() const;

  // Line-oriented textual form, one op per line (see docs/file-formats.md).
  std::string to_text() const;
};

// Applies one op in place. Measure ops draw from rng and write the record;
// Conditioned ops require the referenced bit to be set already.
void apply_gate(QuantumState& state, const GateOp& gate, ClassicalRecord& record,
                RngStream& rng);

std::pair<QuantumState, ClassicalRecord> run_circuit(const Circuit& circuit,
                                                     RngStream& rng);

// Excitation-distribution unitary: maps |10...0> to |W_n| and fixes the
// vacuum. Linear cascade has depth Theta(n); the tree variant O(log2 n).
Circuit build_w_distribution(int n, PrepStrategy strategy);

// Prepares (k|0...0> + h|W_n>)/sqrt(h^2+k^2) from the vacuum: a Y rotation
// of angle 2*atan2(h,k) on qubit 0 followed by the distribution circuit.
Circuit build_initial_state(int n, double h, double k, PrepStrategy strategy);

// (|0...0> + |1...1>)/sqrt(2)
Circuit build_ghz(int n);

// Deliberately broken prep used as a negative control: the excitation is
// shared between qubits 0 and 1 only, so receivers are inequivalent.
Circuit build_truncated_distribution(int n, double h, double k);

}  // namespace qet
