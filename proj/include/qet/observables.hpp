#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "qet/state.hpp"

namespace qet {

// (N, h, k): register width and the vacuum/W weights. Energies are
// dimensionless throughout.
struct ModelParams {
  int num_qubits = 3;
  double h = 1.0;
  double k = 1.0;

  void validate() const;
};

enum class PauliOp { I, X, Y, Z };

// coefficient * product of single-qubit Pauli factors (at most one per qubit).
struct PauliString {
  double coefficient = 1.0;
  std::vector<std::pair<int, PauliOp>> factors;  // (qubit, op), I omitted

  bool diagonal() const;  // only I/Z factors
};

// A named observable with its Pauli expansion.
struct ObservableSpec {
  std::string name;
  std::vector<PauliString> expansion;
};

// H_n = |1><1|_n = (I - Z_n)/2
ObservableSpec local_number_operator(int qubit);
// H_sub(m) = sum_{i=m}^{N-1} H_i
ObservableSpec subsystem_hamiltonian(int m, int num_qubits);
// H_total = sum_i H_i (the interaction term V has no stated operator form
// and is fixed to zero).
ObservableSpec total_hamiltonian(int num_qubits);

enum class E0Convention { TableConsistent, AsPrinted };

// Energy injected by the sender's measurement. The table-consistent form is
// h^2/sqrt(h^2+k^2); as-printed is h^2/(h^2+k^2).
double e0(double h, double k,
          E0Convention convention = E0Convention::TableConsistent);

// <psi|P|psi>; throws if the value has a non-negligible imaginary part.
double exact_expectation(const QuantumState& state, const PauliString& pauli);
double exact_expectation(const QuantumState& state, const ObservableSpec& obs);

// Sampled estimate: mean with standard error = sample std dev / sqrt(shots).
struct Estimate {
  double mean = 0.0;
  double stderr_ = 0.0;
  std::uint64_t shots = 0;
};

// Histogram of computational-basis outcomes (basis index -> count).
using ShotCounts = std::map<std::uint64_t, std::uint64_t>;

// Estimate a Z-diagonal observable from shot counts.
Estimate estimate_from_counts(const ShotCounts& counts, const ObservableSpec& obs,
                              int num_qubits);

// Eigenvalue of a diagonal observable on one basis outcome.
double diagonal_eigenvalue(const ObservableSpec& obs, std::uint64_t basis_index,
                           int num_qubits);

}  // namespace qet
