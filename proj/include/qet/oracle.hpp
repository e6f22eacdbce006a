#pragma once

#include <vector>

#include "qet/circuit.hpp"
#include "qet/observables.hpp"

namespace qet {

// One leaf of the measurement-outcome tree.
struct Branch {
  ClassicalRecord outcomes;
  double probability = 0.0;
  QuantumState state;
};

// Exhaustive enumeration of all measurement branches of a circuit, in
// canonical (outcome-0 first, depth-first) order.
struct BranchDistribution {
  std::vector<Branch> branches;

  double total_probability() const;
};

// Exact ground truth for every sampled quantity. Circuits are capped at
// 20 measure ops before pruning.
BranchDistribution enumerate_branches(const Circuit& circuit);

// sum_b p_b * <obs>_b
double exact_averaged_expectation(const BranchDistribution& dist,
                                  const ObservableSpec& obs);

// Probability that a given classical bit came out 0 across all branches.
double bit_zero_probability(const BranchDistribution& dist, int cbit);

// Density matrix over a kept subset, row-major, kept qubits in the given
// order (first kept qubit = most significant).
struct ReducedState {
  std::vector<int> kept;
  std::vector<cplx> matrix;  // dim 2^kept.size() squared

  std::size_t dim() const { return std::size_t{1} << kept.size(); }
  cplx at(std::size_t r, std::size_t c) const { return matrix[r * dim() + c]; }
};

ReducedState reduced_state(const QuantumState& state,
                           const std::vector<int>& keep);

// Tr(rho O) for an observable on the kept qubits (indices into `kept`).
double reduced_expectation(const ReducedState& red, const ObservableSpec& obs);

struct WitnessResult {
  double purity = 0.0;
  double min_pt_eigenvalue = 0.0;
  bool entangled = false;
};

// Two-qubit separability test: partial transpose has a negative eigenvalue
// iff the state is entangled. Threshold -1e-9 absorbs rounding noise.
WitnessResult entanglement_witness(const ReducedState& red);

}  // namespace qet
