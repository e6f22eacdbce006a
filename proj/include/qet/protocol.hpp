#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "qet/circuit.hpp"
#include "qet/observables.hpp"
#include "qet/oracle.hpp"

namespace qet {

struct ProtocolConfig {
  ModelParams params;
  std::uint64_t shots = 100000;
  std::uint64_t master_seed = 0;
  PrepStrategy strategy = PrepStrategy::LinearCascade;
  std::vector<int> receiver_order;  // empty = 1..N-1
  E0Convention convention = E0Convention::TableConsistent;
  bool feedforward_enabled = true;
  bool broken_prep = false;  // negative control for the symmetry suite

  std::vector<int> effective_order() const;
  void validate() const;
};

// Outcomes of one end-to-end shot.
struct ShotRecord {
  int mu = +1;
  std::map<int, int> receiver_outcomes;  // qubit -> bit
  int alice_frame_bit = 0;
};

// Aggregated energy readings for one experiment configuration.
struct EnergyLedger {
  double e0 = 0.0;
  Estimate h_total_post;
  std::vector<Estimate> h_sub;     // index j -> H_sub(j+1), j = 0..N-2
  std::vector<Estimate> local;     // per qubit <H_i>, i = 0..N-1
  std::vector<Estimate> harvested; // index j -> dE_{j+1} = H_sub(j+1)-H_sub(j+2)
  Estimate mu_plus_probability;
};

// Full circuit for one protocol run: prep, X-measurement at Alice (bit 0),
// conditional Z feedforward, Z readout of receivers in the configured
// order (bit = qubit index), final Z readout of Alice (bit N).
Circuit build_protocol_circuit(const ProtocolConfig& config);

// Classical-bit ids inside the protocol circuit.
inline int mu_cbit() { return 0; }
inline int receiver_cbit(int qubit) { return qubit; }
inline int alice_frame_cbit(int num_qubits) { return num_qubits; }

// Protocol step primitives (the circuit above composes these).
std::pair<int, QuantumState> inject(QuantumState state, RngStream& rng);
QuantumState feedforward(QuantumState state, int mu,
                         const std::vector<int>& receivers);
ShotRecord harvest(QuantumState& state, int mu,
                   const std::vector<int>& receiver_order, RngStream& rng);

// Monte Carlo estimate over config.shots independent executions. Shots may
// run on multiple threads; aggregation is in shot-index order, so ledgers
// are identical for any worker count.
EnergyLedger run_protocol(const ProtocolConfig& config);

// Branch-oracle exact ledger: stderr fields zero.
EnergyLedger run_protocol_exact(const ProtocolConfig& config);

}  // namespace qet
