#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "qet/linalg.hpp"
#include "qet/rng.hpp"

namespace qet {

enum class Basis { Z, X };

// Dense statevector over 2^num_qubits basis states.
//
// Qubit 0 (Alice) is the most significant position in basis-state labels,
// so |100> means qubit 0 excited.
class QuantumState {
 public:
  static constexpr int kMaxQubits = 24;

  explicit QuantumState(int num_qubits);

  int num_qubits() const { return num_qubits_; }
  std::size_t dim() const { return amps_.size(); }
  const std::vector<cplx>& amplitudes() const { return amps_; }
  std::vector<cplx>& amplitudes() { return amps_; }

  cplx amplitude(std::size_t basis_index) const { return amps_[basis_index]; }

  // Bit position (LSB = 0) of a qubit inside a basis index.
  int bit_position(int qubit) const { return num_qubits_ - 1 - qubit; }

  double norm_squared() const;
  void renormalize();

  void apply_unitary(const Mat2& u, int target);
  void apply_controlled_unitary(const Mat2& u, const std::vector<int>& controls,
                                int target);

  // Probability of outcome 1 (Z) or outcome 1 == the (1-X)/2 branch (X).
  double outcome_one_probability(int qubit, Basis basis) const;

  // Collapse to the given outcome, returning the branch probability.
  // X-basis collapse applies the projector (1 +/- X)/2 and renormalizes,
  // leaving the qubit in |+> or |->.
  double collapse(int qubit, Basis basis, int outcome);

  // <psi| Z_qubit |psi>
  double expectation_z(int qubit) const;

 private:
  void check_qubit(int qubit) const;

  int num_qubits_;
  std::vector<cplx> amps_;
};

// Born-rule sampled projective measurement.
std::pair<int, double> measure_projective(QuantumState& state, int qubit,
                                          Basis basis, RngStream& rng);

namespace kernels {

// Production kernel: applies u to the target bit position over the whole
// vector; parallelized over index pairs when the vector is large enough.
void apply_1q(cplx* amps, std::size_t dim, int bit_pos, const Mat2& u);

// Controlled variant; control_mask marks bit positions that must all be 1.
void apply_controlled_1q(cplx* amps, std::size_t dim, int bit_pos,
                         std::uint64_t control_mask, const Mat2& u);

double norm_squared(const cplx* amps, std::size_t dim);

// Probability mass on indices where the given bit is set.
double bit_set_probability(const cplx* amps, std::size_t dim, int bit_pos);

namespace serial {
// Reference implementations, kept deliberately naive for testing the
// parallel kernels against. The dense variant multiplies by the full
// 2^n x 2^n embedded operator, O(4^n), usable only at small n.
void apply_1q(cplx* amps, std::size_t dim, int bit_pos, const Mat2& u);
void apply_controlled_1q(cplx* amps, std::size_t dim, int bit_pos,
                         std::uint64_t control_mask, const Mat2& u);
std::vector<cplx> apply_1q_dense(const std::vector<cplx>& amps, int bit_pos,
                                 const Mat2& u);
}  // namespace serial

}  // namespace kernels

}  // namespace qet
