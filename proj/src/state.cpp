#include "qet/state.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qet {

namespace kernels {

namespace {
// Below this size the OpenMP fork/join overhead dominates.
constexpr std::size_t kParallelThreshold = std::size_t{1} << 14;

inline std::size_t pair_low_index(std::size_t k, std::size_t stride) {
  // k-th index whose stride bit is 0
  return ((k & ~(stride - 1)) << 1) | (k & (stride - 1));
}
}  // namespace

void apply_1q(cplx* amps, std::size_t dim, int bit_pos, const Mat2& u) {
  const std::size_t stride = std::size_t{1} << bit_pos;
  const std::size_t pairs = dim >> 1;
  const cplx u00 = u(0, 0), u01 = u(0, 1), u10 = u(1, 0), u11 = u(1, 1);
#pragma omp parallel for schedule(static) if (dim >= kParallelThreshold)
  for (long long k = 0; k < static_cast<long long>(pairs); ++k) {
    const std::size_t a = pair_low_index(static_cast<std::size_t>(k), stride);
    const std::size_t b = a | stride;
    const cplx lo = amps[a];
    const cplx hi = amps[b];
    amps[a] = u00 * lo + u01 * hi;
    amps[b] = u10 * lo + u11 * hi;
  }
}

void apply_controlled_1q(cplx* amps, std::size_t dim, int bit_pos,
                         std::uint64_t control_mask, const Mat2& u) {
  const std::size_t stride = std::size_t{1} << bit_pos;
  const std::size_t pairs = dim >> 1;
  const cplx u00 = u(0, 0), u01 = u(0, 1), u10 = u(1, 0), u11 = u(1, 1);
#pragma omp parallel for schedule(static) if (dim >= kParallelThreshold)
  for (long long k = 0; k < static_cast<long long>(pairs); ++k) {
    const std::size_t a = pair_low_index(static_cast<std::size_t>(k), stride);
    if ((a & control_mask) != control_mask) continue;
    const std::size_t b = a | stride;
    const cplx lo = amps[a];
    const cplx hi = amps[b];
    amps[a] = u00 * lo + u01 * hi;
    amps[b] = u10 * lo + u11 * hi;
  }
}

double norm_squared(const cplx* amps, std::size_t dim) {
  double total = 0.0;
#pragma omp parallel for schedule(static) reduction(+ : total) \
    if (dim >= kParallelThreshold)
  for (long long i = 0; i < static_cast<long long>(dim); ++i) {
    total += std::norm(amps[i]);
  }
  return total;
}

double bit_set_probability(const cplx* amps, std::size_t dim, int bit_pos) {
  const std::size_t mask = std::size_t{1} << bit_pos;
  double total = 0.0;
#pragma omp parallel for schedule(static) reduction(+ : total) \
    if (dim >= kParallelThreshold)
  for (long long i = 0; i < static_cast<long long>(dim); ++i) {
    if (static_cast<std::size_t>(i) & mask) total += std::norm(amps[i]);
  }
  return total;
}

namespace serial {

void apply_1q(cplx* amps, std::size_t dim, int bit_pos, const Mat2& u) {
  const std::size_t stride = std::size_t{1} << bit_pos;
  for (std::size_t base = 0; base < dim; base += 2 * stride) {
    for (std::size_t j = 0; j < stride; ++j) {
      const std::size_t a = base + j;
      const std::size_t b = a + stride;
      const cplx lo = amps[a];
      const cplx hi = amps[b];
      amps[a] = u(0, 0) * lo + u(0, 1) * hi;
      amps[b] = u(1, 0) * lo + u(1, 1) * hi;
    }
  }
}

void apply_controlled_1q(cplx* amps, std::size_t dim, int bit_pos,
                         std::uint64_t control_mask, const Mat2& u) {
  const std::size_t stride = std::size_t{1} << bit_pos;
  for (std::size_t base = 0; base < dim; base += 2 * stride) {
    for (std::size_t j = 0; j < stride; ++j) {
      const std::size_t a = base + j;
      if ((a & control_mask) != control_mask) continue;
      const std::size_t b = a + stride;
      const cplx lo = amps[a];
      const cplx hi = amps[b];
      amps[a] = u(0, 0) * lo + u(0, 1) * hi;
      amps[b] = u(1, 0) * lo + u(1, 1) * hi;
    }
  }
}

std::vector<cplx> apply_1q_dense(const std::vector<cplx>& amps, int bit_pos,
                                 const Mat2& u) {
  const std::size_t dim = amps.size();
  const std::size_t mask = std::size_t{1} << bit_pos;
  std::vector<cplx> out(dim, cplx{0.0, 0.0});
  for (std::size_t row = 0; row < dim; ++row) {
    for (std::size_t col = 0; col < dim; ++col) {
      if ((row & ~mask) != (col & ~mask)) continue;
      const int rb = (row & mask) ? 1 : 0;
      const int cb = (col & mask) ? 1 : 0;
      out[row] += u(rb, cb) * amps[col];
    }
  }
  return out;
}

}  // namespace serial

}  // namespace kernels

QuantumState::QuantumState(int num_qubits) : num_qubits_(num_qubits) {
  if (num_qubits < 1 || num_qubits > kMaxQubits) {
    throw std::invalid_argument("QuantumState: num_qubits must be in [1, " +
                                std::to_string(kMaxQubits) + "]");
  }
  amps_.assign(std::size_t{1} << num_qubits, cplx{0.0, 0.0});
  amps_[0] = 1.0;
}

void QuantumState::check_qubit(int qubit) const {
  if (qubit < 0 || qubit >= num_qubits_) {
    throw std::out_of_range("qubit index " + std::to_string(qubit) +
                            " out of range for " + std::to_string(num_qubits_) +
                            " qubits");
  }
}

double QuantumState::norm_squared() const {
  return kernels::norm_squared(amps_.data(), amps_.size());
}

void QuantumState::renormalize() {
  const double n2 = norm_squared();
  if (n2 <= 0.0) throw std::runtime_error("cannot renormalize a zero state");
  const double inv = 1.0 / std::sqrt(n2);
  for (auto& a : amps_) a *= inv;
}

void QuantumState::apply_unitary(const Mat2& u, int target) {
  check_qubit(target);
  if (!is_unitary(u)) throw std::invalid_argument("matrix is not unitary");
  kernels::apply_1q(amps_.data(), amps_.size(), bit_position(target), u);
}

void QuantumState::apply_controlled_unitary(const Mat2& u,
                                            const std::vector<int>& controls,
                                            int target) {
  check_qubit(target);
  if (!is_unitary(u)) throw std::invalid_argument("matrix is not unitary");
  std::uint64_t mask = 0;
  for (int c : controls) {
    check_qubit(c);
    if (c == target) throw std::invalid_argument("control equals target");
    mask |= std::uint64_t{1} << bit_position(c);
  }
  kernels::apply_controlled_1q(amps_.data(), amps_.size(),
                               bit_position(target), mask, u);
}

double QuantumState::outcome_one_probability(int qubit, Basis basis) const {
  check_qubit(qubit);
  const int bp = bit_position(qubit);
  if (basis == Basis::Z) {
    return kernels::bit_set_probability(amps_.data(), amps_.size(), bp);
  }
  // X basis: P(1) = <psi|(1 - X)/2|psi> = 1/2 - Re<X>/2
  const std::size_t mask = std::size_t{1} << bp;
  double x_expect = 0.0;
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    x_expect += (std::conj(amps_[i ^ mask]) * amps_[i]).real();
  }
  return 0.5 * (1.0 - x_expect);
}

double QuantumState::collapse(int qubit, Basis basis, int outcome) {
  check_qubit(qubit);
  if (outcome != 0 && outcome != 1) throw std::invalid_argument("bad outcome");
  const int bp = bit_position(qubit);
  const std::size_t mask = std::size_t{1} << bp;
  if (basis == Basis::Z) {
    for (std::size_t i = 0; i < amps_.size(); ++i) {
      const int bit = (i & mask) ? 1 : 0;
      if (bit != outcome) amps_[i] = 0.0;
    }
  } else {
    // Projector (1 + mu X)/2 with mu = +1 for outcome 0.
    const double mu = (outcome == 0) ? 1.0 : -1.0;
    for (std::size_t i = 0; i < amps_.size(); ++i) {
      if (i & mask) continue;  // handle each pair once, from its low index
      const std::size_t j = i | mask;
      const cplx avg = 0.5 * (amps_[i] + mu * amps_[j]);
      amps_[i] = avg;
      amps_[j] = mu * avg;
    }
  }
  const double p = norm_squared();
  if (p <= kBranchPrune) {
    throw std::runtime_error("collapse onto a zero-probability branch");
  }
  const double inv = 1.0 / std::sqrt(p);
  for (auto& a : amps_) a *= inv;
  return p;
}

double QuantumState::expectation_z(int qubit) const {
  check_qubit(qubit);
  const double p1 =
      kernels::bit_set_probability(amps_.data(), amps_.size(),
                                   bit_position(qubit));
  return 1.0 - 2.0 * p1;
}

std::pair<int, double> measure_projective(QuantumState& state, int qubit,
                                          Basis basis, RngStream& rng) {
  const double p1 = state.outcome_one_probability(qubit, basis);
  const int outcome = (rng.next_unit() < 1.0 - p1) ? 0 : 1;
  const double p = state.collapse(qubit, basis, outcome);
  return {outcome, p};
}

}  // namespace qet
