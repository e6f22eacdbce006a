#include "qet/observables.hpp"

#include <cmath>
#include <stdexcept>

namespace qet {

void ModelParams::validate() const {
  if (num_qubits < 2) throw std::invalid_argument("need at least 2 qubits");
  if (h < 0.0 || k < 0.0) throw std::invalid_argument("h, k must be >= 0");
  if (h == 0.0 && k == 0.0) throw std::invalid_argument("h, k both zero");
}

bool PauliString::diagonal() const {
  for (const auto& [q, op] : factors) {
    if (op == PauliOp::X || op == PauliOp::Y) return false;
  }
  return true;
}

ObservableSpec local_number_operator(int qubit) {
  ObservableSpec spec;
  spec.name = "H_" + std::to_string(qubit);
  spec.expansion.push_back({0.5, {}});
  spec.expansion.push_back({-0.5, {{qubit, PauliOp::Z}}});
  return spec;
}

ObservableSpec subsystem_hamiltonian(int m, int num_qubits) {
  if (m < 0 || m > num_qubits) throw std::invalid_argument("bad subsystem index");
  ObservableSpec spec;
  spec.name = "H_sub_" + std::to_string(m);
  for (int i = m; i < num_qubits; ++i) {
    spec.expansion.push_back({0.5, {}});
    spec.expansion.push_back({-0.5, {{i, PauliOp::Z}}});
  }
  return spec;
}

ObservableSpec total_hamiltonian(int num_qubits) {
  ObservableSpec spec = subsystem_hamiltonian(0, num_qubits);
  spec.name = "H_tot";
  return spec;
}

double e0(double h, double k, E0Convention convention) {
  if (h < 0.0 || k < 0.0) throw std::invalid_argument("h, k must be >= 0");
  const double w = h * h + k * k;
  if (w == 0.0) throw std::invalid_argument("h, k both zero");
  return convention == E0Convention::TableConsistent ? h * h / std::sqrt(w)
                                                     : h * h / w;
}

double exact_expectation(const QuantumState& state, const PauliString& pauli) {
  const int n = state.num_qubits();
  std::uint64_t flip_mask = 0;
  // factors acting as Z (phase on set bit) and Y bookkeeping
  std::vector<std::pair<std::uint64_t, PauliOp>> masked;
  masked.reserve(pauli.factors.size());
  for (const auto& [q, op] : pauli.factors) {
    if (q < 0 || q >= n) throw std::out_of_range("pauli factor out of range");
    if (op == PauliOp::I) continue;
    const std::uint64_t bit = std::uint64_t{1} << state.bit_position(q);
    if (op == PauliOp::X || op == PauliOp::Y) flip_mask |= bit;
    masked.emplace_back(bit, op);
  }
  const auto& amps = state.amplitudes();
  cplx acc = 0.0;
  for (std::size_t i = 0; i < amps.size(); ++i) {
    cplx phase = 1.0;
    for (const auto& [bit, op] : masked) {
      const bool set = (i & bit) != 0;
      if (op == PauliOp::Z) {
        if (set) phase = -phase;
      } else if (op == PauliOp::Y) {
        phase *= set ? cplx{0.0, -1.0} : cplx{0.0, 1.0};
      }
    }
    acc += std::conj(amps[i ^ flip_mask]) * phase * amps[i];
  }
  acc *= pauli.coefficient;
  if (std::abs(acc.imag()) > kTolAlgebraic) {
    throw std::runtime_error("expectation of Hermitian operator not real");
  }
  return acc.real();
}

double exact_expectation(const QuantumState& state, const ObservableSpec& obs) {
  double total = 0.0;
  for (const auto& term : obs.expansion) total += exact_expectation(state, term);
  return total;
}

double diagonal_eigenvalue(const ObservableSpec& obs, std::uint64_t basis_index,
                           int num_qubits) {
  double value = 0.0;
  for (const auto& term : obs.expansion) {
    double sign = 1.0;
    for (const auto& [q, op] : term.factors) {
      if (op == PauliOp::I) continue;
      if (op != PauliOp::Z) {
        throw std::invalid_argument("observable is not Z-diagonal");
      }
      const std::uint64_t bit = std::uint64_t{1} << (num_qubits - 1 - q);
      if (basis_index & bit) sign = -sign;
    }
    value += term.coefficient * sign;
  }
  return value;
}

Estimate estimate_from_counts(const ShotCounts& counts, const ObservableSpec& obs,
                              int num_qubits) {
  std::uint64_t shots = 0;
  for (const auto& [outcome, c] : counts) shots += c;
  if (shots < 2) throw std::invalid_argument("need at least 2 shots");

  double sum = 0.0;
  for (const auto& [outcome, c] : counts) {
    sum += static_cast<double>(c) * diagonal_eigenvalue(obs, outcome, num_qubits);
  }
  const double mean = sum / static_cast<double>(shots);

  double ss = 0.0;
  for (const auto& [outcome, c] : counts) {
    const double d = diagonal_eigenvalue(obs, outcome, num_qubits) - mean;
    ss += static_cast<double>(c) * d * d;
  }
  const double sample_var = ss / static_cast<double>(shots - 1);
  return {mean, std::sqrt(sample_var / static_cast<double>(shots)), shots};
}

}  // namespace qet
