#include "qet/oracle.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>
#include <variant>

namespace qet {

namespace {

constexpr int kMaxMeasureOps = 20;

void expand(const Circuit& circuit, std::size_t op_index, QuantumState state,
            ClassicalRecord record, double probability,
            std::vector<Branch>& out) {
  for (std::size_t i = op_index; i < circuit.ops.size(); ++i) {
    const GateOp& gate = circuit.ops[i];
    if (const auto* m = std::get_if<MeasureOp>(&gate.op)) {
      const double p1 = state.outcome_one_probability(m->target, m->basis);
      const double p0 = 1.0 - p1;
      for (int outcome = 0; outcome < 2; ++outcome) {
        const double pb = probability * (outcome == 0 ? p0 : p1);
        if (pb < kBranchPrune) continue;
        QuantumState next = state;
        next.collapse(m->target, m->basis, outcome);
        ClassicalRecord rec = record;
        rec.bits[m->cbit] = outcome;
        expand(circuit, i + 1, std::move(next), std::move(rec), pb, out);
      }
      return;
    }
    if (const auto* c = std::get_if<ConditionedOp>(&gate.op)) {
      if (!record.has(c->cbit)) {
        throw std::runtime_error("conditioned gate reads unset bit");
      }
      if (record.bit(c->cbit) != c->required_value) continue;
      // unitary inner only; nested measures would need their own split
      if (std::holds_alternative<MeasureOp>(c->inner->op)) {
        throw std::runtime_error("conditioned measurement is unsupported");
      }
      const GateOp& inner = *c->inner;
      if (const auto* u = std::get_if<Unitary1Q>(&inner.op)) {
        state.apply_unitary(u->matrix, u->target);
      } else if (const auto* cu = std::get_if<ControlledUnitary>(&inner.op)) {
        state.apply_controlled_unitary(cu->matrix, cu->controls, cu->target);
      } else {
        throw std::runtime_error("nested conditioned gates are unsupported");
      }
      continue;
    }
    if (const auto* u = std::get_if<Unitary1Q>(&gate.op)) {
      state.apply_unitary(u->matrix, u->target);
    } else if (const auto* cu = std::get_if<ControlledUnitary>(&gate.op)) {
      state.apply_controlled_unitary(cu->matrix, cu->controls, cu->target);
    }
  }
  out.push_back({std::move(record), probability, std::move(state)});
}

}  // namespace

double BranchDistribution::total_probability() const {
  double total = 0.0;
  for (const auto& b : branches) total += b.probability;
  return total;
}

BranchDistribution enumerate_branches(const Circuit& circuit) {
  if (circuit.measure_count() > kMaxMeasureOps) {
    throw std::invalid_argument("branch cap exceeded: more than 20 measure ops");
  }
  BranchDistribution dist;
  expand(circuit, 0, QuantumState(circuit.num_qubits), ClassicalRecord{}, 1.0,
         dist.branches);
  return dist;
}

double exact_averaged_expectation(const BranchDistribution& dist,
                                  const ObservableSpec& obs) {
  double total = 0.0;
  for (const auto& b : dist.branches) {
    total += b.probability * exact_expectation(b.state, obs);
  }
  return total;
}

double bit_zero_probability(const BranchDistribution& dist, int cbit) {
  double total = 0.0;
  for (const auto& b : dist.branches) {
    if (b.outcomes.bit(cbit) == 0) total += b.probability;
  }
  return total;
}

ReducedState reduced_state(const QuantumState& state,
                           const std::vector<int>& keep) {
  if (keep.empty()) throw std::invalid_argument("keep set must be nonempty");
  const int n = state.num_qubits();
  for (int q : keep) {
    if (q < 0 || q >= n) throw std::out_of_range("kept qubit out of range");
  }
  std::vector<int> dropped;
  for (int q = 0; q < n; ++q) {
    bool kept = false;
    for (int kq : keep) kept = kept || (kq == q);
    if (!kept) dropped.push_back(q);
  }
  const std::size_t kd = std::size_t{1} << keep.size();
  const std::size_t dd = std::size_t{1} << dropped.size();

  auto full_index = [&](std::size_t kept_bits, std::size_t dropped_bits) {
    std::size_t idx = 0;
    for (std::size_t j = 0; j < keep.size(); ++j) {
      if (kept_bits & (std::size_t{1} << (keep.size() - 1 - j))) {
        idx |= std::size_t{1} << state.bit_position(keep[j]);
      }
    }
    for (std::size_t j = 0; j < dropped.size(); ++j) {
      if (dropped_bits & (std::size_t{1} << (dropped.size() - 1 - j))) {
        idx |= std::size_t{1} << state.bit_position(dropped[j]);
      }
    }
    return idx;
  };

  ReducedState red;
  red.kept = keep;
  red.matrix.assign(kd * kd, cplx{0.0, 0.0});
  const auto& amps = state.amplitudes();
  for (std::size_t r = 0; r < kd; ++r) {
    for (std::size_t c = 0; c < kd; ++c) {
      cplx acc = 0.0;
      for (std::size_t e = 0; e < dd; ++e) {
        acc += amps[full_index(r, e)] * std::conj(amps[full_index(c, e)]);
      }
      red.matrix[r * kd + c] = acc;
    }
  }
  return red;
}

double reduced_expectation(const ReducedState& red, const ObservableSpec& obs) {
  const std::size_t d = red.dim();
  const int nk = static_cast<int>(red.kept.size());
  // Build the observable matrix on the kept subspace, then Tr(rho O).
  std::vector<cplx> op(d * d, cplx{0.0, 0.0});
  for (const auto& term : obs.expansion) {
    for (std::size_t col = 0; col < d; ++col) {
      std::size_t row = col;
      cplx phase = term.coefficient;
      for (const auto& [q, p] : term.factors) {
        if (q < 0 || q >= nk) throw std::out_of_range("factor outside kept set");
        const std::size_t bit = std::size_t{1} << (nk - 1 - q);
        const bool set = (col & bit) != 0;
        switch (p) {
          case PauliOp::I:
            break;
          case PauliOp::X:
            row ^= bit;
            break;
          case PauliOp::Y:
            row ^= bit;
            phase *= set ? cplx{0.0, -1.0} : cplx{0.0, 1.0};
            break;
          case PauliOp::Z:
            if (set) phase = -phase;
            break;
        }
      }
      op[row * d + col] += phase;
    }
  }
  cplx tr = 0.0;
  for (std::size_t r = 0; r < d; ++r) {
    for (std::size_t c = 0; c < d; ++c) {
      tr += red.matrix[r * d + c] * op[c * d + r];
    }
  }
  if (std::abs(tr.imag()) > kTolAlgebraic) {
    throw std::runtime_error("reduced expectation not real");
  }
  return tr.real();
}

WitnessResult entanglement_witness(const ReducedState& red) {
  if (red.kept.size() != 2) {
    throw std::invalid_argument("witness requires a 2-qubit reduced state");
  }
  Eigen::Matrix4cd rho;
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) rho(r, c) = red.at(r, c);
  }
  WitnessResult result;
  result.purity = (rho * rho).trace().real();

  // Partial transpose on the second qubit: indices (a b, c d) -> (a d, c b).
  Eigen::Matrix4cd pt;
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      for (int c = 0; c < 2; ++c) {
        for (int d = 0; d < 2; ++d) {
          pt(2 * a + b, 2 * c + d) = rho(2 * a + d, 2 * c + b);
        }
      }
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> solver(pt);
  result.min_pt_eigenvalue = solver.eigenvalues().minCoeff();
  result.entangled = result.min_pt_eigenvalue < -1e-9;
  return result;
}

}  // namespace qet
