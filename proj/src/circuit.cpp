#include "qet/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <stdexcept>
#include <variant>

namespace qet {

namespace {

std::string fmt_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

struct OpFootprint {
  std::vector<int> qubits;
  int reads_cbit = -1;
  int writes_cbit = -1;
  bool two_qubit = false;
};

OpFootprint footprint(const GateOp& gate) {
  OpFootprint fp;
  std::visit(
      [&](const auto& op) {
        using T = std::decay_t<decltype(op)>;
        if constexpr (std::is_same_v<T, Unitary1Q>) {
          fp.qubits = {op.target};
        } else if constexpr (std::is_same_v<T, ControlledUnitary>) {
          fp.qubits = op.controls;
          fp.qubits.push_back(op.target);
          fp.two_qubit = fp.qubits.size() >= 2;
        } else if constexpr (std::is_same_v<T, MeasureOp>) {
          fp.qubits = {op.target};
          fp.writes_cbit = op.cbit;
        } else {
          OpFootprint inner = footprint(*op.inner);
          fp.qubits = inner.qubits;
          fp.reads_cbit = op.cbit;
        }
      },
      gate.op);
  return fp;
}

}  // namespace

std::string to_string(PrepStrategy s) {
  return s == PrepStrategy::LinearCascade ? "linear" : "log";
}

void Circuit::append(const Circuit& other) {
  if (other.num_qubits > num_qubits) {
    throw std::invalid_argument("appended circuit is wider than target");
  }
  ops.insert(ops.end(), other.ops.begin(), other.ops.end());
}

int Circuit::depth() const {
  std::map<int, int> qubit_layer;
  std::map<int, int> cbit_layer;
  int depth = 0;
  for (const auto& gate : ops) {
    const OpFootprint fp = footprint(gate);
    int layer = 0;
    for (int q : fp.qubits) layer = std::max(layer, qubit_layer[q]);
    if (fp.reads_cbit >= 0) layer = std::max(layer, cbit_layer[fp.reads_cbit]);
    ++layer;
    for (int q : fp.qubits) qubit_layer[q] = layer;
    if (fp.writes_cbit >= 0) cbit_layer[fp.writes_cbit] = layer;
    depth = std::max(depth, layer);
  }
  return depth;
}

int Circuit::two_qubit_gate_count() const {
  int count = 0;
  for (const auto& gate : ops) {
    if (footprint(gate).two_qubit) ++count;
  }
  return count;
}

int Circuit::measure_count() const {
  int count = 0;
  for (const auto& gate : ops) {
    if (std::holds_alternative<MeasureOp>(gate.op)) ++count;
  }
  return count;
}

namespace {

std::string op_to_text(const GateOp& gate) {
  std::string line;
  std::visit(
      [&](const auto& op) {
        using T = std::decay_t<decltype(op)>;
        if constexpr (std::is_same_v<T, Unitary1Q>) {
          line = op.name + " " + std::to_string(op.target);
          for (double p : op.params) line += " " + fmt_double(p);
        } else if constexpr (std::is_same_v<T, ControlledUnitary>) {
          line = "c" + op.name;
          for (int c : op.controls) line += " " + std::to_string(c);
          line += " " + std::to_string(op.target);
          for (double p : op.params) line += " " + fmt_double(p);
        } else if constexpr (std::is_same_v<T, MeasureOp>) {
          line = "measure " + std::to_string(op.target) + " " +
                 (op.basis == Basis::Z ? "z" : "x") + " b" +
                 std::to_string(op.cbit);
        } else {
          line = "cond b" + std::to_string(op.cbit) + " " +
                 std::to_string(op.required_value) + " " + op_to_text(*op.inner);
        }
      },
      gate.op);
  return line;
}

}  // namespace

std::string Circuit::to_text() const {
  std::string out = "qubits " + std::to_string(num_qubits) + "\n";
  for (const auto& gate : ops) out += op_to_text(gate) + "\n";
  return out;
}

void apply_gate(QuantumState& state, const GateOp& gate, ClassicalRecord& record,
                RngStream& rng) {
  std::visit(
      [&](const auto& op) {
        using T = std::decay_t<decltype(op)>;
        if constexpr (std::is_same_v<T, Unitary1Q>) {
          state.apply_unitary(op.matrix, op.target);
        } else if constexpr (std::is_same_v<T, ControlledUnitary>) {
          state.apply_controlled_unitary(op.matrix, op.controls, op.target);
        } else if constexpr (std::is_same_v<T, MeasureOp>) {
          auto [outcome, prob] =
              measure_projective(state, op.target, op.basis, rng);
          (void)prob;
          record.bits[op.cbit] = outcome;
        } else {
          if (!record.has(op.cbit)) {
            throw std::runtime_error("conditioned gate reads unset bit b" +
                                     std::to_string(op.cbit));
          }
          if (record.bit(op.cbit) == op.required_value) {
            apply_gate(state, *op.inner, record, rng);
          }
        }
      },
      gate.op);
}

std::pair<QuantumState, ClassicalRecord> run_circuit(const Circuit& circuit,
                                                     RngStream& rng) {
  QuantumState state(circuit.num_qubits);
  ClassicalRecord record;
  for (const auto& gate : circuit.ops) apply_gate(state, gate, record, rng);
  return {std::move(state), std::move(record)};
}

namespace {

// Angle that keeps amplitude sqrt(keep/total) on the control and routes the
// rest to the split target.
double split_angle(int routed, int total) {
  return 2.0 * std::asin(std::sqrt(static_cast<double>(routed) / total));
}

// Move `routed` of the `total` shares held at qubit `from` to qubit `to`.
void emit_split(Circuit& c, int from, int to, int routed, int total) {
  c.append(gates::cry(from, to, split_angle(routed, total)));
  c.append(gates::cx(to, from));
}

void tree_distribute(Circuit& c, int start, int block) {
  if (block <= 1) return;
  const int right = block / 2;
  const int left = block - right;
  emit_split(c, start, start + left, right, block);
  tree_distribute(c, start, left);
  tree_distribute(c, start + left, right);
}

}  // namespace

Circuit build_w_distribution(int n, PrepStrategy strategy) {
  if (n < 1) throw std::invalid_argument("build_w_distribution: n must be >= 1");
  Circuit c{n, {}};
  if (n == 1) return c;
  if (strategy == PrepStrategy::LinearCascade) {
    for (int i = 0; i + 1 < n; ++i) {
      emit_split(c, i, i + 1, n - i - 1, n - i);
    }
  } else {
    tree_distribute(c, 0, n);
  }
  return c;
}

Circuit build_initial_state(int n, double h, double k, PrepStrategy strategy) {
  if (h < 0.0 || k < 0.0) {
    throw std::invalid_argument("weights h, k must be non-negative");
  }
  if (h == 0.0 && k == 0.0) {
    throw std::invalid_argument("weights h, k must not both be zero");
  }
  Circuit c{n, {}};
  c.append(gates::ry(0, 2.0 * std::atan2(h, k)));
  c.append(build_w_distribution(n, strategy));
  return c;
}

Circuit build_ghz(int n) {
  if (n < 2) throw std::invalid_argument("build_ghz: n must be >= 2");
  Circuit c{n, {}};
  c.append(gates::h(0));
  for (int i = 0; i + 1 < n; ++i) c.append(gates::cx(i, i + 1));
  return c;
}

Circuit build_truncated_distribution(int n, double h, double k) {
  if (n < 3) {
    throw std::invalid_argument("truncated prep needs at least 3 qubits");
  }
  Circuit c{n, {}};
  c.append(gates::ry(0, 2.0 * std::atan2(h, k)));
  emit_split(c, 0, 1, 1, 2);
  return c;
}

}  // namespace qet
