#include "qet/gates.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace qet {

int ClassicalRecord::bit(int cbit) const {
  auto it = bits.find(cbit);
  if (it == bits.end()) {
    throw std::runtime_error("classical bit " + std::to_string(cbit) +
                             " has not been set");
  }
  return it->second;
}

namespace gates {

Mat2 identity_matrix() { return mat2(1, 0, 0, 1); }
Mat2 pauli_x_matrix() { return mat2(0, 1, 1, 0); }
Mat2 pauli_y_matrix() { return mat2(0, cplx{0, -1}, cplx{0, 1}, 0); }
Mat2 pauli_z_matrix() { return mat2(1, 0, 0, -1); }

Mat2 hadamard_matrix() {
  const double s = 1.0 / std::sqrt(2.0);
  return mat2(s, s, s, -s);
}

Mat2 ry_matrix(double theta) {
  const double c = std::cos(theta / 2.0);
  const double s = std::sin(theta / 2.0);
  return mat2(c, -s, s, c);
}

GateOp h(int target) { return {Unitary1Q{"h", hadamard_matrix(), target, {}}}; }
GateOp x(int target) { return {Unitary1Q{"x", pauli_x_matrix(), target, {}}}; }
GateOp y(int target) { return {Unitary1Q{"y", pauli_y_matrix(), target, {}}}; }
GateOp z(int target) { return {Unitary1Q{"z", pauli_z_matrix(), target, {}}}; }

GateOp ry(int target, double theta) {
  return {Unitary1Q{"ry", ry_matrix(theta), target, {theta}}};
}

GateOp cx(int control, int target) {
  return {ControlledUnitary{"x", pauli_x_matrix(), {control}, target, {}}};
}

GateOp cry(int control, int target, double theta) {
  return {ControlledUnitary{"ry", ry_matrix(theta), {control}, target, {theta}}};
}

GateOp measure(int target, Basis basis, int cbit) {
  return {MeasureOp{target, basis, cbit}};
}

GateOp conditioned(int cbit, int required_value, GateOp inner) {
  if (required_value != 0 && required_value != 1) {
    throw std::invalid_argument("required_value must be 0 or 1");
  }
  return {ConditionedOp{cbit, required_value,
                        std::make_shared<const GateOp>(std::move(inner))}};
}

}  // namespace gates
}  // namespace qet
