#pragma once

#include <map>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "qet/linalg.hpp"
#include "qet/state.hpp"

namespace qet {

struct GateOp;

// Named single-qubit unitary. The name/params pair exists for the textual
// circuit form; the matrix is what gets applied.
struct Unitary1Q {
  std::string name;
  Mat2 matrix;
  int target = 0;
  std::vector<double> params;
};

struct ControlledUnitary {
  std::string name;  // name of the controlled inner unitary, e.g. "ry", "x"
  Mat2 matrix;
  std::vector<int> controls;
  int target = 0;
  std::vector<double> params;
};

struct MeasureOp {
  int target = 0;
  Basis basis = Basis::Z;
  int cbit = 0;
};

struct ConditionedOp {
  int cbit = 0;
  int required_value = 0;  // 0 or 1
  std::shared_ptr<const GateOp> inner;
};

struct GateOp {
  std::variant<Unitary1Q, ControlledUnitary, MeasureOp, ConditionedOp> op;
};

// Measured classical bits; mu = +1 iff the bit is 0.
struct ClassicalRecord {
  std::map<int, int> bits;

  bool has(int cbit) const { return bits.count(cbit) != 0; }
  int bit(int cbit) const;
  int sign(int cbit) const { return bit(cbit) == 0 ? +1 : -1; }

  bool operator==(const ClassicalRecord&) const = default;
};

namespace gates {

Mat2 identity_matrix();
Mat2 pauli_x_matrix();
Mat2 pauli_y_matrix();
Mat2 pauli_z_matrix();
Mat2 hadamard_matrix();
Mat2 ry_matrix(double theta);

GateOp h(int target);
GateOp x(int target);
GateOp y(int target);
GateOp z(int target);
GateOp ry(int target, double theta);
GateOp cx(int control, int target);
GateOp cry(int control, int target, double theta);
GateOp measure(int target, Basis basis, int cbit);
GateOp conditioned(int cbit, int required_value, GateOp inner);

}  // namespace gates

}  // namespace qet
