#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "ovqite/state.hpp"

namespace ovqite {

/// Circuit parameters in radians, indexed in circuit order.
using ParameterVector = Eigen::VectorXd;

/// One element of a parameterized circuit. RY elements take their angle from
/// the parameter vector; all others are fixed gates.
struct CircuitOp {
  Gate gate;
  std::ptrdiff_t param = -1;
};

/// Hardware-efficient ansatz: an RY column, then `layers` repetitions of a
/// CNOT staircase (0,1),(1,2),...,(n-2,n-1) followed by another RY column.
///
/// Parameter k = layer * n + qubit, where layer 0 is the initial column.
class HeaAnsatz {
 public:
  HeaAnsatz(std::size_t num_qubits, std::size_t layers);

  std::size_t num_qubits() const { return n_; }
  std::size_t layers() const { return layers_; }
  std::size_t num_parameters() const { return n_ * (layers_ + 1); }

  const std::vector<CircuitOp>& ops() const { return ops_; }
  /// Index into ops() of the RY driven by parameter p.
  std::size_t op_position(std::size_t p) const { return positions_.at(p); }

  /// Concrete gate sequence for the given parameters.
  std::vector<Gate> gates(const ParameterVector& theta) const;

 private:
  std::size_t n_;
  std::size_t layers_;
  std::vector<CircuitOp> ops_;
  std::vector<std::size_t> positions_;
};

/// Applies ops [first, last) to `state` using angles from `theta`.
void apply_ops(const HeaAnsatz& ansatz, const ParameterVector& theta, StateVector& state,
               std::size_t first, std::size_t last);
/// Applies the inverse of ops [first, last), last op first.
void apply_ops_inverse(const HeaAnsatz& ansatz, const ParameterVector& theta,
                       StateVector& state, std::size_t first, std::size_t last);

/// U(theta)|0...0>.
StateVector prepare_state(const HeaAnsatz& ansatz, const ParameterVector& theta);

/// Uniform draw from [-pi, pi) per parameter.
ParameterVector random_parameters(const HeaAnsatz& ansatz, std::uint64_t seed);

}  // namespace ovqite
