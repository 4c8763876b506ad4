#include "ovqite/ansatz.hpp"

#include <numbers>
#include <random>

#include "ovqite/errors.hpp"
#include "ovqite/rng.hpp"

namespace ovqite {

namespace {

void check_length(const HeaAnsatz& ansatz, const ParameterVector& theta) {
  if (static_cast<std::size_t>(theta.size()) != ansatz.num_parameters()) {
    throw DimensionError("ansatz expects " + std::to_string(ansatz.num_parameters()) +
                         " parameters, got " + std::to_string(theta.size()));
  }
}

Gate bind(const CircuitOp& op, const ParameterVector& theta) {
  Gate g = op.gate;
  if (op.param >= 0) g.angle = theta[op.param];
  return g;
}

}  // namespace

HeaAnsatz::HeaAnsatz(std::size_t num_qubits, std::size_t layers)
    : n_(num_qubits), layers_(layers) {
  if (num_qubits == 0 || num_qubits > StateVector::kMaxQubits) {
    throw ValidationError("ansatz qubit count out of range");
  }
  std::ptrdiff_t param = 0;
  auto ry_column = [&] {
    for (std::size_t q = 0; q < n_; ++q) {
      positions_.push_back(ops_.size());
      ops_.push_back({Gate::ry(q, 0.0), param++});
    }
  };
  ry_column();
  for (std::size_t l = 0; l < layers_; ++l) {
    for (std::size_t q = 0; q + 1 < n_; ++q) ops_.push_back({Gate::cnot(q, q + 1), -1});
    ry_column();
  }
}

std::vector<Gate> HeaAnsatz::gates(const ParameterVector& theta) const {
  check_length(*this, theta);
  std::vector<Gate> out;
  out.reserve(ops_.size());
  for (const auto& op : ops_) out.push_back(bind(op, theta));
  return out;
}

void apply_ops(const HeaAnsatz& ansatz, const ParameterVector& theta, StateVector& state,
               std::size_t first, std::size_t last) {
  const auto& ops = ansatz.ops();
  for (std::size_t k = first; k < last; ++k) state.apply(bind(ops[k], theta));
}

void apply_ops_inverse(const HeaAnsatz& ansatz, const ParameterVector& theta,
                       StateVector& state, std::size_t first, std::size_t last) {
  const auto& ops = ansatz.ops();
  for (std::size_t k = last; k > first; --k) {
    Gate g = bind(ops[k - 1], theta);
    // RY and CNOT are the only ansatz gates; CNOT is self-inverse.
    if (g.kind == Gate::Kind::RY) g.angle = -g.angle;
    state.apply(g);
  }
}

StateVector prepare_state(const HeaAnsatz& ansatz, const ParameterVector& theta) {
  check_length(ansatz, theta);
  StateVector state(ansatz.num_qubits());
  apply_ops(ansatz, theta, state, 0, ansatz.ops().size());
  return state;
}

ParameterVector random_parameters(const HeaAnsatz& ansatz, std::uint64_t seed) {
  RngStream rng = derive_stream(seed, {0x1a17});
  std::uniform_real_distribution<double> dist(-std::numbers::pi, std::numbers::pi);
  ParameterVector theta(static_cast<Eigen::Index>(ansatz.num_parameters()));
  for (Eigen::Index k = 0; k < theta.size(); ++k) theta[k] = dist(rng);
  return theta;
}

}  // namespace ovqite
