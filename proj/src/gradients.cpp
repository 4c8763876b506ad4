#include "ovqite/gradients.hpp"

#include <array>
#include <cmath>

#include "ovqite/errors.hpp"

namespace ovqite {

namespace {

void check_theta(const HeaAnsatz& ansatz, const ParameterVector& theta) {
  if (static_cast<std::size_t>(theta.size()) != ansatz.num_parameters()) {
    throw DimensionError("parameter vector length does not match the ansatz");
  }
}

/// prefix[p] is the state just before the RY of parameter p.
std::vector<StateVector> prefix_states(const HeaAnsatz& ansatz, const ParameterVector& theta) {
  std::vector<StateVector> prefix;
  prefix.reserve(ansatz.num_parameters());
  StateVector s(ansatz.num_qubits());
  std::size_t done = 0;
  for (std::size_t p = 0; p < ansatz.num_parameters(); ++p) {
    const std::size_t pos = ansatz.op_position(p);
    apply_ops(ansatz, theta, s, done, pos);
    done = pos;
    prefix.push_back(s);
  }
  return prefix;
}

/// U(theta + offset e_j)|0>, resumed from the cached prefix.
StateVector shifted_state(const HeaAnsatz& ansatz, const ParameterVector& theta,
                          const std::vector<StateVector>& prefix, std::size_t j,
                          double offset) {
  StateVector s = prefix[j];
  const std::size_t pos = ansatz.op_position(j);
  s.apply(Gate::ry(ansatz.ops()[pos].gate.target, theta[j] + offset));
  apply_ops(ansatz, theta, s, pos + 1, ansatz.ops().size());
  return s;
}

double weighted_energy(const PauliSum& h, std::span<const double> values) {
  double e = 0.0;
  for (std::size_t k = 0; k < h.terms().size(); ++k) e += h.terms()[k].coeff.real() * values[k];
  return e;
}

double measured_probability(double p, const Estimator& est, RngStream rng) {
  if (est.is_exact()) return p;
  return static_cast<double>(sample_outcome_count(p, est.shots(), rng)) /
         static_cast<double>(est.shots());
}

}  // namespace

double psr_derivative(const HeaAnsatz& ansatz, const ParameterVector& theta, std::size_t j,
                      const PauliString& o, const Estimator& est) {
  check_theta(ansatz, theta);
  if (j >= ansatz.num_parameters()) throw ValidationError("parameter index out of range");
  const MeasurementPlan plan({o}, est.strategy());
  double value[2];
  for (int k = 0; k < 2; ++k) {
    ParameterVector shifted = theta;
    shifted[j] += k == 0 ? kShift : -kShift;
    value[k] = plan.estimate(prepare_state(ansatz, shifted), est, Phase::M, 2 * j + k)[0];
  }
  return (value[0] - value[1]) / (2.0 * std::sin(kShift));
}

Eigen::MatrixXd derivative_matrix_M(const HeaAnsatz& ansatz, const ParameterVector& theta,
                                    const MeasurementPlan& plan, const Estimator& est,
                                    CostLedger& ledger) {
  check_theta(ansatz, theta);
  if (plan.strings().empty()) throw ValidationError("operator set is empty");
  const std::size_t n_params = ansatz.num_parameters();
  const auto rows = static_cast<Eigen::Index>(plan.strings().size());
  Eigen::MatrixXd m(rows, static_cast<Eigen::Index>(n_params));
  const auto prefix = prefix_states(ansatz, theta);
  const double scale = 1.0 / (2.0 * std::sin(kShift));

#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t jj = 0; jj < static_cast<std::ptrdiff_t>(n_params); ++jj) {
    const auto j = static_cast<std::size_t>(jj);
    const auto plus =
        plan.estimate(shifted_state(ansatz, theta, prefix, j, kShift), est, Phase::M, 2 * j);
    const auto minus = plan.estimate(shifted_state(ansatz, theta, prefix, j, -kShift), est,
                                     Phase::M, 2 * j + 1);
    for (Eigen::Index i = 0; i < rows; ++i) m(i, jj) = scale * (plus[i] - minus[i]);
  }
  ledger.record(Phase::M, 2 * n_params * plan.circuit_count(), est.shots());
  return m;
}

Eigen::MatrixXd derivative_matrix_M(const HeaAnsatz& ansatz, const ParameterVector& theta,
                                    std::span<const PauliString> set, const Estimator& est,
                                    CostLedger& ledger) {
  const MeasurementPlan plan(std::vector<PauliString>(set.begin(), set.end()),
                             est.strategy());
  return derivative_matrix_M(ansatz, theta, plan, est, ledger);
}

double survival_probability(const HeaAnsatz& ansatz, const ParameterVector& theta,
                            const ParameterVector& theta_prime, const Estimator& est) {
  check_theta(ansatz, theta);
  check_theta(ansatz, theta_prime);
  StateVector s = prepare_state(ansatz, theta);
  apply_ops_inverse(ansatz, theta_prime, s, 0, ansatz.ops().size());
  if (est.is_exact()) return std::norm(s[0]);
  RngStream rng = est.stream(Phase::G, ~std::uint64_t{0});
  const Counts counts = sample_bitstrings(s, est.shots(), rng);
  return static_cast<double>(counts[0]) / static_cast<double>(est.shots());
}

Eigen::MatrixXd qgt_vqite(const HeaAnsatz& ansatz, const ParameterVector& theta,
                          const Estimator& est, CostLedger& ledger) {
  check_theta(ansatz, theta);
  const std::size_t n_params = ansatz.num_parameters();
  const std::size_t n_ops = ansatz.ops().size();
  const auto prefix = prefix_states(ansatz, theta);

  // bra[p] = U_{>p}^dagger |psi(theta)>, where U_{>p} is everything after the
  // RY of parameter p. Then <psi(theta)|U_{>p} R K> = <bra[p]|R K>, so every
  // doubly shifted overlap costs one forward sweep per (i, sign).
  std::vector<StateVector> bra(n_params, StateVector(ansatz.num_qubits()));
  {
    StateVector psi = prefix.back();
    apply_ops(ansatz, theta, psi, ansatz.op_position(n_params - 1), n_ops);
    StateVector s = psi;
    std::size_t hi = n_ops;
    for (std::size_t p = n_params; p-- > 0;) {
      const std::size_t pos = ansatz.op_position(p);
      apply_ops_inverse(ansatz, theta, s, pos + 1, hi);
      hi = pos + 1;
      bra[p] = s;
    }
  }

  // F[i][j][code], code = 2*(a<0) + (b<0).
  const auto idx = [n_params](std::size_t i, std::size_t j) { return i * n_params + j; };
  std::vector<std::array<double, 4>> overlap(n_params * n_params);

  const auto ry_at = [&](std::size_t p, double angle) {
    return Gate::ry(ansatz.ops()[ansatz.op_position(p)].gate.target, angle);
  };

#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t task = 0; task < static_cast<std::ptrdiff_t>(2 * n_params); ++task) {
    const auto i = static_cast<std::size_t>(task / 2);
    const int a_neg = static_cast<int>(task % 2);
    const double a = a_neg ? -kShift : kShift;

    // Diagonal pair: shifts combine to +-2s on the same parameter, and the
    // two mixed terms are the unshifted overlap.
    {
      StateVector k = prefix[i];
      k.apply(ry_at(i, theta[i] + 2.0 * a));
      const double f = std::norm(bra[i].inner(k));
      auto& cell = overlap[idx(i, i)];
      cell[a_neg ? 3 : 0] = measured_probability(f, est, est.stream(Phase::G, i, i, a_neg ? 3 : 0));
      if (!a_neg) {
        cell[1] = measured_probability(1.0, est, est.stream(Phase::G, i, i, 1));
      } else {
        cell[2] = measured_probability(1.0, est, est.stream(Phase::G, i, i, 2));
      }
    }

    StateVector ket = prefix[i];
    ket.apply(ry_at(i, theta[i] + a));
    std::size_t done = ansatz.op_position(i) + 1;
    for (std::size_t j = i + 1; j < n_params; ++j) {
      const std::size_t pos = ansatz.op_position(j);
      apply_ops(ansatz, theta, ket, done, pos);
      done = pos + 1;
      for (int b_neg = 0; b_neg < 2; ++b_neg) {
        StateVector k = ket;
        k.apply(ry_at(j, theta[j] + (b_neg ? -kShift : kShift)));
        const double f = std::norm(bra[j].inner(k));
        const int code = 2 * a_neg + b_neg;
        overlap[idx(i, j)][code] =
            measured_probability(f, est, est.stream(Phase::G, i, j, code));
      }
      ket.apply(ry_at(j, theta[j]));
    }
  }

  Eigen::MatrixXd g(static_cast<Eigen::Index>(n_params), static_cast<Eigen::Index>(n_params));
  for (std::size_t i = 0; i < n_params; ++i) {
    for (std::size_t j = i; j < n_params; ++j) {
      const auto& f = overlap[idx(i, j)];
      const double v = -(f[0] - f[1] - f[2] + f[3]) / 8.0;
      g(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = v;
      g(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = v;
    }
  }
  ledger.record(Phase::G, 4 * (n_params * (n_params + 1) / 2), est.shots());
  return g;
}

Eigen::VectorXd energy_gradient_vqite(const HeaAnsatz& ansatz, const ParameterVector& theta,
                                      const PauliSum& h, const Estimator& est,
                                      CostLedger& ledger) {
  check_theta(ansatz, theta);
  if (!h.empty() && h.num_qubits() != ansatz.num_qubits()) {
    throw DimensionError("Hamiltonian and ansatz act on different qubit counts");
  }
  if (!h.is_hermitian()) throw ValidationError("Hamiltonian is not Hermitian");
  std::vector<PauliString> strings;
  for (const auto& t : h.terms()) strings.push_back(t.string);
  const MeasurementPlan plan(std::move(strings), est.strategy());

  const std::size_t n_params = ansatz.num_parameters();
  const auto prefix = prefix_states(ansatz, theta);
  const double scale = 1.0 / (2.0 * std::sin(kShift));
  Eigen::VectorXd b(static_cast<Eigen::Index>(n_params));

#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t jj = 0; jj < static_cast<std::ptrdiff_t>(n_params); ++jj) {
    const auto j = static_cast<std::size_t>(jj);
    const double e_plus = weighted_energy(
        h, plan.estimate(shifted_state(ansatz, theta, prefix, j, kShift), est, Phase::b, 2 * j));
    const double e_minus = weighted_energy(
        h, plan.estimate(shifted_state(ansatz, theta, prefix, j, -kShift), est, Phase::b,
                         2 * j + 1));
    b[jj] = -scale * (e_plus - e_minus);
  }
  ledger.record(Phase::b, 2 * n_params * plan.circuit_count(), est.shots());
  return b;
}

}  // namespace ovqite
