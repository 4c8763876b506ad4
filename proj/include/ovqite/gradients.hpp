#pragma once

#include <cstddef>
#include <numbers>
#include <span>

#include <Eigen/Dense>

#include "ovqite/ansatz.hpp"
#include "ovqite/measurement.hpp"
#include "ovqite/pauli.hpp"

namespace ovqite {

/// Parameter-shift offset. With RY(a) = exp(-i a Y / 2) the rule
/// (f(t+s) - f(t-s)) / (2 sin s) is exact for any s != k*pi.
inline constexpr double kShift = std::numbers::pi / 2;

/// d<O>/d theta_j from two shifted circuits.
double psr_derivative(const HeaAnsatz& ansatz, const ParameterVector& theta, std::size_t j,
                      const PauliString& o, const Estimator& est);

/// M_ij = d<O_i>/d theta_j for every member of `plan`, via the shift rule.
/// Charges 2 N circuits per group to Phase::M.
Eigen::MatrixXd derivative_matrix_M(const HeaAnsatz& ansatz, const ParameterVector& theta,
                                    const MeasurementPlan& plan, const Estimator& est,
                                    CostLedger& ledger);
Eigen::MatrixXd derivative_matrix_M(const HeaAnsatz& ansatz, const ParameterVector& theta,
                                    std::span<const PauliString> set, const Estimator& est,
                                    CostLedger& ledger);

/// |<psi(theta)|psi(theta')>|^2, measured as the all-zeros probability of
/// U^dagger(theta') U(theta)|0>.
double survival_probability(const HeaAnsatz& ansatz, const ParameterVector& theta,
                            const ParameterVector& theta_prime, const Estimator& est);

/// Real part of the quantum geometric tensor from shifted survival
/// probabilities: G_ij = -(F(++) - F(+-) - F(-+) + F(--)) / 8. Only i <= j is
/// evaluated and mirrored; charges 4 circuits per pair to Phase::G.
Eigen::MatrixXd qgt_vqite(const HeaAnsatz& ansatz, const ParameterVector& theta,
                          const Estimator& est, CostLedger& ledger);

/// -grad <H> from the shift rule applied to each Hamiltonian group. Charges
/// 2 N C_H circuits to Phase::b.
Eigen::VectorXd energy_gradient_vqite(const HeaAnsatz& ansatz, const ParameterVector& theta,
                                      const PauliSum& h, const Estimator& est,
                                      CostLedger& ledger);

}  // namespace ovqite
