#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ovqite/ansatz.hpp"
#include "ovqite/linear_solver.hpp"
#include "ovqite/measurement.hpp"
#include "ovqite/pauli.hpp"
#include "ovqite/state.hpp"
#include "ovqite/tfim.hpp"

namespace ovqite {

enum class SolverKind { pinv, eiv };
std::string to_string(SolverKind s);

struct EvolutionConfig {
  Algorithm algorithm = Algorithm::ovqite;
  std::string operator_set = "S_H";  // ignored by VQITE
  double delta = 0.02;
  std::size_t steps = 150;
  /// Shots per circuit; 0 selects exact expectation values.
  std::uint64_t shots = 0;
  /// Unset: the tuned default for (algorithm, set, mode, h/J).
  std::optional<double> rcond;
  SolverKind solver = SolverKind::pinv;
  /// Prior variance used by the error-in-variables solver.
  double eiv_lambda = 1.0;
  MeasurementStrategy measurement = MeasurementStrategy::grouped;
  std::uint64_t seed = 1;
};

/// Tuned cutoffs for the 10-qubit TFIM benchmark. S_NN and other sets fall
/// back to the S_IM row; h/J >= 0.75 selects the critical-regime row.
double default_rcond(Algorithm algorithm, std::string_view operator_set, bool shot_mode,
                     double h_over_j);

/// Per-step linear-system ingredients.
struct StepWorkspace {
  Eigen::MatrixXd M;  // |S| x N (OVQITE only)
  Eigen::VectorXd v;  // |S|    (OVQITE only)
  Eigen::MatrixXd G;
  Eigen::VectorXd b;
  double loss_constant = 0.0;  // (1/2) sum v^2; zero for VQITE
};

struct StepOutcome {
  ParameterVector theta_next;
  Eigen::VectorXd theta_dot;
  StepWorkspace workspace;
  SolveReport report;
  /// (1/2) thetadot.G.thetadot - thetadot.b + loss_constant
  double loss = 0.0;
  /// Every singular value fell below the cutoff; the step left theta unchanged.
  bool all_truncated = false;
};

/// V(O) = -<{H, O}> + 2 <H> <O> for every member of `set`, from estimates
/// of every string involved. Throws ValidationError on a missing estimate.
Eigen::VectorXd v_vector(const ExpectationMap& estimates, const PauliSum& h,
                         std::span<const PauliString> set);

/// Loss (1/2) sum_O |thetadot . grad<O> - V(O)|^2 expanded as a quadratic form.
double ovqite_loss(const StepWorkspace& ws, const Eigen::VectorXd& theta_dot);

/// Measurement plans for one (Hamiltonian, operator set) pair, built once per run.
class OvqitePlan {
 public:
  OvqitePlan(const PauliSum& h, std::vector<PauliString> set, MeasurementStrategy strategy);

  const PauliSum& hamiltonian() const { return h_; }
  const std::vector<PauliString>& set() const { return set_; }
  const MeasurementPlan& m_plan() const { return m_plan_; }
  const MeasurementPlan& v_plan() const { return v_plan_; }
  const std::vector<PauliSum>& anticommutators() const { return anticommutators_; }

 private:
  PauliSum h_;
  std::vector<PauliString> set_;
  std::vector<PauliSum> anticommutators_;
  MeasurementPlan m_plan_;
  MeasurementPlan v_plan_;
};

/// Solves G thetadot = b with the configured solver.
struct SolveOutcome {
  Eigen::VectorXd theta_dot;
  SolveReport report;
  bool all_truncated = false;
};
SolveOutcome solve_step(const Eigen::MatrixXd& g, const Eigen::VectorXd& b, double rcond,
                        const EvolutionConfig& cfg);

StepOutcome ovqite_step(const HeaAnsatz& ansatz, const ParameterVector& theta,
                        const OvqitePlan& plan, const EvolutionConfig& cfg, double rcond,
                        const Estimator& est, CostLedger& ledger);
StepOutcome ovqite_step(const HeaAnsatz& ansatz, const ParameterVector& theta,
                        const PauliSum& h, std::span<const PauliString> set,
                        const EvolutionConfig& cfg, double rcond, const Estimator& est,
                        CostLedger& ledger);

StepOutcome vqite_step(const HeaAnsatz& ansatz, const ParameterVector& theta,
                       const PauliSum& h, const EvolutionConfig& cfg, double rcond,
                       const Estimator& est, CostLedger& ledger);

struct StepRecord {
  std::size_t step = 0;
  double tau = 0.0;
  double energy_exact = 0.0;
  double energy_estimated = 0.0;
  double rel_error = 0.0;  // |E - E0| / |E0| from the exact energy
  double loss = 0.0;
  SolveReport solve;
  bool all_truncated = false;
  CostLedger step_cost;
  CostLedger cumulative;
};

struct Trajectory {
  double ground_energy = 0.0;
  double rcond = 0.0;
  /// State at tau = 0 before any step.
  StepRecord initial;
  /// One record per completed step, tau_k = k delta for k = 1..steps.
  std::vector<StepRecord> records;
  ParameterVector initial_theta;
  ParameterVector final_theta;
  /// Set when a solver failure cut the run short.
  std::optional<std::string> aborted;

  const StepRecord& last() const { return records.empty() ? initial : records.back(); }
};

/// Everything a run needs besides the configuration.
struct EvolutionProblem {
  PauliSum hamiltonian;
  HeaAnsatz ansatz;
  /// Members used by OVQITE.
  std::vector<PauliString> operator_set;
  /// Reference for the relative error; NaN disables it.
  double ground_energy = 0.0;
};

/// Iterates the configured step from `initial_theta`, or from a seeded
/// uniform draw in [-pi, pi) when it is not given.
Trajectory run_evolution(const EvolutionProblem& problem, const EvolutionConfig& cfg,
                         double rcond, std::optional<ParameterVector> initial_theta = {});

/// <O_q> in the normalized state exp(-tau H)|psi0> for every tau and query
/// operator; rows follow `taus`, columns follow `queries`.
Eigen::MatrixXd exact_ite_oracle(const PauliSum& h, const StateVector& initial,
                                 std::span<const double> taus,
                                 std::span<const PauliString> queries);

/// The normalized imaginary-time-evolved state itself.
StateVector exact_ite_state(const PauliSum& h, const StateVector& initial, double tau);

inline constexpr std::size_t kMaxIteQubits = 10;

}  // namespace ovqite
