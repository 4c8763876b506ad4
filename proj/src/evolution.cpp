#include "ovqite/evolution.hpp"

#include <cmath>
#include <limits>

#include "ovqite/errors.hpp"
#include "ovqite/gradients.hpp"

namespace ovqite {

std::string to_string(SolverKind s) { return s == SolverKind::pinv ? "pinv" : "eiv"; }

double default_rcond(Algorithm algorithm, std::string_view operator_set, bool shot_mode,
                     double h_over_j) {
  const bool critical = h_over_j >= 0.75;
  if (algorithm == Algorithm::vqite) return shot_mode ? 1e-3 : 1e-6;
  if (operator_set == "S_H") return 1e-4;
  if (shot_mode) return critical ? 5e-5 : 1e-4;
  return critical ? 5e-6 : 1e-5;
}

Eigen::VectorXd v_vector(const ExpectationMap& estimates, const PauliSum& h,
                         std::span<const PauliString> set) {
  auto value = [&](const PauliString& p) {
    if (p.is_identity()) return 1.0;
    auto it = estimates.find(p);
    if (it == estimates.end()) {
      throw ValidationError("incomplete estimates: no value for " + p.to_string());
    }
    return it->second;
  };
  double energy = 0.0;
  for (const auto& t : h.terms()) energy += t.coeff.real() * value(t.string);
  Eigen::VectorXd v(static_cast<Eigen::Index>(set.size()));
  for (std::size_t j = 0; j < set.size(); ++j) {
    const PauliSum terms = anticommutator_with_sum(h, set[j]);
    double anti = 0.0;
    for (const auto& t : terms.terms()) anti += t.coeff.real() * value(t.string);
    v[static_cast<Eigen::Index>(j)] = -anti + 2.0 * energy * value(set[j]);
  }
  return v;
}

double ovqite_loss(const StepWorkspace& ws, const Eigen::VectorXd& theta_dot) {
  return 0.5 * theta_dot.dot(ws.G * theta_dot) - theta_dot.dot(ws.b) + ws.loss_constant;
}

OvqitePlan::OvqitePlan(const PauliSum& h, std::vector<PauliString> set,
                       MeasurementStrategy strategy)
    : h_(h), set_(std::move(set)) {
  if (set_.empty()) throw ValidationError("operator set is empty");
  for (const auto& o : set_) {
    if (o.num_qubits() != h.num_qubits()) {
      throw DimensionError("operator set and Hamiltonian act on different qubit counts");
    }
    anticommutators_.push_back(anticommutator_with_sum(h, o));
  }
  m_plan_ = MeasurementPlan(set_, strategy);
  v_plan_ = MeasurementPlan(v_phase_strings(h, set_), strategy);
}

namespace {

/// Shot-noise variance proxy per estimated matrix entry for the EIV solver.
double eiv_noise_variance(std::uint64_t shots) {
  return shots == 0 ? 1e-10 : 1.0 / static_cast<double>(shots);
}

}  // namespace

SolveOutcome solve_step(const Eigen::MatrixXd& g, const Eigen::VectorXd& b, double rcond,
                        const EvolutionConfig& cfg) {
  SolveOutcome out;
  if (cfg.solver == SolverKind::pinv) {
    PinvResult r = pinv_solve(g, b, PinvConfig{rcond});
    out.report = std::move(r.report);
    out.all_truncated = out.report.kept == 0;
    out.theta_dot = out.all_truncated ? Eigen::VectorXd::Zero(g.cols()) : r.x;
    return out;
  }
  const auto m = g.rows();
  const double var = eiv_noise_variance(cfg.shots);
  EivProblem p;
  p.a = g;
  p.b = b;
  p.omega_b = var * Eigen::MatrixXd::Identity(m, m);
  p.omega_a = var * Eigen::MatrixXd::Identity(m * g.cols(), m * g.cols());
  p.lambda = cfg.eiv_lambda;
  const EivResult r = eiv_solve(p);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(g);
  out.theta_dot = r.x;
  out.report.singular_values = svd.singularValues();
  out.report.kept = static_cast<std::size_t>(g.cols());
  out.report.residual = (g * r.x - b).norm();
  return out;
}

StepOutcome ovqite_step(const HeaAnsatz& ansatz, const ParameterVector& theta,
                        const OvqitePlan& plan, const EvolutionConfig& cfg, double rcond,
                        const Estimator& est, CostLedger& ledger) {
  const StateVector state = prepare_state(ansatz, theta);
  const auto& v_strings = plan.v_plan().strings();
  const auto values = plan.v_plan().estimate(state, est, Phase::v, 0);
  ledger.record(Phase::v, plan.v_plan().circuit_count(), est.shots());

  ExpectationMap estimates;
  for (std::size_t k = 0; k < v_strings.size(); ++k) estimates[v_strings[k]] = values[k];
  auto value = [&](const PauliString& p) { return p.is_identity() ? 1.0 : estimates.at(p); };

  StepOutcome out;
  StepWorkspace& ws = out.workspace;
  ws.M = derivative_matrix_M(ansatz, theta, plan.m_plan(), est, ledger);

  double energy = 0.0;
  for (const auto& t : plan.hamiltonian().terms()) energy += t.coeff.real() * value(t.string);
  const auto& set = plan.set();
  ws.v.resize(static_cast<Eigen::Index>(set.size()));
  for (std::size_t j = 0; j < set.size(); ++j) {
    double anti = 0.0;
    for (const auto& t : plan.anticommutators()[j].terms())
      anti += t.coeff.real() * value(t.string);
    ws.v[static_cast<Eigen::Index>(j)] = -anti + 2.0 * energy * value(set[j]);
  }
  ws.G = ws.M.transpose() * ws.M;
  ws.b = ws.M.transpose() * ws.v;
  ws.loss_constant = 0.5 * ws.v.squaredNorm();

  SolveOutcome s = solve_step(ws.G, ws.b, rcond, cfg);
  out.theta_dot = std::move(s.theta_dot);
  out.report = std::move(s.report);
  out.all_truncated = s.all_truncated;
  out.loss = ovqite_loss(ws, out.theta_dot);
  out.theta_next = theta + cfg.delta * out.theta_dot;
  return out;
}

StepOutcome ovqite_step(const HeaAnsatz& ansatz, const ParameterVector& theta,
                        const PauliSum& h, std::span<const PauliString> set,
                        const EvolutionConfig& cfg, double rcond, const Estimator& est,
                        CostLedger& ledger) {
  const OvqitePlan plan(h, std::vector<PauliString>(set.begin(), set.end()), est.strategy());
  return ovqite_step(ansatz, theta, plan, cfg, rcond, est, ledger);
}

StepOutcome vqite_step(const HeaAnsatz& ansatz, const ParameterVector& theta,
                       const PauliSum& h, const EvolutionConfig& cfg, double rcond,
                       const Estimator& est, CostLedger& ledger) {
  StepOutcome out;
  StepWorkspace& ws = out.workspace;
  ws.G = qgt_vqite(ansatz, theta, est, ledger);
  ws.b = energy_gradient_vqite(ansatz, theta, h, est, ledger);
  SolveOutcome s = solve_step(ws.G, ws.b, rcond, cfg);
  out.theta_dot = std::move(s.theta_dot);
  out.report = std::move(s.report);
  out.all_truncated = s.all_truncated;
  out.loss = ovqite_loss(ws, out.theta_dot);
  out.theta_next = theta + cfg.delta * out.theta_dot;
  return out;
}

namespace {

struct EnergyProbe {
  const PauliSum& h;
  MeasurementPlan plan;

  EnergyProbe(const PauliSum& hamiltonian, MeasurementStrategy strategy)
      : h(hamiltonian), plan(strings_of(hamiltonian), strategy) {}

  static std::vector<PauliString> strings_of(const PauliSum& h) {
    std::vector<PauliString> s;
    for (const auto& t : h.terms()) s.push_back(t.string);
    return s;
  }

  /// Exact and estimated energy at `state`; charges Phase::energy.
  std::pair<double, double> measure(const StateVector& state, const Estimator& est,
                                    CostLedger& ledger) const {
    const double exact = expectation_sum(state, h);
    if (est.is_exact()) {
      ledger.record(Phase::energy, plan.circuit_count(), 0);
      return {exact, exact};
    }
    const auto values = plan.estimate(state, est, Phase::energy, 0);
    double e = 0.0;
    for (std::size_t k = 0; k < values.size(); ++k) e += h.terms()[k].coeff.real() * values[k];
    ledger.record(Phase::energy, plan.circuit_count(), est.shots());
    return {exact, e};
  }
};

double relative_error(double e, double e0) {
  if (std::isnan(e0)) return std::numeric_limits<double>::quiet_NaN();
  return std::abs(e - e0) / std::abs(e0);
}

}  // namespace

Trajectory run_evolution(const EvolutionProblem& problem, const EvolutionConfig& cfg,
                         double rcond, std::optional<ParameterVector> initial_theta) {
  if (!(cfg.delta >= 0.0) || !std::isfinite(cfg.delta)) {
    throw ValidationError("imaginary-time step must be non-negative");
  }
  const HeaAnsatz& ansatz = problem.ansatz;
  const PauliSum& h = problem.hamiltonian;
  if (h.num_qubits() != ansatz.num_qubits()) {
    throw DimensionError("Hamiltonian and ansatz act on different qubit counts");
  }

  const Estimator base = cfg.shots == 0
                             ? Estimator::exact(cfg.measurement)
                             : Estimator::sampled(cfg.shots, cfg.seed, cfg.measurement);
  std::optional<OvqitePlan> plan;
  if (cfg.algorithm == Algorithm::ovqite) plan.emplace(h, problem.operator_set, cfg.measurement);
  const EnergyProbe probe(h, cfg.measurement);

  Trajectory traj;
  traj.ground_energy = problem.ground_energy;
  traj.rcond = rcond;
  traj.initial_theta = initial_theta ? *initial_theta : random_parameters(ansatz, cfg.seed);
  if (static_cast<std::size_t>(traj.initial_theta.size()) != ansatz.num_parameters()) {
    throw DimensionError("initial parameters do not match the ansatz");
  }

  CostLedger ledger;
  ParameterVector theta = traj.initial_theta;
  {
    CostLedger before = ledger;
    const auto [exact, estimated] =
        probe.measure(prepare_state(ansatz, theta), base.at_step(0), ledger);
    StepRecord& r = traj.initial;
    r.energy_exact = exact;
    r.energy_estimated = estimated;
    r.rel_error = relative_error(exact, problem.ground_energy);
    r.step_cost = ledger.since(before);
    r.cumulative = ledger;
  }

  traj.records.reserve(cfg.steps);
  for (std::size_t k = 1; k <= cfg.steps; ++k) {
    const Estimator est = base.at_step(k);
    const CostLedger before = ledger;
    StepOutcome step;
    try {
      step = cfg.algorithm == Algorithm::ovqite
                 ? ovqite_step(ansatz, theta, *plan, cfg, rcond, est, ledger)
                 : vqite_step(ansatz, theta, h, cfg, rcond, est, ledger);
    } catch (const SolverError& e) {
      traj.aborted = "step " + std::to_string(k) + ": " + e.what();
      break;
    }
    theta = step.theta_next;

    StepRecord r;
    r.step = k;
    r.tau = static_cast<double>(k) * cfg.delta;
    const auto [exact, estimated] = probe.measure(prepare_state(ansatz, theta), est, ledger);
    r.energy_exact = exact;
    r.energy_estimated = estimated;
    r.rel_error = relative_error(exact, problem.ground_energy);
    r.loss = step.loss;
    r.solve = std::move(step.report);
    r.all_truncated = step.all_truncated;
    r.step_cost = ledger.since(before);
    r.cumulative = ledger;
    traj.records.push_back(std::move(r));
  }
  traj.final_theta = theta;
  return traj;
}

namespace {

/// exp(-tau H) psi0 via the spectral decomposition, shifted by the lowest
/// eigenvalue so large tau neither overflows nor underflows.
class ImaginaryTimePropagator {
 public:
  ImaginaryTimePropagator(const PauliSum& h, const StateVector& initial) {
    if (h.num_qubits() > kMaxIteQubits) {
      throw CapabilityError("exact imaginary-time evolution limited to " +
                            std::to_string(kMaxIteQubits) + " qubits");
    }
    if (h.num_qubits() != initial.num_qubits()) {
      throw DimensionError("Hamiltonian and state act on different qubit counts");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(dense_matrix(h));
    values_ = es.eigenvalues();
    vectors_ = es.eigenvectors();
    const auto amps = initial.amplitudes();
    Eigen::VectorXcd psi0(static_cast<Eigen::Index>(amps.size()));
    for (std::size_t i = 0; i < amps.size(); ++i) psi0[static_cast<Eigen::Index>(i)] = amps[i];
    coeffs_ = vectors_.adjoint() * psi0;
  }

  StateVector at(double tau) const {
    const double e0 = values_(0);
    Eigen::VectorXcd c = coeffs_;
    for (Eigen::Index k = 0; k < c.size(); ++k) c[k] *= std::exp(-tau * (values_(k) - e0));
    Eigen::VectorXcd psi = vectors_ * c;
    psi /= psi.norm();
    return StateVector::from_amplitudes(std::vector<Amplitude>(psi.data(), psi.data() + psi.size()));
  }

 private:
  Eigen::VectorXd values_;
  Eigen::MatrixXcd vectors_;
  Eigen::VectorXcd coeffs_;
};

}  // namespace

StateVector exact_ite_state(const PauliSum& h, const StateVector& initial, double tau) {
  return ImaginaryTimePropagator(h, initial).at(tau);
}

Eigen::MatrixXd exact_ite_oracle(const PauliSum& h, const StateVector& initial,
                                 std::span<const double> taus,
                                 std::span<const PauliString> queries) {
  const ImaginaryTimePropagator prop(h, initial);
  Eigen::MatrixXd out(static_cast<Eigen::Index>(taus.size()),
                      static_cast<Eigen::Index>(queries.size()));
  for (std::size_t t = 0; t < taus.size(); ++t) {
    if (taus[t] < 0.0) throw ValidationError("imaginary time must be non-negative");
    const StateVector s = prop.at(taus[t]);
    for (std::size_t q = 0; q < queries.size(); ++q)
      out(static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(q)) = expectation(s, queries[q]);
  }
  return out;
}

}  // namespace ovqite
