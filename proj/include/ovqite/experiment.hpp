#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ovqite/config.hpp"
#include "ovqite/evolution.hpp"
#include "ovqite/measurement.hpp"

namespace ovqite {

/// Builds the TFIM problem a configuration describes, including the dense
/// ground energy when the chain is small enough (NaN otherwise).
EvolutionProblem make_problem(const ExperimentConfig& cfg);

/// rcond from the config, or the tuned default.
double resolve_rcond(const ExperimentConfig& cfg);

Trajectory run_experiment(const ExperimentConfig& cfg);

/// Limits OpenMP to `threads` workers; 0 leaves the runtime default alone.
void set_thread_count(std::size_t threads);

void write_trajectory_csv(std::ostream& out, const Trajectory& traj, const ExperimentConfig& cfg);
void write_ledger_csv(std::ostream& out, const Trajectory& traj, const ExperimentConfig& cfg);
void write_summary_json(std::ostream& out, const Trajectory& traj, const ExperimentConfig& cfg);

/// Writes trajectory.csv, ledger.csv and summary.json under cfg.output_path.
void write_run_outputs(const Trajectory& traj, const ExperimentConfig& cfg);

/// Cumulative measurements at the first step whose relative error is at
/// most `target`; the initial state counts as step 0.
std::optional<std::uint64_t> measurements_to_target(const Trajectory& traj, double target);

/// Distinct non-identity strings produced by the anticommutators {H, O}.
std::vector<PauliString> anticommutator_strings(const PauliSum& h,
                                                std::span<const PauliString> set);

struct ScalingRow {
  std::size_t n = 0;
  Algorithm algorithm = Algorithm::ovqite;
  std::string operator_set;  // "-" for VQITE
  MeasurementStrategy strategy = MeasurementStrategy::grouped;
  std::size_t num_parameters = 0;
  std::uint64_t set_circuits = 0;            // C_S
  std::uint64_t hamiltonian_circuits = 0;    // C_H
  std::uint64_t anticommutator_circuits = 0; // circuits for the {H, O} strings alone
  CircuitCounts per_step;
  std::uint64_t measurements_per_step = 0;   // shots * per_step.total()
  double measurements_per_qubit = 0.0;
};

struct ScalingOptions {
  std::size_t n_min = 4;
  std::size_t n_max = 12;
  std::size_t layers = 5;
  std::uint64_t shots = 10000;
  bool periodic = true;
  std::vector<std::string> operator_sets{"S_H", "S_IM"};
};

/// One row per (n, algorithm/set, strategy).
std::vector<ScalingRow> scaling_table(const ScalingOptions& opt);
void write_scaling_csv(std::ostream& out, const std::vector<ScalingRow>& rows);

/// An algorithm plus, for OVQITE, its operator set: "vqite" or "ovqite:S_H".
struct Variant {
  Algorithm algorithm = Algorithm::ovqite;
  std::string operator_set = "S_H";
  std::string label() const;
};
Variant parse_variant(std::string_view text);

struct SweepRow {
  Variant variant;
  std::uint64_t shots = 0;
  std::uint64_t seed = 0;
  std::optional<std::uint64_t> measurements;  // unset: target not reached
  double final_rel_error = 0.0;
  std::uint64_t total_measurements = 0;
};

struct SweepOptions {
  std::vector<Variant> variants;
  std::vector<std::uint64_t> shots;
  std::vector<std::uint64_t> seeds;
  double target = 5e-2;
};

std::vector<SweepRow> sweep(const ExperimentConfig& base, const SweepOptions& opt);
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows, double target,
                     const ExperimentConfig& base);

inline constexpr const char* kNotReached = "not reached";

}  // namespace ovqite
