#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "ovqite/ansatz.hpp"
#include "ovqite/pauli.hpp"
#include "ovqite/rng.hpp"
#include "ovqite/state.hpp"

namespace ovqite {

enum class Algorithm { vqite, ovqite };
enum class MeasurementStrategy { naive, grouped };

std::string to_string(Algorithm a);
std::string to_string(MeasurementStrategy s);

/// Pauli strings measured together after one local basis change.
struct MeasurementGroup {
  std::vector<PauliString> members;
  /// Per qubit, the non-identity letter shared by the members (or I).
  PauliString basis;
};

/// Greedy first-fit in input order: a string joins the first group whose
/// members it all qubit-wise commutes with, otherwise it opens a new group.
std::vector<MeasurementGroup> group_qubit_wise(std::span<const PauliString> paulis);
/// One group per string.
std::vector<MeasurementGroup> group_individually(std::span<const PauliString> paulis);

/// Gates V with V P V^dagger diagonal for every member: X -> H, Y -> SDG then H.
std::vector<Gate> basis_rotation(const MeasurementGroup& group);

/// Cost categories of one evolution step.
enum class Phase : std::uint8_t { M = 0, v = 1, G = 2, b = 3, energy = 4 };
inline constexpr std::size_t kPhaseCount = 5;
std::string to_string(Phase p);

/// Circuit and shot accounting. Measurements = shots summed over circuits.
class CostLedger {
 public:
  void record(Phase phase, std::uint64_t circuits, std::uint64_t shots_per_circuit);

  std::uint64_t circuits(Phase p) const { return circuits_[static_cast<std::size_t>(p)]; }
  std::uint64_t shots(Phase p) const { return shots_[static_cast<std::size_t>(p)]; }
  std::uint64_t circuits_total() const;
  std::uint64_t shots_total() const;
  std::uint64_t measurements() const { return shots_total(); }

  /// Counts accumulated since `earlier` (a snapshot of this ledger).
  CostLedger since(const CostLedger& earlier) const;

  friend bool operator==(const CostLedger&, const CostLedger&) = default;

 private:
  std::array<std::uint64_t, kPhaseCount> circuits_{};
  std::array<std::uint64_t, kPhaseCount> shots_{};
};

/// How expectation values are obtained: exactly from the statevector, or by
/// sampling `shots` outcomes per circuit. Each sampled circuit draws from its
/// own stream keyed by (seed, step, phase, circuit coordinates), so results do
/// not depend on evaluation order or thread count.
class Estimator {
 public:
  static Estimator exact(MeasurementStrategy strategy = MeasurementStrategy::grouped);
  static Estimator sampled(std::uint64_t shots, std::uint64_t seed,
                           MeasurementStrategy strategy = MeasurementStrategy::grouped);

  bool is_exact() const { return shots_ == 0; }
  /// Zero in exact mode.
  std::uint64_t shots() const { return shots_; }
  std::uint64_t seed() const { return seed_; }
  std::uint64_t step() const { return step_; }
  MeasurementStrategy strategy() const { return strategy_; }

  Estimator at_step(std::uint64_t step) const;
  RngStream stream(Phase phase, std::uint64_t a, std::uint64_t b = 0,
                   std::uint64_t c = 0) const;

 private:
  std::uint64_t shots_ = 0;
  std::uint64_t seed_ = 0;
  std::uint64_t step_ = 0;
  MeasurementStrategy strategy_ = MeasurementStrategy::grouped;
};

using ExpectationMap = std::unordered_map<PauliString, double, PauliStringHash>;

/// Rotates, samples `shots` outcomes and returns the parity average of every member.
ExpectationMap estimate_group(const StateVector& state, const MeasurementGroup& group,
                              std::uint64_t shots, RngStream& rng);
/// Infinite-shot limit of estimate_group: the exact rotated distribution
/// replaces the sampled histogram.
ExpectationMap estimate_group_exact(const StateVector& state, const MeasurementGroup& group);

/// A fixed list of strings together with its measurement groups. Identity
/// strings need no circuit and always evaluate to 1.
class MeasurementPlan {
 public:
  MeasurementPlan() = default;
  MeasurementPlan(std::vector<PauliString> strings, MeasurementStrategy strategy);

  const std::vector<PauliString>& strings() const { return strings_; }
  const std::vector<MeasurementGroup>& groups() const { return groups_; }
  std::size_t circuit_count() const { return groups_.size(); }

  /// Values aligned with strings(). Sampled mode draws group g from
  /// est.stream(phase, key, g).
  std::vector<double> estimate(const StateVector& state, const Estimator& est, Phase phase,
                               std::uint64_t key) const;

 private:
  struct Slot {
    std::size_t group;
    std::uint64_t parity_mask;
  };
  std::vector<PauliString> strings_;
  std::vector<MeasurementGroup> groups_;
  std::vector<std::vector<Gate>> rotations_;
  std::vector<Slot> slots_;  // per string; group == npos for identity
};

/// Prepares U(theta)|0>, estimates every string once and charges one circuit
/// per group (or per string when naive) to `phase`.
ExpectationMap estimate_expectations(const HeaAnsatz& ansatz, const ParameterVector& theta,
                                     std::span<const PauliString> paulis, const Estimator& est,
                                     CostLedger& ledger, Phase phase = Phase::v);

/// Distinct non-identity strings whose expectations the OVQITE v vector needs:
/// the set members, the Hamiltonian strings, then every anticommutator term.
std::vector<PauliString> v_phase_strings(const PauliSum& h, std::span<const PauliString> set);

/// Static circuit counts of one evolution step, per phase.
struct CircuitCounts {
  std::uint64_t M = 0;
  std::uint64_t v = 0;
  std::uint64_t G = 0;
  std::uint64_t b = 0;
  std::uint64_t energy = 0;

  std::uint64_t total() const { return M + v + G + b + energy; }
};

/// VQITE: G = 4 N(N+1)/2 overlap circuits, b = 2 N C_H, energy = C_H.
/// OVQITE: M = 2 N C_S, v = C over v_phase_strings, energy = C_H.
/// C_X is the group count (grouped) or the string count (naive).
CircuitCounts count_circuits(Algorithm algorithm, const PauliSum& h,
                             std::span<const PauliString> set, std::size_t num_parameters,
                             MeasurementStrategy strategy);

}  // namespace ovqite
