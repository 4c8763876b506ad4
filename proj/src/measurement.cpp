#include "ovqite/measurement.hpp"

#include <bit>
#include <unordered_set>

#include "ovqite/errors.hpp"

namespace ovqite {

std::string to_string(Algorithm a) { return a == Algorithm::vqite ? "vqite" : "ovqite"; }

std::string to_string(MeasurementStrategy s) {
  return s == MeasurementStrategy::naive ? "naive" : "grouped";
}

std::string to_string(Phase p) {
  switch (p) {
    case Phase::M: return "M";
    case Phase::v: return "v";
    case Phase::G: return "G";
    case Phase::b: return "b";
    case Phase::energy: return "energy";
  }
  return "?";
}

namespace {

void require_uniform_size(std::span<const PauliString> paulis) {
  for (const auto& p : paulis) {
    if (p.num_qubits() != paulis.front().num_qubits()) {
      throw DimensionError("strings to group act on different qubit counts");
    }
  }
}

PauliString join_letter(PauliString basis, const PauliString& p) {
  std::vector<Pauli> letters = basis.letters();
  for (std::size_t q = 0; q < letters.size(); ++q)
    if (p[q] != Pauli::I) letters[q] = p[q];
  return PauliString(std::move(letters));
}

std::uint64_t support_mask(const PauliString& p) { return p.x_mask() | p.z_mask(); }

double parity_average(std::span<const double> weights, std::uint64_t mask) {
  double acc = 0.0;
  for (std::size_t b = 0; b < weights.size(); ++b)
    acc += (std::popcount(b & mask) & 1) ? -weights[b] : weights[b];
  return acc;
}

StateVector rotated(const StateVector& state, const std::vector<Gate>& rotation) {
  StateVector out = state;
  for (const auto& g : rotation) out.apply(g);
  return out;
}

ExpectationMap estimate_from_weights(const MeasurementGroup& group,
                                     std::span<const double> weights) {
  ExpectationMap out;
  for (const auto& p : group.members) out[p] = parity_average(weights, support_mask(p));
  return out;
}

}  // namespace

std::vector<MeasurementGroup> group_qubit_wise(std::span<const PauliString> paulis) {
  std::vector<MeasurementGroup> groups;
  if (paulis.empty()) return groups;
  require_uniform_size(paulis);
  for (const auto& p : paulis) {
    bool placed = false;
    for (auto& g : groups) {
      // The basis is the letter-wise join of the members, so testing against
      // it is equivalent to testing against every member.
      if (qubit_wise_commutes(p.canonical(), g.basis)) {
        g.members.push_back(p);
        g.basis = join_letter(g.basis, p);
        placed = true;
        break;
      }
    }
    if (!placed) {
      groups.push_back({{p}, join_letter(PauliString::identity(p.num_qubits()), p)});
    }
  }
  return groups;
}

std::vector<MeasurementGroup> group_individually(std::span<const PauliString> paulis) {
  std::vector<MeasurementGroup> groups;
  groups.reserve(paulis.size());
  for (const auto& p : paulis) {
    groups.push_back({{p}, join_letter(PauliString::identity(p.num_qubits()), p)});
  }
  return groups;
}

std::vector<Gate> basis_rotation(const MeasurementGroup& group) {
  std::vector<Gate> gates;
  for (std::size_t q = 0; q < group.basis.num_qubits(); ++q) {
    switch (group.basis[q]) {
      case Pauli::X: gates.push_back(Gate::h(q)); break;
      case Pauli::Y:
        gates.push_back(Gate::sdg(q));
        gates.push_back(Gate::h(q));
        break;
      default: break;
    }
  }
  return gates;
}

void CostLedger::record(Phase phase, std::uint64_t circuits, std::uint64_t shots_per_circuit) {
  const auto k = static_cast<std::size_t>(phase);
  circuits_[k] += circuits;
  shots_[k] += circuits * shots_per_circuit;
}

std::uint64_t CostLedger::circuits_total() const {
  std::uint64_t t = 0;
  for (auto c : circuits_) t += c;
  return t;
}

std::uint64_t CostLedger::shots_total() const {
  std::uint64_t t = 0;
  for (auto s : shots_) t += s;
  return t;
}

CostLedger CostLedger::since(const CostLedger& earlier) const {
  CostLedger d;
  for (std::size_t k = 0; k < kPhaseCount; ++k) {
    d.circuits_[k] = circuits_[k] - earlier.circuits_[k];
    d.shots_[k] = shots_[k] - earlier.shots_[k];
  }
  return d;
}

Estimator Estimator::exact(MeasurementStrategy strategy) {
  Estimator e;
  e.strategy_ = strategy;
  return e;
}

Estimator Estimator::sampled(std::uint64_t shots, std::uint64_t seed,
                             MeasurementStrategy strategy) {
  if (shots == 0) throw ValidationError("shot count must be positive");
  Estimator e;
  e.shots_ = shots;
  e.seed_ = seed;
  e.strategy_ = strategy;
  return e;
}

Estimator Estimator::at_step(std::uint64_t step) const {
  Estimator e = *this;
  e.step_ = step;
  return e;
}

RngStream Estimator::stream(Phase phase, std::uint64_t a, std::uint64_t b,
                            std::uint64_t c) const {
  return derive_stream(seed_, {step_, static_cast<std::uint64_t>(phase), a, b, c});
}

ExpectationMap estimate_group(const StateVector& state, const MeasurementGroup& group,
                              std::uint64_t shots, RngStream& rng) {
  if (shots == 0) throw ValidationError("shots must be positive");
  const StateVector r = rotated(state, basis_rotation(group));
  const Counts counts = sample_bitstrings(r, shots, rng);
  std::vector<double> freq(counts.size());
  for (std::size_t b = 0; b < counts.size(); ++b)
    freq[b] = static_cast<double>(counts[b]) / static_cast<double>(shots);
  return estimate_from_weights(group, freq);
}

ExpectationMap estimate_group_exact(const StateVector& state, const MeasurementGroup& group) {
  const StateVector r = rotated(state, basis_rotation(group));
  return estimate_from_weights(group, probabilities(r));
}

MeasurementPlan::MeasurementPlan(std::vector<PauliString> strings,
                                 MeasurementStrategy strategy)
    : strings_(std::move(strings)) {
  std::vector<PauliString> measured;
  for (auto& s : strings_) {
    if (s.phase_power() != 0) throw ValidationError("measured strings must carry phase +1");
    if (!s.is_identity()) measured.push_back(s);
  }
  groups_ = strategy == MeasurementStrategy::grouped ? group_qubit_wise(measured)
                                                     : group_individually(measured);
  rotations_.reserve(groups_.size());
  for (const auto& g : groups_) rotations_.push_back(basis_rotation(g));

  std::unordered_map<PauliString, std::size_t, PauliStringHash> owner;
  for (std::size_t g = 0; g < groups_.size(); ++g)
    for (const auto& m : groups_[g].members) owner.emplace(m, g);
  slots_.reserve(strings_.size());
  for (const auto& s : strings_) {
    if (s.is_identity()) {
      slots_.push_back({static_cast<std::size_t>(-1), 0});
    } else {
      slots_.push_back({owner.at(s), support_mask(s)});
    }
  }
}

std::vector<double> MeasurementPlan::estimate(const StateVector& state, const Estimator& est,
                                              Phase phase, std::uint64_t key) const {
  std::vector<double> out(strings_.size(), 1.0);
  if (est.is_exact()) {
    for (std::size_t k = 0; k < strings_.size(); ++k)
      if (!strings_[k].is_identity()) out[k] = expectation(state, strings_[k]);
    return out;
  }
  const double inv_shots = 1.0 / static_cast<double>(est.shots());
  std::vector<std::vector<double>> freq(groups_.size());
  for (std::size_t g = 0; g < groups_.size(); ++g) {
    RngStream rng = est.stream(phase, key, g);
    const Counts counts = sample_bitstrings(rotated(state, rotations_[g]), est.shots(), rng);
    freq[g].resize(counts.size());
    for (std::size_t b = 0; b < counts.size(); ++b)
      freq[g][b] = static_cast<double>(counts[b]) * inv_shots;
  }
  for (std::size_t k = 0; k < strings_.size(); ++k) {
    const Slot& s = slots_[k];
    if (s.group == static_cast<std::size_t>(-1)) continue;
    out[k] = parity_average(freq[s.group], s.parity_mask);
  }
  return out;
}

ExpectationMap estimate_expectations(const HeaAnsatz& ansatz, const ParameterVector& theta,
                                     std::span<const PauliString> paulis, const Estimator& est,
                                     CostLedger& ledger, Phase phase) {
  const MeasurementPlan plan(std::vector<PauliString>(paulis.begin(), paulis.end()),
                             est.strategy());
  const StateVector state = prepare_state(ansatz, theta);
  const auto values = plan.estimate(state, est, phase, 0);
  ledger.record(phase, plan.circuit_count(), est.shots());
  ExpectationMap out;
  for (std::size_t k = 0; k < paulis.size(); ++k) out[paulis[k]] = values[k];
  return out;
}

std::vector<PauliString> v_phase_strings(const PauliSum& h, std::span<const PauliString> set) {
  std::vector<PauliString> out;
  std::unordered_set<PauliString, PauliStringHash> seen;
  auto push = [&](const PauliString& p) {
    if (p.is_identity()) return;
    if (seen.insert(p).second) out.push_back(p);
  };
  for (const auto& o : set) push(o);
  for (const auto& t : h.terms()) push(t.string);
  for (const auto& o : set) {
    const PauliSum anti = anticommutator_with_sum(h, o);
    for (const auto& t : anti.terms()) push(t.string);
  }
  return out;
}

CircuitCounts count_circuits(Algorithm algorithm, const PauliSum& h,
                             std::span<const PauliString> set, std::size_t num_parameters,
                             MeasurementStrategy strategy) {
  std::vector<PauliString> h_strings;
  for (const auto& t : h.terms())
    if (!t.string.is_identity()) h_strings.push_back(t.string);
  auto count = [strategy](std::span<const PauliString> strings) -> std::uint64_t {
    return strategy == MeasurementStrategy::grouped ? group_qubit_wise(strings).size()
                                                    : strings.size();
  };
  const std::uint64_t n = num_parameters;
  const std::uint64_t c_h = count(h_strings);
  CircuitCounts c;
  c.energy = c_h;
  if (algorithm == Algorithm::vqite) {
    c.G = 4 * (n * (n + 1) / 2);
    c.b = 2 * n * c_h;
    return c;
  }
  if (set.empty()) throw ValidationError("OVQITE needs a nonempty operator set");
  std::vector<PauliString> s_strings;
  for (const auto& p : set)
    if (!p.is_identity()) s_strings.push_back(p);
  c.M = 2 * n * count(s_strings);
  c.v = count(v_phase_strings(h, set));
  return c;
}

}  // namespace ovqite
