#include "ovqite/state.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

#include "ovqite/errors.hpp"

namespace ovqite {

namespace {

constexpr double kNormTolerance = 1e-10;

void check_qubit(std::size_t q, std::size_t n) {
  if (q >= n) {
    throw ValidationError("qubit index " + std::to_string(q) + " out of range for " +
                          std::to_string(n) + " qubits");
  }
}

}  // namespace

std::string to_string(const Gate& g) {
  switch (g.kind) {
    case Gate::Kind::RY: return "RY(" + std::to_string(g.target) + ")";
    case Gate::Kind::CNOT:
      return "CNOT(" + std::to_string(g.control) + "," + std::to_string(g.target) + ")";
    case Gate::Kind::H: return "H(" + std::to_string(g.target) + ")";
    case Gate::Kind::SDG: return "SDG(" + std::to_string(g.target) + ")";
    case Gate::Kind::X: return "X(" + std::to_string(g.target) + ")";
  }
  return "?";
}

StateVector::StateVector(std::size_t n) : n_(n) {
  if (n == 0 || n > kMaxQubits) throw CapabilityError("unsupported qubit count");
  amps_.assign(std::size_t{1} << n, Amplitude{0.0, 0.0});
  amps_[0] = 1.0;
}

StateVector StateVector::basis(std::size_t n, std::uint64_t index) {
  StateVector s(n);
  if (index >= s.dimension()) throw ValidationError("basis index out of range");
  s.amps_[0] = 0.0;
  s.amps_[index] = 1.0;
  return s;
}

StateVector StateVector::from_amplitudes(std::vector<Amplitude> amplitudes) {
  const std::size_t dim = amplitudes.size();
  if (dim < 2 || (dim & (dim - 1)) != 0) {
    throw DimensionError("amplitude count must be a power of two");
  }
  StateVector s;
  s.n_ = static_cast<std::size_t>(std::countr_zero(dim));
  s.amps_ = std::move(amplitudes);
  if (std::abs(s.norm() - 1.0) > kNormTolerance) {
    throw ValidationError("state is not normalized");
  }
  return s;
}

double StateVector::norm() const {
  double acc = 0.0;
  for (const auto& a : amps_) acc += std::norm(a);
  return std::sqrt(acc);
}

Amplitude StateVector::inner(const StateVector& other) const {
  if (other.n_ != n_) throw DimensionError("inner product of states of different size");
  Amplitude acc{0.0, 0.0};
  for (std::size_t i = 0; i < amps_.size(); ++i) acc += std::conj(amps_[i]) * other.amps_[i];
  return acc;
}

void StateVector::apply(const Gate& g) {
  check_qubit(g.target, n_);
  const std::size_t bit = std::size_t{1} << g.target;
  const std::size_t dim = amps_.size();
  switch (g.kind) {
    case Gate::Kind::RY: {
      const double c = std::cos(0.5 * g.angle);
      const double s = std::sin(0.5 * g.angle);
      for (std::size_t i = 0; i < dim; ++i) {
        if (i & bit) continue;
        const Amplitude a0 = amps_[i];
        const Amplitude a1 = amps_[i | bit];
        amps_[i] = c * a0 - s * a1;
        amps_[i | bit] = s * a0 + c * a1;
      }
      break;
    }
    case Gate::Kind::CNOT: {
      check_qubit(g.control, n_);
      if (g.control == g.target) throw ValidationError("CNOT control equals target");
      const std::size_t cbit = std::size_t{1} << g.control;
      for (std::size_t i = 0; i < dim; ++i) {
        if ((i & cbit) && !(i & bit)) std::swap(amps_[i], amps_[i | bit]);
      }
      break;
    }
    case Gate::Kind::H: {
      const double r = 1.0 / std::sqrt(2.0);
      for (std::size_t i = 0; i < dim; ++i) {
        if (i & bit) continue;
        const Amplitude a0 = amps_[i];
        const Amplitude a1 = amps_[i | bit];
        amps_[i] = r * (a0 + a1);
        amps_[i | bit] = r * (a0 - a1);
      }
      break;
    }
    case Gate::Kind::SDG: {
      const Amplitude minus_i{0.0, -1.0};
      for (std::size_t i = 0; i < dim; ++i)
        if (i & bit) amps_[i] *= minus_i;
      break;
    }
    case Gate::Kind::X: {
      for (std::size_t i = 0; i < dim; ++i)
        if (!(i & bit)) std::swap(amps_[i], amps_[i | bit]);
      break;
    }
  }
}

StateVector apply_gate(StateVector state, const Gate& gate) {
  state.apply(gate);
  return state;
}

double expectation(const StateVector& state, const PauliString& p) {
  if (p.num_qubits() != state.num_qubits()) {
    throw DimensionError("Pauli string and state act on different qubit counts");
  }
  if (p.phase_power() != 0) throw ValidationError("observable must carry phase +1");
  const std::uint64_t flip = p.x_mask();
  const std::uint64_t sign = p.z_mask();
  // P|x> = i^{#Y} (-1)^{popcount(x & sign)} |x ^ flip>
  const auto amps = state.amplitudes();
  Amplitude acc{0.0, 0.0};
  for (std::size_t x = 0; x < amps.size(); ++x) {
    const Amplitude term = std::conj(amps[x ^ flip]) * amps[x];
    acc += (std::popcount(x & sign) & 1) ? -term : term;
  }
  static const Amplitude kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  acc *= kIPow[p.y_count() % 4];
  return acc.real();
}

double expectation_sum(const StateVector& state, const PauliSum& h) {
  if (!h.empty() && h.num_qubits() != state.num_qubits()) {
    throw DimensionError("Hamiltonian and state act on different qubit counts");
  }
  if (!h.is_hermitian(1e-12)) throw ValidationError("Pauli sum is not Hermitian");
  double acc = 0.0;
  for (const auto& t : h.terms()) acc += t.coeff.real() * expectation(state, t.string);
  return acc;
}

std::vector<double> probabilities(const StateVector& state) {
  std::vector<double> p(state.dimension());
  const auto amps = state.amplitudes();
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = std::norm(amps[i]);
  return p;
}

std::uint64_t sample_outcome_count(double p, std::uint64_t shots, RngStream& rng) {
  if (!(p >= -1e-9 && p <= 1.0 + 1e-9)) throw ValidationError("probability outside [0, 1]");
  p = std::clamp(p, 0.0, 1.0);
  if (p == 0.0) return 0;
  if (p == 1.0) return shots;
  std::binomial_distribution<std::uint64_t> dist(shots, p);
  return dist(rng);
}

Counts sample_counts(std::span<const double> probs, std::uint64_t shots, RngStream& rng) {
  if (shots == 0) throw ValidationError("shots must be positive");
  Counts counts(probs.size(), 0);
  std::size_t last = probs.size();
  double mass = 0.0;
  for (std::size_t k = 0; k < probs.size(); ++k) {
    if (probs[k] > 0.0) last = k;
    mass += std::max(probs[k], 0.0);
  }
  if (last == probs.size()) throw ValidationError("distribution has no support");
  // Multinomial draw as a chain of conditional binomials, in index order.
  std::uint64_t remaining = shots;
  for (std::size_t k = 0; k < last && remaining > 0; ++k) {
    const double pk = std::max(probs[k], 0.0);
    if (pk == 0.0) continue;
    const std::uint64_t c = mass > 0.0 ? sample_outcome_count(pk / mass, remaining, rng) : 0;
    counts[k] = c;
    remaining -= c;
    mass -= pk;
  }
  counts[last] += remaining;
  return counts;
}

Counts sample_bitstrings(const StateVector& state, std::uint64_t shots, RngStream& rng) {
  const auto p = probabilities(state);
  return sample_counts(p, shots, rng);
}

std::string bitstring(std::uint64_t index, std::size_t n) {
  std::string s(n, '0');
  for (std::size_t q = 0; q < n; ++q)
    if ((index >> q) & 1) s[q] = '1';
  return s;
}

}  // namespace ovqite
