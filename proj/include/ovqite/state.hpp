#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ovqite/pauli.hpp"
#include "ovqite/rng.hpp"

namespace ovqite {

using Amplitude = std::complex<double>;

/// Gate set needed by the ansatz and by measurement basis changes.
struct Gate {
  enum class Kind { RY, CNOT, H, SDG, X };

  Kind kind = Kind::X;
  std::size_t target = 0;
  std::size_t control = 0;  // CNOT only
  double angle = 0.0;       // RY only; RY(a) = exp(-i a Y / 2)

  static Gate ry(std::size_t target, double angle) { return {Kind::RY, target, 0, angle}; }
  static Gate cnot(std::size_t control, std::size_t target) {
    return {Kind::CNOT, target, control, 0.0};
  }
  static Gate h(std::size_t target) { return {Kind::H, target, 0, 0.0}; }
  static Gate sdg(std::size_t target) { return {Kind::SDG, target, 0, 0.0}; }
  static Gate x(std::size_t target) { return {Kind::X, target, 0, 0.0}; }

  friend bool operator==(const Gate&, const Gate&) = default;
};

std::string to_string(const Gate& g);

/// Pure n-qubit state. Basis index bit q holds qubit q (little-endian).
class StateVector {
 public:
  static constexpr std::size_t kMaxQubits = 30;

  /// |0...0>.
  explicit StateVector(std::size_t n);
  static StateVector basis(std::size_t n, std::uint64_t index);
  /// Rejects vectors whose norm differs from 1 by more than 1e-10 or whose
  /// length is not a power of two.
  static StateVector from_amplitudes(std::vector<Amplitude> amplitudes);

  std::size_t num_qubits() const { return n_; }
  std::size_t dimension() const { return amps_.size(); }
  std::span<const Amplitude> amplitudes() const { return amps_; }
  std::span<Amplitude> amplitudes() { return amps_; }
  const Amplitude& operator[](std::size_t i) const { return amps_[i]; }

  double norm() const;
  /// <this|other>.
  Amplitude inner(const StateVector& other) const;

  void apply(const Gate& g);

 private:
  StateVector() = default;
  std::size_t n_ = 0;
  std::vector<Amplitude> amps_;
};

StateVector apply_gate(StateVector state, const Gate& gate);

/// <psi|P|psi> for a phase-+1 string.
double expectation(const StateVector& state, const PauliString& p);
/// Sum_a c_a <P_a>; throws ValidationError when the sum is not Hermitian.
double expectation_sum(const StateVector& state, const PauliSum& h);

std::vector<double> probabilities(const StateVector& state);

/// Histogram of measurement outcomes indexed by basis state.
using Counts = std::vector<std::uint64_t>;

/// Draws `shots` i.i.d. outcomes from |amplitude|^2.
Counts sample_bitstrings(const StateVector& state, std::uint64_t shots, RngStream& rng);
/// Same, from an explicit outcome distribution.
Counts sample_counts(std::span<const double> probs, std::uint64_t shots, RngStream& rng);
/// Number of times an outcome with probability p appears among `shots` draws.
std::uint64_t sample_outcome_count(double p, std::uint64_t shots, RngStream& rng);

/// Qubit 0 printed first.
std::string bitstring(std::uint64_t index, std::size_t n);

}  // namespace ovqite
