#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "ovqite/pauli.hpp"

namespace ovqite {

/// H = -J sum_i Z_i Z_{i+1} - h sum_i X_i on a chain of n sites.
struct TfimParams {
  std::size_t n = 2;
  double J = 1.0;
  double h = 0.5;
  bool periodic = true;
};

/// Bonds first (i = 0..n-1, or n-2 when open), then the field terms. The
/// periodic n = 2 chain lists its single bond twice, so it merges to -2J.
PauliSum build_tfim(const TfimParams& p);

/// Named list of distinct phase-+1 Pauli strings used as observables.
struct OperatorSet {
  std::string name;
  std::vector<PauliString> members;
};

/// "S_H": the Hamiltonian strings. "S_NN": every 1-local Pauli and every
/// pair P_j Q_k on nearest-neighbour sites. "S_IM": S_NN without Y_j, Y_j X_k
/// and Y_j Z_k (either order), whose expectations vanish on real circuits.
/// "S_ALL": every non-identity string, only for n <= 6.
OperatorSet operator_set(const TfimParams& p, std::string_view name);

/// Distinct strings of h in term order.
OperatorSet hamiltonian_set(const PauliSum& h);
OperatorSet full_pauli_set(std::size_t n);

inline constexpr std::size_t kMaxDenseQubits = 14;

/// Dense 2^n x 2^n matrix of h; throws CapabilityError above kMaxDenseQubits.
Eigen::MatrixXcd dense_matrix(const PauliSum& h);

/// Smallest eigenvalue of the dense matrix of h.
double exact_ground_energy(const PauliSum& h);

}  // namespace ovqite
