#include "ovqite/tfim.hpp"

#include <bit>
#include <unordered_set>

#include "ovqite/errors.hpp"

namespace ovqite {

namespace {

void validate(const TfimParams& p) {
  if (p.n < 2) throw ValidationError("TFIM needs at least two sites");
  if (!(p.J > 0.0)) throw ValidationError("TFIM coupling J must be positive");
}

std::vector<std::pair<std::size_t, std::size_t>> bonds(const TfimParams& p) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  const std::size_t count = p.periodic ? p.n : p.n - 1;
  for (std::size_t i = 0; i < count; ++i) out.emplace_back(i, (i + 1) % p.n);
  return out;
}

constexpr Pauli kLetters[3] = {Pauli::X, Pauli::Y, Pauli::Z};

}  // namespace

PauliSum build_tfim(const TfimParams& p) {
  validate(p);
  PauliSum h(p.n);
  for (auto [i, k] : bonds(p)) h.add(PauliString::pair(p.n, i, Pauli::Z, k, Pauli::Z), -p.J);
  for (std::size_t i = 0; i < p.n; ++i) h.add(PauliString::single(p.n, i, Pauli::X), -p.h);
  return h;
}

OperatorSet hamiltonian_set(const PauliSum& h) {
  OperatorSet s{"S_H", {}};
  for (const auto& t : h.terms())
    if (!t.string.is_identity()) s.members.push_back(t.string);
  return s;
}

OperatorSet full_pauli_set(std::size_t n) {
  if (n == 0 || n > 6) throw CapabilityError("full Pauli basis only supported for n <= 6");
  OperatorSet s{"S_ALL", {}};
  const std::size_t total = std::size_t{1} << (2 * n);
  for (std::size_t code = 1; code < total; ++code) {
    std::vector<Pauli> letters(n);
    for (std::size_t q = 0; q < n; ++q) letters[q] = static_cast<Pauli>((code >> (2 * q)) & 3);
    s.members.emplace_back(std::move(letters));
  }
  return s;
}

OperatorSet operator_set(const TfimParams& p, std::string_view name) {
  validate(p);
  if (name == "S_H") return hamiltonian_set(build_tfim(p));
  if (name == "S_ALL") return full_pauli_set(p.n);
  if (name != "S_NN" && name != "S_IM") {
    throw ValidationError("unknown operator set '" + std::string(name) + "'");
  }
  const bool real_only = name == "S_IM";
  OperatorSet s{std::string(name), {}};
  std::unordered_set<PauliString, PauliStringHash> seen;
  auto push = [&](PauliString str) {
    if (seen.insert(str).second) s.members.push_back(std::move(str));
  };
  for (std::size_t j = 0; j < p.n; ++j) {
    for (Pauli a : kLetters) {
      if (real_only && a == Pauli::Y) continue;
      push(PauliString::single(p.n, j, a));
    }
  }
  for (auto [j, k] : bonds(p)) {
    for (Pauli a : kLetters) {
      for (Pauli c : kLetters) {
        // An odd number of Y letters gives an imaginary real-space matrix.
        if (real_only && ((a == Pauli::Y) != (c == Pauli::Y))) continue;
        push(PauliString::pair(p.n, j, a, k, c));
      }
    }
  }
  return s;
}

Eigen::MatrixXcd dense_matrix(const PauliSum& h) {
  const std::size_t n = h.num_qubits();
  if (n > kMaxDenseQubits) {
    throw CapabilityError("dense matrix limited to " + std::to_string(kMaxDenseQubits) +
                          " qubits");
  }
  const auto dim = static_cast<Eigen::Index>(std::size_t{1} << n);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  static const std::complex<double> kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  for (const auto& t : h.terms()) {
    const std::uint64_t flip = t.string.x_mask();
    const std::uint64_t sign = t.string.z_mask();
    const std::complex<double> base = t.coeff * kIPow[t.string.y_count() % 4];
    for (Eigen::Index x = 0; x < dim; ++x) {
      const auto ux = static_cast<std::uint64_t>(x);
      const double s = (std::popcount(ux & sign) & 1) ? -1.0 : 1.0;
      m(static_cast<Eigen::Index>(ux ^ flip), x) += s * base;
    }
  }
  return m;
}

double exact_ground_energy(const PauliSum& h) {
  if (h.num_qubits() > kMaxDenseQubits) {
    throw CapabilityError("exact diagonalization limited to " +
                          std::to_string(kMaxDenseQubits) + " qubits");
  }
  if (h.empty()) return 0.0;
  const Eigen::MatrixXcd m = dense_matrix(h);
  if (m.imag().cwiseAbs().maxCoeff() == 0.0) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m.real(), Eigen::EigenvaluesOnly);
    return es.eigenvalues()(0);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

}  // namespace ovqite
