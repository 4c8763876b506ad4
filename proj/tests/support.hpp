#pragma once

// Dense reference implementations used as oracles. Everything here works on
// explicit 2^n x 2^n matrices and is only meant for a handful of qubits.

#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "ovqite/ansatz.hpp"
#include "ovqite/pauli.hpp"
#include "ovqite/state.hpp"

namespace oracle {

using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using cd = std::complex<double>;

inline Mat pauli2(ovqite::Pauli p) {
  Mat m(2, 2);
  const cd i(0, 1);
  switch (p) {
    case ovqite::Pauli::I: m << 1, 0, 0, 1; break;
    case ovqite::Pauli::X: m << 0, 1, 1, 0; break;
    case ovqite::Pauli::Y: m << 0, -i, i, 0; break;
    case ovqite::Pauli::Z: m << 1, 0, 0, -1; break;
  }
  return m;
}

inline Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index r = 0; r < a.rows(); ++r)
    for (Eigen::Index c = 0; c < a.cols(); ++c)
      out.block(r * b.rows(), c * b.cols(), b.rows(), b.cols()) = a(r, c) * b;
  return out;
}

/// Qubit 0 is the least significant index bit, so it sits rightmost.
inline Mat embed(const std::vector<Mat>& per_qubit) {
  Mat out = Mat::Identity(1, 1);
  for (std::size_t q = per_qubit.size(); q-- > 0;) out = kron(out, per_qubit[q]);
  return out;
}

inline Mat dense(const ovqite::PauliString& p) {
  std::vector<Mat> ms;
  for (std::size_t q = 0; q < p.num_qubits(); ++q) ms.push_back(pauli2(p[q]));
  return p.phase() * embed(ms);
}

inline Mat dense(const ovqite::PauliSum& s) {
  const Eigen::Index d = Eigen::Index{1} << s.num_qubits();
  Mat out = Mat::Zero(d, d);
  for (const auto& t : s.terms()) out += t.coeff * dense(t.string);
  return out;
}

inline Mat single(std::size_t n, std::size_t q, const Mat& g) {
  std::vector<Mat> ms(n, Mat::Identity(2, 2));
  ms[q] = g;
  return embed(ms);
}

inline Mat ry(double a) {
  Mat m(2, 2);
  m << std::cos(a / 2), -std::sin(a / 2), std::sin(a / 2), std::cos(a / 2);
  return m;
}

/// CNOT from projectors: |0><0|_c (x) I + |1><1|_c (x) X_t.
inline Mat cnot(std::size_t n, std::size_t c, std::size_t t) {
  Mat p0(2, 2), p1(2, 2);
  p0 << 1, 0, 0, 0;
  p1 << 0, 0, 0, 1;
  std::vector<Mat> a(n, Mat::Identity(2, 2)), b(n, Mat::Identity(2, 2));
  a[c] = p0;
  b[c] = p1;
  b[t] = pauli2(ovqite::Pauli::X);
  return embed(a) + embed(b);
}

inline Mat gate(std::size_t n, const ovqite::Gate& g) {
  using K = ovqite::Gate::Kind;
  const double s = 1 / std::sqrt(2.0);
  Mat m(2, 2);
  switch (g.kind) {
    case K::RY: return single(n, g.target, ry(g.angle));
    case K::CNOT: return cnot(n, g.control, g.target);
    case K::H: m << s, s, s, -s; return single(n, g.target, m);
    case K::SDG: m << 1, 0, 0, cd(0, -1); return single(n, g.target, m);
    case K::X: return single(n, g.target, pauli2(ovqite::Pauli::X));
  }
  return Mat();
}

inline Mat circuit(const ovqite::HeaAnsatz& a, const ovqite::ParameterVector& theta) {
  const std::size_t n = a.num_qubits();
  Mat u = Mat::Identity(Eigen::Index{1} << n, Eigen::Index{1} << n);
  for (const auto& g : a.gates(theta)) u = gate(n, g) * u;
  return u;
}

inline Vec ket(const ovqite::HeaAnsatz& a, const ovqite::ParameterVector& theta) {
  return circuit(a, theta).col(0);
}

inline Vec to_vec(const ovqite::StateVector& s) {
  Vec v(static_cast<Eigen::Index>(s.dimension()));
  for (std::size_t i = 0; i < s.dimension(); ++i) v[static_cast<Eigen::Index>(i)] = s[i];
  return v;
}

inline ovqite::StateVector from_vec(const Vec& v) {
  return ovqite::StateVector::from_amplitudes(std::vector<cd>(v.data(), v.data() + v.size()));
}

inline Vec random_state(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  Vec v(Eigen::Index{1} << n);
  for (auto& x : v) x = cd(g(rng), g(rng));
  return v / v.norm();
}

inline double expect(const Vec& psi, const Mat& o) { return (psi.adjoint() * o * psi)(0).real(); }

inline ovqite::PauliString random_string(std::size_t n, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> d(0, 3);
  std::vector<ovqite::Pauli> l(n);
  for (auto& x : l) x = static_cast<ovqite::Pauli>(d(rng));
  return ovqite::PauliString(l);
}

/// All 4^n phase-+1 strings in lexicographic letter order.
inline std::vector<ovqite::PauliString> all_strings(std::size_t n) {
  std::vector<ovqite::PauliString> out;
  const std::size_t total = std::size_t{1} << (2 * n);
  for (std::size_t k = 0; k < total; ++k) {
    std::vector<ovqite::Pauli> l(n);
    for (std::size_t q = 0; q < n; ++q) l[q] = static_cast<ovqite::Pauli>((k >> (2 * q)) & 3);
    out.emplace_back(l);
  }
  return out;
}

}  // namespace oracle
