#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace ovqite {

enum class Pauli : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

char to_char(Pauli p);
Pauli pauli_from_char(char c);

/// Tensor product of single-qubit Paulis with a phase in {+1, +i, -1, -i}.
///
/// Letter q acts on qubit q. The phase is stored as a power of i (0..3), so
/// products stay exact and never accumulate rounding.
class PauliString {
 public:
  PauliString() = default;
  explicit PauliString(std::vector<Pauli> letters, int phase_power = 0);

  static PauliString identity(std::size_t n);
  static PauliString single(std::size_t n, std::size_t qubit, Pauli p);
  static PauliString pair(std::size_t n, std::size_t q0, Pauli p0, std::size_t q1,
                          Pauli p1);

  /// Parses text such as "ZZIII", optionally prefixed by "+", "-", "i", "+i" or "-i".
  static PauliString parse(std::string_view text);

  std::size_t num_qubits() const { return letters_.size(); }
  Pauli operator[](std::size_t q) const { return letters_[q]; }
  const std::vector<Pauli>& letters() const { return letters_; }

  int phase_power() const { return phase_; }
  std::complex<double> phase() const;
  PauliString with_phase_power(int k) const;
  /// Same letters, phase +1.
  PauliString canonical() const { return with_phase_power(0); }

  bool is_identity() const;
  std::size_t weight() const;

  /// Bit q set where the letter flips the computational basis (X or Y).
  std::uint64_t x_mask() const;
  /// Bit q set where the letter contributes a sign (Y or Z).
  std::uint64_t z_mask() const;
  std::size_t y_count() const;

  /// Letters only, qubit 0 first; the phase is not printed.
  std::string to_string() const;
  /// Letters with a phase prefix when it is not +1.
  std::string to_signed_string() const;

  friend bool operator==(const PauliString&, const PauliString&) = default;
  friend auto operator<=>(const PauliString& a, const PauliString& b) {
    if (auto c = a.letters_ <=> b.letters_; c != 0) return c;
    return a.phase_ <=> b.phase_;
  }

 private:
  std::vector<Pauli> letters_;
  int phase_ = 0;
};

PauliString multiply(const PauliString& a, const PauliString& b);
inline PauliString operator*(const PauliString& a, const PauliString& b) {
  return multiply(a, b);
}

bool commutes(const PauliString& a, const PauliString& b);
bool qubit_wise_commutes(const PauliString& a, const PauliString& b);

struct PauliStringHash {
  std::size_t operator()(const PauliString& p) const noexcept;
};

struct PauliTerm {
  PauliString string;  // phase +1
  std::complex<double> coeff;
};

/// Weighted sum of phase-+1 Pauli strings on a fixed number of qubits.
///
/// Terms keep insertion order. Adding a string that is already present merges
/// coefficients; a term whose coefficient falls below kZeroTolerance in
/// magnitude is dropped.
class PauliSum {
 public:
  static constexpr double kZeroTolerance = 1e-14;

  PauliSum() = default;
  explicit PauliSum(std::size_t n) : n_(n) {}

  /// Folds the string's phase into the coefficient before merging.
  void add(const PauliString& p, std::complex<double> coeff);

  std::size_t num_qubits() const { return n_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }
  const std::vector<PauliTerm>& terms() const { return terms_; }

  /// Zero when the string is absent.
  std::complex<double> coefficient(const PauliString& p) const;
  bool contains(const PauliString& p) const;

  /// All coefficients real to within tol.
  bool is_hermitian(double tol = 1e-12) const;

  std::string to_string() const;

 private:
  std::size_t n_ = 0;
  std::vector<PauliTerm> terms_;
  std::unordered_map<PauliString, std::size_t, PauliStringHash> index_;
};

/// {h, o} expanded term by term: commuting terms contribute 2 c_a (P_a o),
/// anticommuting ones vanish.
PauliSum anticommutator_with_sum(const PauliSum& h, const PauliString& o);

}  // namespace ovqite

template <>
struct std::hash<ovqite::PauliString> : ovqite::PauliStringHash {};
