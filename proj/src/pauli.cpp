#include "ovqite/pauli.hpp"

#include <sstream>

#include "ovqite/errors.hpp"

namespace ovqite {

namespace {

void require_same_size(const PauliString& a, const PauliString& b) {
  if (a.num_qubits() != b.num_qubits()) {
    throw DimensionError("Pauli strings act on " + std::to_string(a.num_qubits()) +
                         " and " + std::to_string(b.num_qubits()) + " qubits");
  }
}

const std::complex<double> kPhases[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};

}  // namespace

char to_char(Pauli p) { return "IXYZ"[static_cast<int>(p)]; }

Pauli pauli_from_char(char c) {
  switch (c) {
    case 'I': return Pauli::I;
    case 'X': return Pauli::X;
    case 'Y': return Pauli::Y;
    case 'Z': return Pauli::Z;
    default: throw ValidationError(std::string("not a Pauli letter: '") + c + "'");
  }
}

PauliString::PauliString(std::vector<Pauli> letters, int phase_power)
    : letters_(std::move(letters)), phase_(((phase_power % 4) + 4) % 4) {}

PauliString PauliString::identity(std::size_t n) {
  return PauliString(std::vector<Pauli>(n, Pauli::I));
}

PauliString PauliString::single(std::size_t n, std::size_t qubit, Pauli p) {
  if (qubit >= n) throw ValidationError("qubit index out of range");
  std::vector<Pauli> letters(n, Pauli::I);
  letters[qubit] = p;
  return PauliString(std::move(letters));
}

PauliString PauliString::pair(std::size_t n, std::size_t q0, Pauli p0, std::size_t q1,
                              Pauli p1) {
  if (q0 >= n || q1 >= n) throw ValidationError("qubit index out of range");
  if (q0 == q1) throw ValidationError("pair needs two distinct qubits");
  std::vector<Pauli> letters(n, Pauli::I);
  letters[q0] = p0;
  letters[q1] = p1;
  return PauliString(std::move(letters));
}

PauliString PauliString::parse(std::string_view text) {
  int phase = 0;
  if (!text.empty() && (text.front() == '+' || text.front() == '-')) {
    if (text.front() == '-') phase = 2;
    text.remove_prefix(1);
  }
  if (!text.empty() && text.front() == 'i') {
    phase += 1;
    text.remove_prefix(1);
  }
  if (text.empty()) throw ValidationError("empty Pauli string");
  std::vector<Pauli> letters;
  letters.reserve(text.size());
  for (char c : text) letters.push_back(pauli_from_char(c));
  return PauliString(std::move(letters), phase);
}

std::complex<double> PauliString::phase() const { return kPhases[phase_]; }

PauliString PauliString::with_phase_power(int k) const {
  PauliString out = *this;
  out.phase_ = ((k % 4) + 4) % 4;
  return out;
}

bool PauliString::is_identity() const {
  for (Pauli p : letters_)
    if (p != Pauli::I) return false;
  return true;
}

std::size_t PauliString::weight() const {
  std::size_t w = 0;
  for (Pauli p : letters_) w += p != Pauli::I;
  return w;
}

std::uint64_t PauliString::x_mask() const {
  std::uint64_t m = 0;
  for (std::size_t q = 0; q < letters_.size(); ++q)
    if (letters_[q] == Pauli::X || letters_[q] == Pauli::Y) m |= std::uint64_t{1} << q;
  return m;
}

std::uint64_t PauliString::z_mask() const {
  std::uint64_t m = 0;
  for (std::size_t q = 0; q < letters_.size(); ++q)
    if (letters_[q] == Pauli::Z || letters_[q] == Pauli::Y) m |= std::uint64_t{1} << q;
  return m;
}

std::size_t PauliString::y_count() const {
  std::size_t c = 0;
  for (Pauli p : letters_) c += p == Pauli::Y;
  return c;
}

std::string PauliString::to_string() const {
  std::string s;
  s.reserve(letters_.size());
  for (Pauli p : letters_) s.push_back(to_char(p));
  return s;
}

std::string PauliString::to_signed_string() const {
  static const char* prefix[4] = {"", "i", "-", "-i"};
  return prefix[phase_] + to_string();
}

PauliString multiply(const PauliString& a, const PauliString& b) {
  require_same_size(a, b);
  const std::size_t n = a.num_qubits();
  std::vector<Pauli> letters(n);
  int phase = a.phase_power() + b.phase_power();
  for (std::size_t q = 0; q < n; ++q) {
    const int x = static_cast<int>(a[q]);
    const int y = static_cast<int>(b[q]);
    letters[q] = static_cast<Pauli>(x ^ y);
    if (x != 0 && y != 0 && x != y) {
      // XY = iZ, YZ = iX, ZX = iY; reversed order picks up -i.
      phase += ((y - x + 3) % 3 == 1) ? 1 : 3;
    }
  }
  return PauliString(std::move(letters), phase);
}

bool commutes(const PauliString& a, const PauliString& b) {
  require_same_size(a, b);
  std::size_t clashes = 0;
  for (std::size_t q = 0; q < a.num_qubits(); ++q)
    clashes += a[q] != Pauli::I && b[q] != Pauli::I && a[q] != b[q];
  return clashes % 2 == 0;
}

bool qubit_wise_commutes(const PauliString& a, const PauliString& b) {
  require_same_size(a, b);
  for (std::size_t q = 0; q < a.num_qubits(); ++q)
    if (a[q] != Pauli::I && b[q] != Pauli::I && a[q] != b[q]) return false;
  return true;
}

std::size_t PauliStringHash::operator()(const PauliString& p) const noexcept {
  // FNV-1a over the letters and phase.
  std::uint64_t h = 1469598103934665603ULL;
  for (Pauli l : p.letters()) {
    h ^= static_cast<std::uint64_t>(l);
    h *= 1099511628211ULL;
  }
  h ^= static_cast<std::uint64_t>(p.phase_power()) + 0x9e;
  h *= 1099511628211ULL;
  return static_cast<std::size_t>(h);
}

void PauliSum::add(const PauliString& p, std::complex<double> coeff) {
  if (terms_.empty() && index_.empty() && n_ == 0) n_ = p.num_qubits();
  if (p.num_qubits() != n_) {
    throw DimensionError("Pauli string on " + std::to_string(p.num_qubits()) +
                         " qubits added to a sum on " + std::to_string(n_));
  }
  const PauliString key = p.canonical();
  coeff *= p.phase();
  auto it = index_.find(key);
  if (it == index_.end()) {
    if (std::abs(coeff) < kZeroTolerance) return;
    index_.emplace(key, terms_.size());
    terms_.push_back({key, coeff});
    return;
  }
  const std::size_t pos = it->second;
  terms_[pos].coeff += coeff;
  if (std::abs(terms_[pos].coeff) < kZeroTolerance) {
    terms_.erase(terms_.begin() + static_cast<std::ptrdiff_t>(pos));
    index_.erase(it);
    for (auto& [s, i] : index_)
      if (i > pos) --i;
  }
}

std::complex<double> PauliSum::coefficient(const PauliString& p) const {
  auto it = index_.find(p.canonical());
  if (it == index_.end()) return 0.0;
  return terms_[it->second].coeff * std::conj(p.phase());
}

bool PauliSum::contains(const PauliString& p) const {
  return index_.count(p.canonical()) != 0;
}

bool PauliSum::is_hermitian(double tol) const {
  for (const auto& t : terms_)
    if (std::abs(t.coeff.imag()) > tol) return false;
  return true;
}

std::string PauliSum::to_string() const {
  std::ostringstream os;
  os.precision(17);
  bool first = true;
  for (const auto& t : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << t.coeff.real() << (t.coeff.imag() < 0 ? "" : "+") << t.coeff.imag()
       << "i)*" << t.string.to_string();
  }
  if (first) os << "0";
  return os.str();
}

PauliSum anticommutator_with_sum(const PauliSum& h, const PauliString& o) {
  if (h.num_qubits() != o.num_qubits() && !h.empty()) {
    throw DimensionError("Hamiltonian and operator act on different qubit counts");
  }
  if (o.phase_power() != 0) throw ValidationError("operator must carry phase +1");
  PauliSum out(o.num_qubits());
  for (const auto& term : h.terms()) {
    if (!commutes(term.string, o)) continue;
    out.add(multiply(term.string, o), 2.0 * term.coeff);
  }
  return out;
}

}  // namespace ovqite
