#include "gse/pauli.hpp"

#include <bit>
#include <stdexcept>

namespace gse {

namespace {

std::size_t word_count(std::size_t n) { return (n + 63) / 64; }

std::size_t popcount_and(const std::vector<uint64_t>& a, const std::vector<uint64_t>& b) {
  std::size_t c = 0;
  for (std::size_t i = 0; i < a.size(); ++i) c += std::popcount(a[i] & b[i]);
  return c;
}

}  // namespace

uint8_t pauli_code(char letter) {
  switch (letter) {
    case 'I': return P_I;
    case 'X': return P_X;
    case 'Z': return P_Z;
    case 'Y': return P_Y;
    default: throw std::invalid_argument(std::string("invalid Pauli letter '") + letter + "'");
  }
}

char pauli_char(uint8_t code) {
  static constexpr char kChars[4] = {'I', 'X', 'Z', 'Y'};
  return kChars[code & 3];
}

int pauli_mul_phase(uint8_t a, uint8_t b) {
  unsigned x1 = a & 1u, z1 = (a >> 1) & 1u;
  unsigned x2 = b & 1u, z2 = (b >> 1) & 1u;
  unsigned x3 = x1 ^ x2, z3 = z1 ^ z2;
  // sigma(x,z) = i^{xz} X^x Z^z
  int g = int(x1 * z1) + int(x2 * z2) + 2 * int(z1 * x2) - int(x3 * z3);
  return ((g % 4) + 4) % 4;
}

PauliOp::PauliOp(std::size_t n_qubits)
    : n_(n_qubits), x_(word_count(n_qubits), 0), z_(word_count(n_qubits), 0) {}

PauliOp PauliOp::identity(std::size_t n) { return PauliOp(n); }

PauliOp PauliOp::single(std::size_t n, std::size_t q, uint8_t code) {
  PauliOp p(n);
  p.set_letter(q, code);
  return p;
}

PauliOp PauliOp::parse(const std::string& label) {
  std::size_t pos = 0;
  int phase = 0;
  if (pos < label.size() && (label[pos] == '+' || label[pos] == '-')) {
    if (label[pos] == '-') phase += 2;
    ++pos;
  }
  if (pos < label.size() && label[pos] == 'i') {
    phase += 1;
    ++pos;
  }
  if (pos >= label.size()) throw std::invalid_argument("empty Pauli label: '" + label + "'");
  PauliOp p(label.size() - pos);
  for (std::size_t q = 0; pos < label.size(); ++pos, ++q) p.set_letter(q, pauli_code(label[pos]));
  p.set_phase(phase);
  return p;
}

uint8_t PauliOp::letter(std::size_t q) const {
  uint8_t x = (x_[q >> 6] >> (q & 63)) & 1u;
  uint8_t z = (z_[q >> 6] >> (q & 63)) & 1u;
  return static_cast<uint8_t>(x | (z << 1));
}

void PauliOp::set_letter(std::size_t q, uint8_t code) {
  uint64_t bit = uint64_t(1) << (q & 63);
  if (code & 1u) x_[q >> 6] |= bit; else x_[q >> 6] &= ~bit;
  if (code & 2u) z_[q >> 6] |= bit; else z_[q >> 6] &= ~bit;
}

std::size_t PauliOp::weight() const {
  std::size_t w = 0;
  for (std::size_t i = 0; i < x_.size(); ++i) w += std::popcount(x_[i] | z_[i]);
  return w;
}

void PauliOp::mul_single(std::size_t q, uint8_t code) {
  add_phase(pauli_mul_phase(letter(q), code));
  set_letter(q, letter(q) ^ code);
}

void PauliOp::apply_hadamard(std::size_t q) {
  uint8_t l = letter(q);
  if (l == P_Y) add_phase(2);
  if (l == P_X) set_letter(q, P_Z);
  else if (l == P_Z) set_letter(q, P_X);
}

void PauliOp::apply_s(std::size_t q) {
  uint8_t l = letter(q);
  if (l == P_X) set_letter(q, P_Y);
  else if (l == P_Y) {
    set_letter(q, P_X);
    add_phase(2);
  }
}

void PauliOp::swap_qubits(std::size_t a, std::size_t b) {
  uint8_t la = letter(a), lb = letter(b);
  set_letter(a, lb);
  set_letter(b, la);
}

void PauliOp::clear_qubit(std::size_t q) { set_letter(q, P_I); }

std::string PauliOp::letters() const {
  std::string s(n_, 'I');
  for (std::size_t q = 0; q < n_; ++q) s[q] = pauli_char(letter(q));
  return s;
}

std::string PauliOp::str() const {
  static const char* kPrefix[4] = {"", "i", "-", "-i"};
  return kPrefix[phase_] + letters();
}

PauliOp PauliOp::restricted(const std::vector<std::size_t>& qubits) const {
  PauliOp p(qubits.size());
  for (std::size_t i = 0; i < qubits.size(); ++i) p.set_letter(i, letter(qubits[i]));
  p.set_phase(phase_);
  return p;
}

PauliOp PauliOp::embedded(std::size_t n_qubits, const std::vector<std::size_t>& positions) const {
  if (positions.size() != n_) throw std::invalid_argument("embedding position count mismatch");
  PauliOp p(n_qubits);
  for (std::size_t i = 0; i < n_; ++i) p.set_letter(positions[i], letter(i));
  p.set_phase(phase_);
  return p;
}

bool PauliOp::same_letters(const PauliOp& other) const {
  return n_ == other.n_ && x_ == other.x_ && z_ == other.z_;
}

bool PauliOp::operator==(const PauliOp& other) const {
  return same_letters(other) && phase_ == other.phase_;
}

PauliOp multiply(const PauliOp& a, const PauliOp& b) {
  if (a.n_ != b.n_) throw std::invalid_argument("PauliOp size mismatch in multiply");
  PauliOp r(a.n_);
  long g = long(popcount_and(a.x_, a.z_)) + long(popcount_and(b.x_, b.z_)) +
           2 * long(popcount_and(a.z_, b.x_));
  for (std::size_t i = 0; i < r.x_.size(); ++i) {
    r.x_[i] = a.x_[i] ^ b.x_[i];
    r.z_[i] = a.z_[i] ^ b.z_[i];
  }
  g -= long(popcount_and(r.x_, r.z_));
  r.set_phase(a.phase_ + b.phase_ + int(((g % 4) + 4) % 4));
  return r;
}

bool commutes(const PauliOp& a, const PauliOp& b) {
  if (a.n_ != b.n_) throw std::invalid_argument("PauliOp size mismatch in commutes");
  std::size_t s = popcount_and(a.x_, b.z_) + popcount_and(a.z_, b.x_);
  return (s & 1) == 0;
}

std::size_t pauli_weight(const PauliOp& p) { return p.weight(); }

}  // namespace gse
