#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace gse {

// Single-qubit Pauli letters as 2-bit (x,z) codes: I=00, X=01, Z=10, Y=11.
inline constexpr uint8_t P_I = 0;
inline constexpr uint8_t P_X = 1;
inline constexpr uint8_t P_Z = 2;
inline constexpr uint8_t P_Y = 3;

uint8_t pauli_code(char letter);
char pauli_char(uint8_t code);

// True iff the two single-qubit Paulis anticommute.
inline bool single_anticommutes(uint8_t a, uint8_t b) {
  unsigned x1 = a & 1u, z1 = (a >> 1) & 1u;
  unsigned x2 = b & 1u, z2 = (b >> 1) & 1u;
  return ((x1 & z2) ^ (z1 & x2)) != 0;
}

// Power of i in sigma_a * sigma_b = i^g * sigma_{a XOR b}.
int pauli_mul_phase(uint8_t a, uint8_t b);

// An n-qubit Pauli operator stored as X/Z bit masks plus a global phase
// exponent: P = i^phase * (letter_0 x letter_1 x ... x letter_{n-1}),
// where letter q is the I/X/Y/Z determined by bit q of the two masks.
// Qubit 0 is the leftmost character of a text label.
class PauliOp {
 public:
  PauliOp() = default;
  explicit PauliOp(std::size_t n_qubits);

  static PauliOp identity(std::size_t n_qubits);
  static PauliOp single(std::size_t n_qubits, std::size_t qubit, uint8_t code);
  // Accepts an optional "+", "-", "i", "-i" prefix followed by I/X/Y/Z letters.
  static PauliOp parse(const std::string& label);

  std::size_t n_qubits() const { return n_; }
  int phase() const { return phase_; }  // power of i, 0..3
  void set_phase(int p) { phase_ = ((p % 4) + 4) % 4; }
  void add_phase(int p) { set_phase(phase_ + p); }

  uint8_t letter(std::size_t q) const;
  void set_letter(std::size_t q, uint8_t code);

  std::size_t weight() const;
  bool is_identity() const { return weight() == 0; }
  bool is_hermitian() const { return (phase_ & 1) == 0; }

  // Right-multiplies by a single-qubit Pauli, tracking the phase exactly.
  void mul_single(std::size_t q, uint8_t code);

  // Clifford frame updates.
  void apply_hadamard(std::size_t q);  // X<->Z, Y -> -Y
  void apply_s(std::size_t q);         // X->Y, Y->-X, Z->Z
  void swap_qubits(std::size_t a, std::size_t b);
  void clear_qubit(std::size_t q);

  bool anticommutes_at(std::size_t q, uint8_t code) const {
    return single_anticommutes(letter(q), code);
  }

  std::string str() const;          // sign prefix + letters
  std::string letters() const;      // letters only

  PauliOp restricted(const std::vector<std::size_t>& qubits) const;
  // Places this operator's qubit q at position[q] of an n-qubit identity.
  PauliOp embedded(std::size_t n_qubits, const std::vector<std::size_t>& positions) const;

  const std::vector<uint64_t>& x_words() const { return x_; }
  const std::vector<uint64_t>& z_words() const { return z_; }

  bool same_letters(const PauliOp& other) const;
  bool operator==(const PauliOp& other) const;

  friend PauliOp multiply(const PauliOp& a, const PauliOp& b);
  friend bool commutes(const PauliOp& a, const PauliOp& b);

 private:
  std::size_t n_ = 0;
  int phase_ = 0;
  std::vector<uint64_t> x_, z_;
};

PauliOp multiply(const PauliOp& a, const PauliOp& b);
bool commutes(const PauliOp& a, const PauliOp& b);
std::size_t pauli_weight(const PauliOp& p);

}  // namespace gse
