#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "gse/pauli.hpp"

namespace gse {

enum class Connectivity { full, reduced };

enum class GateKind {
  prep_zero,   // reset qubit to |0>
  cp,          // Pauli-controlled Pauli: p0 on q0, p1 on q1 (symmetric)
  hadamard,
  s_gate,
  pauli_gate,  // fixed 1q Pauli, frame-trivial
  swap_gate,
  evolve_1,    // e^{-i p0 t} on q0, symbolic angle
  evolve_2,    // e^{-i p0 p1 t} on (q0, q1), symbolic angle
  measure_z
};

struct Gate {
  GateKind kind;
  int q0 = -1, q1 = -1;
  uint8_t p0 = P_I, p1 = P_I;
  int t_sign = +1;  // symbolic angle sign for evolve gates

  bool is_two_qubit() const {
    return kind == GateKind::cp || kind == GateKind::swap_gate || kind == GateKind::evolve_2;
  }
};

Gate make_prep(int q);
Gate make_cp(uint8_t p, int q, uint8_t r, int target);
Gate make_h(int q);
Gate make_s(int q);
Gate make_pauli(uint8_t p, int q);
Gate make_swap(int a, int b);
Gate make_ev1(uint8_t p, int q, int t_sign = +1);
Gate make_ev2(uint8_t p, int a, uint8_t r, int b, int t_sign = +1);
Gate make_mz(int q);

struct Resources {
  int two_qubit_gates = 0;
  int total_gates = 0;
  int depth = 0;       // ASAP layering over two-qubit gates only
  int full_depth = 0;  // ASAP layering over every gate including preps and measurements
  int measurements = 0;
};

// Ordered gate list over a fixed qubit numbering. Data qubits come first;
// ancillas (syndrome, flag, workspace) follow.
struct Circuit {
  std::string name;
  int n_qubits = 0;
  int n_data = 0;
  Connectivity connectivity = Connectivity::full;
  std::vector<Gate> gates;
  std::optional<PauliOp> evolved_op;        // on data qubits, for evolution gadgets
  std::vector<int> central_evolve_indices;  // gate indices of e^{-iPt} cores
  std::vector<int> flag_qubits;
  std::vector<int> result_measurements;  // gate indices of result (not check) readouts

  void push(const Gate& g) { gates.push_back(g); }
  // swap_cost: two-qubit gates contributed by one swap (1, or 3 for expanded CNOT accounting)
  Resources count_resources(int swap_cost = 1) const;
  std::vector<std::size_t> touched_qubits() const;
  std::string qubit_name(int q) const;
  std::string serialize() const;
};

// Unordered pair set describing which qubit pairs may interact.
struct AdjacencySet {
  std::set<std::pair<int, int>> pairs;
  void add(int a, int b);
  bool allowed(int a, int b) const;
};

// Throws std::logic_error naming the first offending gate, if any.
void validate_connectivity(const Circuit& c, const AdjacencySet& adj);

}  // namespace gse
