#include "gse/circuit.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace gse {

Gate make_prep(int q) { return {GateKind::prep_zero, q, -1, P_I, P_I}; }
Gate make_cp(uint8_t p, int q, uint8_t r, int target) {
  if (p == P_I || r == P_I) throw std::invalid_argument("controlled-Pauli needs non-identity Paulis");
  return {GateKind::cp, q, target, p, r};
}
Gate make_h(int q) { return {GateKind::hadamard, q, -1, P_I, P_I}; }
Gate make_s(int q) { return {GateKind::s_gate, q, -1, P_I, P_I}; }
Gate make_pauli(uint8_t p, int q) { return {GateKind::pauli_gate, q, -1, p, P_I}; }
Gate make_swap(int a, int b) { return {GateKind::swap_gate, a, b, P_I, P_I}; }
Gate make_ev1(uint8_t p, int q, int t_sign) { return {GateKind::evolve_1, q, -1, p, P_I, t_sign}; }
Gate make_ev2(uint8_t p, int a, uint8_t r, int b, int t_sign) {
  return {GateKind::evolve_2, a, b, p, r, t_sign};
}
Gate make_mz(int q) { return {GateKind::measure_z, q, -1, P_I, P_I}; }

Resources Circuit::count_resources(int swap_cost) const {
  Resources res;
  std::vector<int> layer2q(n_qubits, 0), layer_all(n_qubits, 0);
  for (const Gate& g : gates) {
    ++res.total_gates;
    if (g.kind == GateKind::measure_z) ++res.measurements;
    bool two = g.is_two_qubit();
    if (two) res.two_qubit_gates += (g.kind == GateKind::swap_gate) ? swap_cost : 1;

    int la = layer_all[g.q0];
    if (g.q1 >= 0) la = std::max(la, layer_all[g.q1]);
    ++la;
    layer_all[g.q0] = la;
    if (g.q1 >= 0) layer_all[g.q1] = la;
    res.full_depth = std::max(res.full_depth, la);

    if (two) {
      int l = std::max(layer2q[g.q0], layer2q[g.q1]) + 1;
      layer2q[g.q0] = layer2q[g.q1] = l;
      res.depth = std::max(res.depth, l);
    }
  }
  return res;
}

std::vector<std::size_t> Circuit::touched_qubits() const {
  std::vector<bool> seen(n_qubits, false);
  for (const Gate& g : gates) {
    seen[g.q0] = true;
    if (g.q1 >= 0) seen[g.q1] = true;
  }
  std::vector<std::size_t> out;
  for (int q = 0; q < n_qubits; ++q)
    if (seen[q]) out.push_back(q);
  return out;
}

std::string Circuit::qubit_name(int q) const {
  return q < n_data ? "q" + std::to_string(q) : "a" + std::to_string(q - n_data);
}

std::string Circuit::serialize() const {
  std::ostringstream os;
  for (const Gate& g : gates) {
    switch (g.kind) {
      case GateKind::prep_zero: os << "P0 " << qubit_name(g.q0); break;
      case GateKind::cp:
        os << "CP " << pauli_char(g.p0) << ' ' << qubit_name(g.q0) << ' ' << pauli_char(g.p1)
           << ' ' << qubit_name(g.q1);
        break;
      case GateKind::hadamard: os << "H " << qubit_name(g.q0); break;
      case GateKind::s_gate: os << "S " << qubit_name(g.q0); break;
      case GateKind::pauli_gate: os << pauli_char(g.p0) << ' ' << qubit_name(g.q0); break;
      case GateKind::swap_gate:
        os << "SWAP " << qubit_name(g.q0) << ' ' << qubit_name(g.q1);
        break;
      case GateKind::evolve_1:
        os << "EV1 " << pauli_char(g.p0) << ' ' << qubit_name(g.q0) << (g.t_sign < 0 ? " -t" : " t");
        break;
      case GateKind::evolve_2:
        os << "EV2 " << pauli_char(g.p0) << ' ' << pauli_char(g.p1) << ' ' << qubit_name(g.q0)
           << ' ' << qubit_name(g.q1) << (g.t_sign < 0 ? " -t" : " t");
        break;
      case GateKind::measure_z: os << "MZ " << qubit_name(g.q0); break;
    }
    os << '\n';
  }
  return os.str();
}

void AdjacencySet::add(int a, int b) { pairs.insert({std::min(a, b), std::max(a, b)}); }

bool AdjacencySet::allowed(int a, int b) const {
  return pairs.count({std::min(a, b), std::max(a, b)}) > 0;
}

void validate_connectivity(const Circuit& c, const AdjacencySet& adj) {
  for (std::size_t i = 0; i < c.gates.size(); ++i) {
    const Gate& g = c.gates[i];
    if (!g.is_two_qubit()) continue;
    if (!adj.allowed(g.q0, g.q1))
      throw std::logic_error("gate " + std::to_string(i) + " of '" + c.name + "' acts on (" +
                             c.qubit_name(g.q0) + "," + c.qubit_name(g.q1) +
                             ") which are not adjacent");
  }
}

}  // namespace gse
