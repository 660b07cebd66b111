#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gse/circuit.hpp"
#include "gse/encoding.hpp"

namespace gse {

// Hamiltonian Variational Ansatz term families, per straight edge or vertex.
enum class TermKind { B, BB, BA, AB };
std::string term_kind_name(TermKind k);

struct TermSpec {
  TermKind kind = TermKind::B;
  int edge = -1;    // for BB/BA/AB
  int vertex = -1;  // for B
};

struct EvolutionPlan {
  TermSpec term;
  std::vector<int> slots;        // conventional qubit order (4 for edges, 2 for a vertex)
  std::vector<uint8_t> letters;  // Pauli letter per slot (may be I)
  uint8_t q_choice = P_I;        // control Pauli paired with the evolved strand
  bool flag_second = false;      // flag the second nontrivial strand
  bool reflected = false;
  bool native_two_qubit = true;
  PauliOp evolved;    // data-qubit Pauli of the evolved operator, sign dropped
  std::string label;  // letters in conventional order, e.g. "ZXXY"
};

// Conventional qubit slots of a term: (j0,j1,k0,k1) with j the left/top
// vertex, or the vertex pair for B terms.
std::vector<int> term_slots(const Encoding& enc, const TermSpec& spec);
// The Hermitian representative of the evolved Pauli (phase dropped).
PauliOp term_pauli(const Encoding& enc, const TermSpec& spec);

// Syndrome-measurement gadget for one loop; the reduced variant uses the
// arm-and-swap sweep. Circuit qubits: all data + loop ancillas.
Circuit syndrome_measurement_circuit(const Encoding& enc, int loop_index, Connectivity conn);

// B_j measurement gadget (2 gates full, 2 swaps + 2 controlled reduced).
Circuit bj_measurement_circuit(const Encoding& enc, int vertex, Connectivity conn);

// Picks Q / flag / reflection so that exhaustive single-fault enumeration of
// the evolution gadget reports no undetectable logical outcome. Throws if no
// candidate passes, which would falsify the protected-evolution proposition.
EvolutionPlan plan_protected_evolution(const Encoding& enc, const TermSpec& spec,
                                       bool native_two_qubit = true);
// Same entry point for an arbitrary two-vertex logical operator given by its
// conventional-order label on the edge's slots.
EvolutionPlan plan_protected_evolution(const Encoding& enc, int edge, const std::string& label,
                                       bool native_two_qubit = true);

Circuit evolution_circuit(const Encoding& enc, const EvolutionPlan& plan, Connectivity conn);

// One measurement round of every loop operator. Under reduced connectivity
// all loops share the eight-column sweep, two-qubit depth 8.
Circuit syndrome_round(const Encoding& enc, Connectivity conn);

// Depth-one data preparation into B_j eigenstates followed by a full
// syndrome-measurement round.
Circuit state_prep_circuit(const Encoding& enc, const std::vector<uint8_t>& occupancies,
                           Connectivity conn);

// All HVA evolution layers: B, BB (h,v), BA (h,v), AB (h,v).
// n_params must equal the term count: vertices + 3 * straight edges.
Circuit hva_schedule(const Encoding& enc, Connectivity conn, std::size_t n_params);
std::vector<TermSpec> hva_terms(const Encoding& enc);

// Simultaneous B_j measurement of every vertex via an injective
// vertex-to-adjacent-ancilla matching.
Circuit bj_measurement_round(const Encoding& enc, Connectivity conn);
std::vector<int> bj_ancilla_matching(const Encoding& enc);

// Zero-state prep + ansatz + reversed ansatz + B_j readout + detection round.
Circuit error_detected_vqe_circuit(const Encoding& enc, Connectivity conn);

// Qubit pairs allowed to interact under reduced connectivity: intra-vertex
// pairs plus one arm per (loop ancilla, member vertex).
AdjacencySet reduced_adjacency(const Encoding& enc);

// Arm qubit a vertex presents to a loop's ancilla: the first qubit of the
// pair when the ancilla sits to the vertex's west, the second when east.
int arm_qubit(const Encoding& enc, int loop_index, int vertex);
// Ancilla used to evolve an edge term: south plaquette for horizontal edges,
// west for vertical, falling back across the boundary.
int evolution_ancilla(const Encoding& enc, int edge);

}  // namespace gse
