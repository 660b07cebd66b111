#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gse/lattice.hpp"
#include "gse/pauli.hpp"
#include "json.hpp"

namespace gse {

enum class PauliClass { trivial, stabilizer, detectable, logical };
std::string pauli_class_name(PauliClass c);

struct LoopKind {
  bool is_bigon = false;
  int index = 0;  // plaquette or bigon index
};

// One stabilizer generator: a loop operator with its support bookkeeping.
struct Loop {
  LoopKind kind;
  std::vector<int> vertices;   // squares: NW,NE,SW,SE; bigons: j,k
  std::vector<int> edge_ids;   // boundary edges
  PauliOp op;                  // on data qubits, signed
};

struct DistanceReport {
  int checked = 0;
  std::vector<std::string> violations;  // weight-1 errors not classified detectable
  bool ok() const { return violations.empty(); }
};

// The generalized superfast encoding of the spinless Hubbard graph as a
// stabilizer code. Vertex v owns data qubits (2v, 2v+1); each loop operator
// is assigned one syndrome ancilla placed after the data block.
class Encoding {
 public:
  static Encoding build(const InteractionGraph& graph);

  const InteractionGraph& graph() const { return graph_; }
  int n_data() const { return 2 * graph_.n_vertices(); }
  int n_loops() const { return int(loops_.size()); }
  int n_qubits() const { return n_data() + n_loops(); }  // data + syndrome ancillas

  int qubit(int vertex, int which) const { return 2 * vertex + which; }
  int ancilla(int loop) const { return n_data() + loop; }

  // Half-edge operator gamma_{v,d} embedded on the data qubits.
  PauliOp gamma(int vertex, Dir d) const;
  static const char* gamma_letters(Dir d);

  // A_{jk} for the stored canonical orientation (j->k), including the edge sign.
  PauliOp edge_op(int edge_id) const;
  // A along the traversal v->w of the given edge.
  PauliOp edge_op_directed(int edge_id, int from_vertex) const;
  PauliOp vertex_op(int vertex) const;  // B_j

  const std::vector<Loop>& loops() const { return loops_; }
  const Loop& loop(int i) const { return loops_[i]; }
  int square_loop_index(int pr, int pc) const;  // by plaquette grid position
  int bigon_loop_index(int bigon) const;
  // Loop operator restricted to its own vertices' qubits, e.g. "IYXZYXZI".
  std::string loop_local_label(int i) const;
  std::vector<std::size_t> loop_support_qubits(int i) const;

  int edge_sign(int edge_id) const { return edge_signs_[edge_id]; }

  std::vector<uint8_t> syndrome(const PauliOp& err) const;
  bool zero_syndrome(const PauliOp& err) const;
  PauliClass classify(const PauliOp& p) const;
  bool in_stabilizer_group(const PauliOp& p) const;  // modulo phase
  int stabilizer_rank() const { return rank_; }

  // All nontrivial Paulis supported on the edge's two vertices that commute
  // with every stabilizer: 7 on a single edge, 15 on a doubled pair.
  std::vector<std::pair<std::string, PauliOp>> enumerate_two_vertex_logicals(int edge_id) const;

  // Returns a new encoding whose loop signs are flipped exactly on the given
  // loops, realized by negating edge operators along pairing paths.
  Encoding fix_signs(const std::vector<int>& defective_loops) const;

  DistanceReport verify_detection_distance() const;

  nlohmann::json operators_json() const;

 private:
  Encoding() = default;
  void rebuild_loops();
  void build_membership_basis();

  InteractionGraph graph_;
  std::vector<int> edge_signs_;
  std::vector<Loop> loops_;

  // Z2 row basis of stabilizer (x|z) masks for membership tests.
  std::vector<std::vector<uint64_t>> basis_rows_;
  std::vector<std::size_t> basis_pivots_;
  int rank_ = 0;
};

}  // namespace gse
