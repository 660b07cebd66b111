#include "gse/encoding.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <stdexcept>

namespace gse {

std::string pauli_class_name(PauliClass c) {
  switch (c) {
    case PauliClass::trivial: return "trivial";
    case PauliClass::stabilizer: return "stabilizer";
    case PauliClass::detectable: return "detectable";
    case PauliClass::logical: return "logical";
  }
  return "?";
}

const char* Encoding::gamma_letters(Dir d) {
  // Half-edge Pauli pairs, chosen so that horizontal edge operators come
  // out +-IZXY, vertical ones +-IXYY, and interior loops IYXZYXZI.
  switch (d) {
    case Dir::left: return "XY";
    case Dir::up: return "YY";
    case Dir::right: return "IZ";
    case Dir::down: return "IX";
  }
  return "II";
}

PauliOp Encoding::gamma(int vertex, Dir d) const {
  const char* s = gamma_letters(d);
  PauliOp p(n_data());
  p.set_letter(qubit(vertex, 0), pauli_code(s[0]));
  p.set_letter(qubit(vertex, 1), pauli_code(s[1]));
  return p;
}

Encoding Encoding::build(const InteractionGraph& graph) {
  Encoding enc;
  enc.graph_ = graph;
  enc.edge_signs_.assign(graph.edges.size(), +1);
  enc.rebuild_loops();
  return enc;
}

PauliOp Encoding::edge_op(int edge_id) const {
  const Edge& e = graph_.edges[edge_id];
  PauliOp p = multiply(gamma(e.j, e.half_j), gamma(e.k, e.half_k));
  int sign = e.eps * edge_signs_[edge_id];
  if (sign < 0) p.add_phase(2);
  return p;
}

PauliOp Encoding::edge_op_directed(int edge_id, int from_vertex) const {
  const Edge& e = graph_.edges[edge_id];
  PauliOp p = edge_op(edge_id);
  if (from_vertex == e.k) p.add_phase(2);  // A_{kj} = -A_{jk}
  else if (from_vertex != e.j) throw std::invalid_argument("vertex not on edge");
  return p;
}

PauliOp Encoding::vertex_op(int vertex) const {
  // B = (-i)^2 * gamma_1 gamma_2 gamma_3 gamma_4 in half-edge index order.
  PauliOp b = gamma(vertex, Dir::left);
  b = multiply(b, gamma(vertex, Dir::up));
  b = multiply(b, gamma(vertex, Dir::right));
  b = multiply(b, gamma(vertex, Dir::down));
  b.add_phase(2);
  return b;
}

void Encoding::rebuild_loops() {
  loops_.clear();
  for (std::size_t pi = 0; pi < graph_.plaquettes.size(); ++pi) {
    const Plaquette& p = graph_.plaquettes[pi];
    // Cycle NW -> NE -> SE -> SW -> NW, i^4 * product of directed edge ops.
    PauliOp op = edge_op_directed(p.edge_ids[0], p.nw);
    op = multiply(op, edge_op_directed(p.edge_ids[1], p.ne));
    op = multiply(op, edge_op_directed(p.edge_ids[2], p.se));
    op = multiply(op, edge_op_directed(p.edge_ids[3], p.sw));
    Loop l;
    l.kind = {false, int(pi)};
    l.vertices = {p.nw, p.ne, p.sw, p.se};
    l.edge_ids = {p.edge_ids.begin(), p.edge_ids.end()};
    l.op = op;
    loops_.push_back(std::move(l));
  }
  for (std::size_t bi = 0; bi < graph_.bigons.size(); ++bi) {
    const Bigon& b = graph_.bigons[bi];
    PauliOp op = edge_op_directed(b.straight_edge, b.j);
    op = multiply(op, edge_op_directed(b.doubled_edge, b.k));
    op.add_phase(2);  // i^2
    Loop l;
    l.kind = {true, int(bi)};
    l.vertices = {b.j, b.k};
    l.edge_ids = {b.straight_edge, b.doubled_edge};
    l.op = op;
    loops_.push_back(std::move(l));
  }
  for (const Loop& l : loops_)
    if (!l.op.is_hermitian()) throw std::logic_error("loop operator is not Hermitian");
  build_membership_basis();
}

int Encoding::square_loop_index(int pr, int pc) const {
  int pcols = graph_.topology == Topology::torus ? graph_.cols : graph_.cols - 1;
  return pr * pcols + pc;
}

int Encoding::bigon_loop_index(int bigon) const {
  return int(graph_.plaquettes.size()) + bigon;
}

std::vector<std::size_t> Encoding::loop_support_qubits(int i) const {
  std::vector<std::size_t> qs;
  for (int v : loops_[i].vertices) {
    qs.push_back(qubit(v, 0));
    qs.push_back(qubit(v, 1));
  }
  return qs;
}

std::string Encoding::loop_local_label(int i) const {
  return loops_[i].op.restricted(loop_support_qubits(i)).str();
}

namespace {

// Packed (x|z) mask of a PauliOp for GF(2) elimination.
std::vector<uint64_t> packed_mask(const PauliOp& p) {
  std::vector<uint64_t> row = p.x_words();
  row.insert(row.end(), p.z_words().begin(), p.z_words().end());
  return row;
}

bool reduce_row(std::vector<uint64_t>& row, const std::vector<std::vector<uint64_t>>& basis,
                const std::vector<std::size_t>& pivots) {
  for (std::size_t i = 0; i < basis.size(); ++i) {
    std::size_t p = pivots[i];
    if ((row[p >> 6] >> (p & 63)) & 1u)
      for (std::size_t w = 0; w < row.size(); ++w) row[w] ^= basis[i][w];
  }
  for (uint64_t w : row)
    if (w) return false;
  return true;
}

std::size_t first_set_bit(const std::vector<uint64_t>& row) {
  for (std::size_t w = 0; w < row.size(); ++w)
    if (row[w]) return w * 64 + std::size_t(std::countr_zero(row[w]));
  return std::size_t(-1);
}

}  // namespace

void Encoding::build_membership_basis() {
  basis_rows_.clear();
  basis_pivots_.clear();
  for (const Loop& l : loops_) {
    auto row = packed_mask(l.op);
    if (reduce_row(row, basis_rows_, basis_pivots_)) continue;  // dependent generator
    basis_pivots_.push_back(first_set_bit(row));
    basis_rows_.push_back(std::move(row));
  }
  rank_ = int(basis_rows_.size());
}

bool Encoding::in_stabilizer_group(const PauliOp& p) const {
  auto row = packed_mask(p);
  return reduce_row(row, basis_rows_, basis_pivots_);
}

std::vector<uint8_t> Encoding::syndrome(const PauliOp& err) const {
  if (int(err.n_qubits()) != n_data())
    throw std::invalid_argument("syndrome: error must act on the data qubits");
  std::vector<uint8_t> s(loops_.size(), 0);
  for (std::size_t i = 0; i < loops_.size(); ++i) s[i] = commutes(loops_[i].op, err) ? 0 : 1;
  return s;
}

bool Encoding::zero_syndrome(const PauliOp& err) const {
  for (const Loop& l : loops_)
    if (!commutes(l.op, err)) return false;
  return true;
}

PauliClass Encoding::classify(const PauliOp& p) const {
  if (p.is_identity()) return PauliClass::trivial;
  if (!zero_syndrome(p)) return PauliClass::detectable;
  return in_stabilizer_group(p) ? PauliClass::stabilizer : PauliClass::logical;
}

std::vector<std::pair<std::string, PauliOp>> Encoding::enumerate_two_vertex_logicals(
    int edge_id) const {
  const Edge& e = graph_.edges[edge_id];
  std::vector<std::size_t> qs = {std::size_t(qubit(e.j, 0)), std::size_t(qubit(e.j, 1)),
                                 std::size_t(qubit(e.k, 0)), std::size_t(qubit(e.k, 1))};
  std::vector<std::pair<std::string, PauliOp>> out;
  for (int code = 1; code < 256; ++code) {
    PauliOp local(4);
    for (int q = 0; q < 4; ++q) local.set_letter(q, uint8_t((code >> (2 * q)) & 3));
    PauliOp full = local.embedded(n_data(), qs);
    if (!zero_syndrome(full)) continue;
    out.emplace_back(local.letters(), full);
  }
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

DistanceReport Encoding::verify_detection_distance() const {
  DistanceReport rep;
  for (int q = 0; q < n_data(); ++q)
    for (uint8_t code : {P_X, P_Y, P_Z}) {
      ++rep.checked;
      PauliOp p = PauliOp::single(n_data(), q, code);
      if (classify(p) != PauliClass::detectable)
        rep.violations.push_back(std::string(1, pauli_char(code)) + " on qubit " +
                                 std::to_string(q));
    }
  return rep;
}

Encoding Encoding::fix_signs(const std::vector<int>& defective_loops) const {
  if (defective_loops.size() % 2 != 0)
    throw std::invalid_argument("fix_signs: defective loop set must have even size");
  for (int d : defective_loops)
    if (d < 0 || d >= n_loops()) throw std::invalid_argument("fix_signs: loop index out of range");

  // Loop-adjacency graph: two loops are neighbors when they share a lattice edge.
  std::map<int, std::vector<std::pair<int, int>>> edge_members;  // edge -> (loop, edge)
  for (int li = 0; li < n_loops(); ++li)
    for (int e : loops_[li].edge_ids) edge_members[e].push_back({li, e});
  std::vector<std::vector<std::pair<int, int>>> nbr(n_loops());  // loop -> (other loop, shared edge)
  for (const auto& [e, members] : edge_members)
    for (std::size_t a = 0; a < members.size(); ++a)
      for (std::size_t b = 0; b < members.size(); ++b)
        if (a != b) nbr[members[a].first].push_back({members[b].first, e});

  auto bfs = [&](int src) {
    std::vector<int> dist(n_loops(), -1), via_edge(n_loops(), -1), parent(n_loops(), -1);
    std::deque<int> q{src};
    dist[src] = 0;
    while (!q.empty()) {
      int u = q.front();
      q.pop_front();
      for (auto [v, e] : nbr[u])
        if (dist[v] < 0) {
          dist[v] = dist[u] + 1;
          parent[v] = u;
          via_edge[v] = e;
          q.push_back(v);
        }
    }
    return std::make_tuple(dist, parent, via_edge);
  };

  Encoding enc = *this;
  std::set<int> open(defective_loops.begin(), defective_loops.end());
  if (open.size() % 2 != 0)
    throw std::invalid_argument("fix_signs: defective loop set must have even size");
  while (!open.empty()) {
    // Greedy closest pair, ties broken by loop index.
    int best_a = -1, best_b = -1, best_d = -1;
    for (int a : open) {
      auto [dist, parent, via] = bfs(a);
      for (int b : open) {
        if (b == a) continue;
        if (dist[b] < 0) throw std::logic_error("fix_signs: loop adjacency graph disconnected");
        if (best_d < 0 || dist[b] < best_d ||
            (dist[b] == best_d && std::pair(a, b) < std::pair(best_a, best_b))) {
          best_d = dist[b];
          best_a = a;
          best_b = b;
        }
      }
    }
    auto [dist, parent, via] = bfs(best_a);
    for (int v = best_b; v != best_a; v = parent[v]) enc.edge_signs_[via[v]] *= -1;
    open.erase(best_a);
    open.erase(best_b);
  }
  enc.rebuild_loops();
  return enc;
}

nlohmann::json Encoding::operators_json() const {
  nlohmann::json j;
  j["n_data_qubits"] = n_data();
  j["edge_operators"] = nlohmann::json::array();
  for (std::size_t e = 0; e < graph_.edges.size(); ++e) {
    const Edge& ed = graph_.edges[e];
    PauliOp a = edge_op(int(e));
    std::vector<std::size_t> qs = {std::size_t(qubit(ed.j, 0)), std::size_t(qubit(ed.j, 1)),
                                   std::size_t(qubit(ed.k, 0)), std::size_t(qubit(ed.k, 1))};
    j["edge_operators"].push_back({{"j", ed.j},
                                   {"k", ed.k},
                                   {"kind", edge_kind_name(ed.kind)},
                                   {"label", a.restricted(qs).str()}});
  }
  j["vertex_operators"] = nlohmann::json::array();
  for (int v = 0; v < graph_.n_vertices(); ++v) {
    std::vector<std::size_t> qs = {std::size_t(qubit(v, 0)), std::size_t(qubit(v, 1))};
    j["vertex_operators"].push_back({{"vertex", v}, {"label", vertex_op(v).restricted(qs).str()}});
  }
  j["loop_operators"] = nlohmann::json::array();
  for (int i = 0; i < n_loops(); ++i)
    j["loop_operators"].push_back({{"kind", loops_[i].kind.is_bigon ? "bigon" : "square"},
                                   {"index", loops_[i].kind.index},
                                   {"vertices", loops_[i].vertices},
                                   {"label", loop_local_label(i)}});
  j["stabilizer_rank"] = rank_;
  return j;
}

}  // namespace gse
