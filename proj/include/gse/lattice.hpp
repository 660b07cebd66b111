#pragma once

#include <array>
#include <string>
#include <vector>

#include "json.hpp"

namespace gse {

enum class Topology { planar_doubled, torus };

enum class EdgeKind {
  horizontal,
  vertical,
  doubled_top,
  doubled_bottom,
  doubled_left,
  doubled_right
};

bool is_doubled(EdgeKind k);
std::string edge_kind_name(EdgeKind k);

// Half-edge directions at a vertex, indexed as in the gamma assignment:
// left=1, up=2, right=3, down=4 (stored 0-based).
enum class Dir { left = 0, up = 1, right = 2, down = 3 };

struct Edge {
  int j = -1, k = -1;  // canonical endpoints: j is the left/top vertex
  Dir half_j = Dir::left, half_k = Dir::left;
  int eps = +1;  // +1: positive orientation is j->k, -1: k->j
  EdgeKind kind = EdgeKind::horizontal;
  bool zero_weight = false;
};

// Square plaquette with corners in NW,NE,SW,SE order and its boundary
// edges in top,right,bottom,left order.
struct Plaquette {
  int nw = -1, ne = -1, sw = -1, se = -1;
  std::array<int, 4> edge_ids{};
};

// Two-cycle formed by a boundary edge and its zero-weight double.
struct Bigon {
  int j = -1, k = -1;  // j is the left/top vertex
  int straight_edge = -1;
  int doubled_edge = -1;
  EdgeKind side = EdgeKind::doubled_top;
};

// Hubbard interaction graph with degree four at every vertex.
class InteractionGraph {
 public:
  static InteractionGraph planar(int rows, int cols);
  static InteractionGraph torus(int rows, int cols);

  int rows = 0, cols = 0;
  Topology topology = Topology::planar_doubled;
  std::vector<Edge> edges;
  std::vector<Plaquette> plaquettes;
  std::vector<Bigon> bigons;

  int n_vertices() const { return rows * cols; }
  int vertex(int r, int c) const { return r * cols + c; }
  int row_of(int v) const { return v / cols; }
  int col_of(int v) const { return v % cols; }
  int degree(int v) const;
  std::size_t n_straight_edges() const;
  std::size_t n_doubled_edges() const;

  // Edge ids of the interacting (non-doubled) edges, row-major, split by kind.
  std::vector<int> straight_edges(EdgeKind kind) const;

  nlohmann::json to_json() const;

 private:
  void check_degrees() const;
};

}  // namespace gse
