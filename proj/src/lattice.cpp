#include "gse/lattice.hpp"

#include <map>
#include <stdexcept>

namespace gse {

bool is_doubled(EdgeKind k) {
  return k == EdgeKind::doubled_top || k == EdgeKind::doubled_bottom ||
         k == EdgeKind::doubled_left || k == EdgeKind::doubled_right;
}

std::string edge_kind_name(EdgeKind k) {
  switch (k) {
    case EdgeKind::horizontal: return "horizontal";
    case EdgeKind::vertical: return "vertical";
    case EdgeKind::doubled_top: return "doubled_top";
    case EdgeKind::doubled_bottom: return "doubled_bottom";
    case EdgeKind::doubled_left: return "doubled_left";
    case EdgeKind::doubled_right: return "doubled_right";
  }
  return "?";
}

namespace {

// Horizontal edges in odd rows and the left doubled edges are stored with
// reversed positive orientation. Together with the arrow conventions of the
// boundary arcs this makes every square loop come out as +IYXZYXZI while
// keeping the bigon loops at -YXZI, -IYYX, -IYXZ, -XZZI.
int horizontal_eps(int row) { return (row % 2 == 0) ? +1 : -1; }

}  // namespace

InteractionGraph InteractionGraph::planar(int rows, int cols) {
  if (rows < 2 || cols < 2) throw std::invalid_argument("planar lattice needs rows,cols >= 2");
  if (rows % 2 != 0 || cols % 2 != 0)
    throw std::invalid_argument("planar lattice needs even numbers of rows and columns");

  InteractionGraph g;
  g.rows = rows;
  g.cols = cols;
  g.topology = Topology::planar_doubled;

  std::map<std::pair<int, int>, int> hedge, vedge;  // (r,c) -> edge id
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c + 1 < cols; ++c) {
      hedge[{r, c}] = int(g.edges.size());
      g.edges.push_back({g.vertex(r, c), g.vertex(r, c + 1), Dir::right, Dir::left,
                         horizontal_eps(r), EdgeKind::horizontal, false});
    }
  for (int r = 0; r + 1 < rows; ++r)
    for (int c = 0; c < cols; ++c) {
      vedge[{r, c}] = int(g.edges.size());
      g.edges.push_back({g.vertex(r, c), g.vertex(r + 1, c), Dir::down, Dir::up, +1,
                         EdgeKind::vertical, false});
    }

  auto add_bigon = [&g](int j, int k, Dir half, int eps, EdgeKind kind, int straight) {
    int d = int(g.edges.size());
    g.edges.push_back({j, k, half, half, eps, kind, true});
    g.bigons.push_back({j, k, straight, d, kind});
  };
  for (int c = 0; c + 1 < cols; c += 2)
    add_bigon(g.vertex(0, c), g.vertex(0, c + 1), Dir::up, -1, EdgeKind::doubled_top, hedge[{0, c}]);
  for (int c = 0; c + 1 < cols; c += 2)
    add_bigon(g.vertex(rows - 1, c), g.vertex(rows - 1, c + 1), Dir::down, +1,
              EdgeKind::doubled_bottom, hedge[{rows - 1, c}]);
  for (int r = 0; r + 1 < rows; r += 2)
    add_bigon(g.vertex(r, 0), g.vertex(r + 1, 0), Dir::left, -1, EdgeKind::doubled_left,
              vedge[{r, 0}]);
  for (int r = 0; r + 1 < rows; r += 2)
    add_bigon(g.vertex(r, cols - 1), g.vertex(r + 1, cols - 1), Dir::right, -1,
              EdgeKind::doubled_right, vedge[{r, cols - 1}]);

  for (int r = 0; r + 1 < rows; ++r)
    for (int c = 0; c + 1 < cols; ++c) {
      Plaquette p;
      p.nw = g.vertex(r, c);
      p.ne = g.vertex(r, c + 1);
      p.sw = g.vertex(r + 1, c);
      p.se = g.vertex(r + 1, c + 1);
      p.edge_ids = {hedge[{r, c}], vedge[{r, c + 1}], hedge[{r + 1, c}], vedge[{r, c}]};
      g.plaquettes.push_back(p);
    }

  g.check_degrees();
  return g;
}

InteractionGraph InteractionGraph::torus(int rows, int cols) {
  if (rows < 2 || cols < 2) throw std::invalid_argument("toroidal lattice needs rows,cols >= 2");

  InteractionGraph g;
  g.rows = rows;
  g.cols = cols;
  g.topology = Topology::torus;

  std::map<std::pair<int, int>, int> hedge, vedge;  // keyed by source (r,c)
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) {
      hedge[{r, c}] = int(g.edges.size());
      g.edges.push_back({g.vertex(r, c), g.vertex(r, (c + 1) % cols), Dir::right, Dir::left,
                         horizontal_eps(r), EdgeKind::horizontal, false});
    }
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) {
      vedge[{r, c}] = int(g.edges.size());
      g.edges.push_back({g.vertex(r, c), g.vertex((r + 1) % rows, c), Dir::down, Dir::up, +1,
                         EdgeKind::vertical, false});
    }

  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) {
      Plaquette p;
      p.nw = g.vertex(r, c);
      p.ne = g.vertex(r, (c + 1) % cols);
      p.sw = g.vertex((r + 1) % rows, c);
      p.se = g.vertex((r + 1) % rows, (c + 1) % cols);
      p.edge_ids = {hedge[{r, c}], vedge[{r, (c + 1) % cols}], hedge[{(r + 1) % rows, c}],
                    vedge[{r, c}]};
      g.plaquettes.push_back(p);
    }

  g.check_degrees();
  return g;
}

int InteractionGraph::degree(int v) const {
  int d = 0;
  for (const auto& e : edges) d += int(e.j == v) + int(e.k == v);
  return d;
}

std::size_t InteractionGraph::n_straight_edges() const {
  std::size_t c = 0;
  for (const auto& e : edges) c += !is_doubled(e.kind);
  return c;
}

std::size_t InteractionGraph::n_doubled_edges() const { return edges.size() - n_straight_edges(); }

std::vector<int> InteractionGraph::straight_edges(EdgeKind kind) const {
  std::vector<int> out;
  for (std::size_t i = 0; i < edges.size(); ++i)
    if (edges[i].kind == kind) out.push_back(int(i));
  return out;
}

void InteractionGraph::check_degrees() const {
  // Every half-edge of every vertex must be used exactly once.
  std::vector<std::array<int, 4>> used(n_vertices(), {0, 0, 0, 0});
  for (const auto& e : edges) {
    ++used[e.j][int(e.half_j)];
    ++used[e.k][int(e.half_k)];
  }
  for (int v = 0; v < n_vertices(); ++v)
    for (int d = 0; d < 4; ++d)
      if (used[v][d] != 1) throw std::logic_error("half-edge assignment is not a perfect cover");
}

nlohmann::json InteractionGraph::to_json() const {
  nlohmann::json j;
  j["rows"] = rows;
  j["cols"] = cols;
  j["topology"] = topology == Topology::torus ? "torus" : "planar_doubled";
  j["edges"] = nlohmann::json::array();
  for (const auto& e : edges)
    j["edges"].push_back({{"j", e.j},
                          {"k", e.k},
                          {"eps", e.eps},
                          {"kind", edge_kind_name(e.kind)},
                          {"weight", e.zero_weight ? "zero_weight" : "interacting"}});
  j["plaquettes"] = nlohmann::json::array();
  for (const auto& p : plaquettes) j["plaquettes"].push_back({p.nw, p.ne, p.sw, p.se});
  j["bigons"] = nlohmann::json::array();
  for (const auto& b : bigons)
    j["bigons"].push_back({{"j", b.j}, {"k", b.k}, {"side", edge_kind_name(b.side)}});
  return j;
}

}  // namespace gse
