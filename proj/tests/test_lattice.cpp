#include <bit>
#include <set>

#include "doctest.h"
#include "gse/lattice.hpp"

using namespace gse;

TEST_CASE("4x4 planar counts") {
  auto g = InteractionGraph::planar(4, 4);
  CHECK(g.n_vertices() == 16);
  CHECK(g.n_straight_edges() == 24);
  CHECK(g.n_doubled_edges() == 8);
  CHECK(g.plaquettes.size() == 9);
  CHECK(g.bigons.size() == 8);
  for (int v = 0; v < g.n_vertices(); ++v) CHECK(g.degree(v) == 4);
}

TEST_CASE("2x2 planar counts") {
  auto g = InteractionGraph::planar(2, 2);
  CHECK(g.n_vertices() == 4);
  CHECK(g.n_straight_edges() == 4);
  CHECK(g.n_doubled_edges() == 4);
  CHECK(g.plaquettes.size() == 1);
  CHECK(g.bigons.size() == 4);
}

TEST_CASE("odd or tiny dimensions are rejected") {
  CHECK_THROWS_AS(InteractionGraph::planar(3, 4), std::invalid_argument);
  CHECK_THROWS_AS(InteractionGraph::planar(4, 3), std::invalid_argument);
  CHECK_THROWS_AS(InteractionGraph::planar(2, 1), std::invalid_argument);
  CHECK_THROWS_AS(InteractionGraph::torus(1, 4), std::invalid_argument);
}

TEST_CASE("torus counts") {
  auto g4 = InteractionGraph::torus(4, 4);
  CHECK(g4.n_vertices() == 16);
  CHECK(g4.edges.size() == 32);
  CHECK(g4.plaquettes.size() == 16);
  CHECK(g4.bigons.empty());
  for (int v = 0; v < g4.n_vertices(); ++v) CHECK(g4.degree(v) == 4);

  auto g2 = InteractionGraph::torus(2, 2);
  CHECK(g2.n_vertices() == 4);
  CHECK(g2.edges.size() == 8);
  CHECK(g2.plaquettes.size() == 4);
}

TEST_CASE("degree sum equals twice the edge count") {
  for (auto g : {InteractionGraph::planar(4, 4), InteractionGraph::planar(2, 4),
                 InteractionGraph::torus(3, 5)}) {
    int sum = 0;
    for (int v = 0; v < g.n_vertices(); ++v) sum += g.degree(v);
    CHECK(sum == 2 * int(g.edges.size()));
  }
}

TEST_CASE("plaquette corner order is NW,NE,SW,SE with row-major indexing") {
  auto g = InteractionGraph::planar(4, 4);
  const Plaquette& p = g.plaquettes[0];
  CHECK(p.nw == g.vertex(0, 0));
  CHECK(p.ne == g.vertex(0, 1));
  CHECK(p.sw == g.vertex(1, 0));
  CHECK(p.se == g.vertex(1, 1));
}

TEST_CASE("straight boundary edges lie in exactly one square and one bigon") {
  auto g = InteractionGraph::planar(4, 4);
  std::vector<int> square_count(g.edges.size(), 0), bigon_count(g.edges.size(), 0);
  for (const auto& p : g.plaquettes)
    for (int e : p.edge_ids) ++square_count[e];
  for (const auto& b : g.bigons) {
    ++bigon_count[b.straight_edge];
    ++bigon_count[b.doubled_edge];
  }
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    if (is_doubled(g.edges[e].kind)) {
      CHECK(square_count[e] == 0);
      CHECK(bigon_count[e] == 1);
      CHECK(g.edges[e].zero_weight);
    } else if (bigon_count[e] == 1) {
      CHECK(square_count[e] == 1);  // doubled boundary straight edge
    } else {
      CHECK((square_count[e] == 1 || square_count[e] == 2));
    }
  }
}

namespace {

// GF(2) rank of loop boundaries viewed as edge sets.
int edge_set_rank(const InteractionGraph& g) {
  std::vector<std::set<int>> rows;
  for (const auto& p : g.plaquettes) rows.emplace_back(p.edge_ids.begin(), p.edge_ids.end());
  for (const auto& b : g.bigons) rows.push_back({b.straight_edge, b.doubled_edge});
  std::vector<std::set<int>> basis;
  for (auto row : rows) {
    for (const auto& b : basis) {
      if (row.count(*b.begin())) {
        std::set<int> nxt;
        std::set_symmetric_difference(row.begin(), row.end(), b.begin(), b.end(),
                                      std::inserter(nxt, nxt.begin()));
        row = std::move(nxt);
      }
    }
    if (!row.empty()) basis.push_back(std::move(row));
  }
  return int(basis.size());
}

}  // namespace

TEST_CASE("plaquette and bigon boundaries generate the cycle space") {
  auto g = InteractionGraph::planar(4, 4);
  int cycle_rank = int(g.edges.size()) - g.n_vertices() + 1;
  CHECK(edge_set_rank(g) == cycle_rank);

  auto t = InteractionGraph::torus(4, 4);
  int torus_cycle_rank = int(t.edges.size()) - t.n_vertices() + 1;  // mn + 1
  CHECK(edge_set_rank(t) == torus_cycle_rank - 2);  // two handle classes are missing
}

TEST_CASE("graph JSON export carries the fixture fields") {
  auto j = InteractionGraph::planar(2, 2).to_json();
  CHECK(j["rows"] == 2);
  CHECK(j["edges"].size() == 8);
  CHECK(j["plaquettes"].size() == 1);
  CHECK(j["bigons"].size() == 4);
}
