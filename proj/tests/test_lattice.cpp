#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "mielab/lattice.hpp"

using namespace mielab;

TEST_CASE("square lattice edges and indexing") {
  SiteLattice lat = build_lattice(LatticeKind::square, 3, 4);
  CHECK(lat.sites() == 12);
  CHECK(lat.edges.size() == 2 * 4 + 3 * 3);  // horizontal + vertical
  for (int i = 0; i < lat.sites(); ++i) {
    auto [x, y] = lat.coords(i);
    CHECK(lat.index(x, y) == i);
  }
  std::set<std::pair<int, int>> uniq(lat.edges.begin(), lat.edges.end());
  CHECK(uniq.size() == lat.edges.size());
  for (auto [u, v] : lat.edges) CHECK(u < v);
}

TEST_CASE("triangular lattice degree structure") {
  SiteLattice lat = build_lattice(LatticeKind::triangular, 3, 3);
  CHECK(lat.edges.size() == 16);
  auto adj = lat.adjacency();
  CHECK(adj[4].size() == 6);  // interior site
}

TEST_CASE("strip partition") {
  SiteLattice lat = build_lattice(LatticeKind::square, 3, 4);
  RegionPartition p = strip_partition(lat);
  CHECK(p.A == std::vector<int>{0, 1, 2});
  CHECK(p.C == std::vector<int>{9, 10, 11});
  CHECK(p.B.size() == 6);
  CHECK(p.geometry == Geometry::strip);
}

TEST_CASE("bulk triple partition") {
  SiteLattice lat = build_lattice(LatticeKind::square, 4, 4);
  RegionPartition p = bulk_triple_partition(lat, 5, 6, 10);
  CHECK(p.A == std::vector<int>{5});
  CHECK(p.C == std::vector<int>{6, 10});
  CHECK(p.B.size() == 13);
}

TEST_CASE("dual graph of a square lattice") {
  SiteLattice lat = build_lattice(LatticeKind::square, 3, 3);
  DualGraph d = dual_graph(lat);
  CHECK(d.n_interior == 4);  // (Lx-1)*(Ly-1) faces
  CHECK(d.n_vertices == 8);
  CHECK(d.edges.size() == lat.edges.size());  // one crossing per primal edge
  std::set<int> crossed;
  for (const auto& e : d.edges) crossed.insert(e.primal_edge);
  CHECK(crossed.size() == lat.edges.size());
  CHECK(d.is_virtual(d.vW));
  CHECK_FALSE(d.is_virtual(0));
}

TEST_CASE("separation check") {
  SiteLattice lat = build_lattice(LatticeKind::square, 2, 3);
  RegionPartition p = strip_partition(lat);
  DualGraph d = dual_graph(lat);
  // the horizontal wall crossing both middle vertical primal edges separates
  std::vector<int> wall;
  for (std::size_t i = 0; i < d.edges.size(); ++i) {
    auto [u, v] = lat.edges[d.edges[i].primal_edge];
    bool lower_in_a_row = u / 2 == 0 && v / 2 == 1;  // edge between rows 0 and 1
    if (lower_in_a_row) wall.push_back(static_cast<int>(i));
  }
  CHECK(wall.size() == 2);
  CHECK(separates(d, wall, lat.graph(), p.A, p.C));
  // a single crossed edge does not
  CHECK_FALSE(separates(d, {wall[0]}, lat.graph(), p.A, p.C));
}

TEST_CASE("brickwork cells tile the lattice") {
  SiteLattice lat = build_lattice(LatticeKind::square, 16, 8);
  CellLattice big = block_cells(lat, 2);
  CHECK(big.cells.size() == 5);  // 2 + (1 full + 2 half) + 2 over two rows
  CellLattice half = block_cells(lat, 1);
  CHECK(half.cells.size() == 18);
  for (const CellLattice& cl : {big, half}) {
    std::vector<int> owner(lat.sites(), -1);
    for (std::size_t c = 0; c < cl.cells.size(); ++c)
      for (int s : cl.cells[c]) {
        CHECK(owner[s] == -1);
        owner[s] = static_cast<int>(c);
      }
    CHECK(std::count(owner.begin(), owner.end(), -1) == 0);
  }
}

TEST_CASE("cell dual graph is cubic in the interior") {
  SiteLattice lat = build_lattice(LatticeKind::square, 16, 8);
  CellLattice cl = block_cells(lat, 1);
  DualGraph d = dual_graph(cl);
  for (int v = 0; v < d.n_interior; ++v) CHECK(d.incident[v].size() == 3);
}
