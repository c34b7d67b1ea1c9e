#pragma once

#include <utility>
#include <vector>

namespace mielab {

enum class LatticeKind { square, triangular };
enum class Geometry { strip, half_chain, bulk_triple };

// Generic undirected graph; used as the primal graph in cut checks.
struct Graph {
  int n = 0;
  std::vector<std::pair<int, int>> edges;
  std::vector<std::vector<int>> adjacency() const;
};

struct SiteLattice {
  LatticeKind kind = LatticeKind::square;
  int Lx = 0, Ly = 0;
  std::vector<std::pair<int, int>> edges;

  int sites() const { return Lx * Ly; }
  int index(int x, int y) const { return y * Lx + x; }
  std::pair<int, int> coords(int i) const { return {i % Lx, i / Lx}; }
  Graph graph() const { return Graph{sites(), edges}; }
  std::vector<std::vector<int>> adjacency() const { return graph().adjacency(); }
};

// Open-boundary lattice. Square: nearest neighbours on a grid. Triangular:
// square grid plus one diagonal direction, so every interior site has degree 6.
SiteLattice build_lattice(LatticeKind kind, int Lx, int Ly);

struct RegionPartition {
  std::vector<int> A, B, C;
  Geometry geometry = Geometry::strip;
};

// strip: A = bottom row (y=0), C = top row (y=Ly-1), B = everything between.
RegionPartition strip_partition(const SiteLattice& lat);
// bulk_triple: A = {h}, C = {i, j}, B = rest (three isolated bulk sites).
RegionPartition bulk_triple_partition(const SiteLattice& lat, int h, int i, int j);

struct CellLattice {
  SiteLattice base;
  int dC = 1;
  int cell_w = 4, cell_h = 2;  // 4*dC x 2*dC
  std::vector<std::vector<int>> cells;              // site indices per cell
  std::vector<std::pair<double, double>> cell_pos;  // centroids (planar embedding)
  std::vector<std::pair<int, int>> adjacency;       // cells sharing a boundary

  int cell_of(int site) const;  // linear scan helper
  Graph graph() const { return Graph{static_cast<int>(cells.size()), adjacency}; }
};

// Brickwork tessellation: rows of height 2*dC; odd rows offset by half a cell
// width, with half-width cells at the row ends. Adjacent rows then meet in a
// triangulated pattern. Requires Lx divisible by 4*dC and Ly by 2*dC.
CellLattice block_cells(const SiteLattice& lat, int dC);

struct DualEdge {
  int u = 0, v = 0;      // dual vertex ids
  int primal_edge = -1;  // index into the primal graph's edge list
};

struct DualGraph {
  int n_interior = 0;  // interior dual vertices (faces): ids 0..n_interior-1
  int vN = -1, vS = -1, vE = -1, vW = -1;  // boundary virtual vertices
  int n_vertices = 0;
  std::vector<DualEdge> edges;
  std::vector<std::vector<int>> incident;  // vertex id -> incident dual-edge ids

  bool is_virtual(int v) const { return v >= n_interior; }
  int other(int dual_edge, int v) const {
    const DualEdge& e = edges[dual_edge];
    return e.u == v ? e.v : e.u;
  }
};

// Dual of a square site lattice: interior faces plus one virtual vertex per
// open side; every primal edge is crossed by exactly one dual edge.
DualGraph dual_graph(const SiteLattice& lat);

// Dual of the (triangulated) cell adjacency graph. Interior dual vertices are
// 3-valent. Throws if the cell graph has a non-triangular interior face.
DualGraph dual_graph(const CellLattice& cl);

// True iff removing the primal edges crossed by the walk disconnects every
// A site from every C site (flood fill).
bool separates(const DualGraph& dual, const std::vector<int>& walk_dual_edges,
               const Graph& primal, const std::vector<int>& A, const std::vector<int>& C);

}  // namespace mielab
