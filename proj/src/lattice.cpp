#include "mielab/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>

namespace mielab {

std::vector<std::vector<int>> Graph::adjacency() const {
  std::vector<std::vector<int>> adj(n);
  for (const auto& [a, b] : edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  return adj;
}

SiteLattice build_lattice(LatticeKind kind, int Lx, int Ly) {
  if (Lx < 1 || Ly < 1) throw std::invalid_argument("build_lattice: dimensions must be >= 1");
  SiteLattice lat;
  lat.kind = kind;
  lat.Lx = Lx;
  lat.Ly = Ly;
  for (int y = 0; y < Ly; ++y) {
    for (int x = 0; x < Lx; ++x) {
      int i = lat.index(x, y);
      if (x + 1 < Lx) lat.edges.emplace_back(i, lat.index(x + 1, y));
      if (y + 1 < Ly) lat.edges.emplace_back(i, lat.index(x, y + 1));
      if (kind == LatticeKind::triangular && x + 1 < Lx && y + 1 < Ly)
        lat.edges.emplace_back(i, lat.index(x + 1, y + 1));
    }
  }
  return lat;
}

RegionPartition strip_partition(const SiteLattice& lat) {
  if (lat.Ly < 2) throw std::invalid_argument("strip_partition: need Ly >= 2");
  RegionPartition p;
  p.geometry = Geometry::strip;
  for (int x = 0; x < lat.Lx; ++x) {
    p.A.push_back(lat.index(x, 0));
    p.C.push_back(lat.index(x, lat.Ly - 1));
  }
  for (int y = 1; y + 1 < lat.Ly; ++y)
    for (int x = 0; x < lat.Lx; ++x) p.B.push_back(lat.index(x, y));
  return p;
}

RegionPartition bulk_triple_partition(const SiteLattice& lat, int h, int i, int j) {
  RegionPartition p;
  p.geometry = Geometry::bulk_triple;
  p.A = {h};
  p.C = {i, j};
  for (int s = 0; s < lat.sites(); ++s)
    if (s != h && s != i && s != j) p.B.push_back(s);
  return p;
}

int CellLattice::cell_of(int site) const {
  for (std::size_t c = 0; c < cells.size(); ++c)
    for (int s : cells[c])
      if (s == site) return static_cast<int>(c);
  return -1;
}

CellLattice block_cells(const SiteLattice& lat, int dC) {
  if (dC < 1) throw std::invalid_argument("block_cells: dC must be >= 1");
  const int cw = 4 * dC, ch = 2 * dC;
  if (lat.Lx % cw != 0 || lat.Ly % ch != 0)
    throw std::invalid_argument("block_cells: lattice dimensions not divisible by cell shape");
  CellLattice cl;
  cl.base = lat;
  cl.dC = dC;
  cl.cell_w = cw;
  cl.cell_h = ch;

  const int n_rows = lat.Ly / ch;
  std::vector<int> cell_of(lat.sites(), -1);
  for (int r = 0; r < n_rows; ++r) {
    // Brick boundaries along x for this row.
    std::vector<int> bounds = {0};
    if (r % 2 == 0) {
      for (int x = cw; x <= lat.Lx; x += cw) bounds.push_back(x);
    } else {
      for (int x = cw / 2; x < lat.Lx; x += cw) bounds.push_back(x);
      bounds.push_back(lat.Lx);
    }
    for (std::size_t b = 0; b + 1 < bounds.size(); ++b) {
      std::vector<int> members;
      double sx = 0, sy = 0;
      for (int y = r * ch; y < (r + 1) * ch; ++y)
        for (int x = bounds[b]; x < bounds[b + 1]; ++x) {
          int s = lat.index(x, y);
          members.push_back(s);
          cell_of[s] = static_cast<int>(cl.cells.size());
          sx += x;
          sy += y;
        }
      cl.cell_pos.emplace_back(sx / members.size(), sy / members.size());
      cl.cells.push_back(std::move(members));
    }
  }

  std::set<std::pair<int, int>> adj;
  for (const auto& [a, b] : lat.edges) {
    int ca = cell_of[a], cb = cell_of[b];
    if (ca != cb) adj.insert({std::min(ca, cb), std::max(ca, cb)});
  }
  cl.adjacency.assign(adj.begin(), adj.end());
  return cl;
}

DualGraph dual_graph(const SiteLattice& lat) {
  DualGraph d;
  const int fw = lat.Lx - 1, fh = lat.Ly - 1;  // interior face grid
  if (lat.kind != LatticeKind::square)
    throw std::invalid_argument("dual_graph(SiteLattice): only square site lattices supported");
  d.n_interior = std::max(fw, 0) * std::max(fh, 0);
  d.vN = d.n_interior;
  d.vS = d.n_interior + 1;
  d.vE = d.n_interior + 2;
  d.vW = d.n_interior + 3;
  d.n_vertices = d.n_interior + 4;
  auto face = [&](int fx, int fy) { return fy * fw + fx; };
  for (std::size_t ei = 0; ei < lat.edges.size(); ++ei) {
    auto [a, b] = lat.edges[ei];
    auto [ax, ay] = lat.coords(a);
    auto [bx, by] = lat.coords(b);
    DualEdge de;
    de.primal_edge = static_cast<int>(ei);
    if (ay == by) {  // horizontal primal edge: dual runs vertically
      int x = std::min(ax, bx), y = ay;
      de.u = (y == 0) ? d.vS : face(x, y - 1);
      de.v = (y == lat.Ly - 1) ? d.vN : face(x, y);
    } else {  // vertical primal edge: dual runs horizontally
      int x = ax, y = std::min(ay, by);
      de.u = (x == 0) ? d.vW : face(x - 1, y);
      de.v = (x == lat.Lx - 1) ? d.vE : face(x, y);
    }
    d.edges.push_back(de);
  }
  d.incident.assign(d.n_vertices, {});
  for (std::size_t k = 0; k < d.edges.size(); ++k) {
    d.incident[d.edges[k].u].push_back(static_cast<int>(k));
    d.incident[d.edges[k].v].push_back(static_cast<int>(k));
  }
  return d;
}

namespace {

// Trace the faces of a planar embedding given vertex positions, using the
// rotation system induced by the angular order of neighbours.
struct FaceTrace {
  std::vector<std::vector<int>> face_of_dir;  // not used
  // faces as lists of directed edge indices; directed edge id = 2*e or 2*e+1
  std::vector<std::vector<int>> faces;
  int outer_face = -1;
};

FaceTrace trace_faces(const Graph& g, const std::vector<std::pair<double, double>>& pos) {
  // neighbour lists sorted by angle
  std::vector<std::vector<std::pair<double, int>>> nb(g.n);  // (angle, edge id)
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    auto [a, b] = g.edges[e];
    double angab = std::atan2(pos[b].second - pos[a].second, pos[b].first - pos[a].first);
    double angba = std::atan2(pos[a].second - pos[b].second, pos[a].first - pos[b].first);
    nb[a].emplace_back(angab, static_cast<int>(e));
    nb[b].emplace_back(angba, static_cast<int>(e));
  }
  for (auto& v : nb) std::sort(v.begin(), v.end());

  auto endpoints = [&](int e) { return g.edges[e]; };
  auto dir_from = [&](int e, int from) {
    auto [a, b] = endpoints(e);
    return from == a ? 2 * e : 2 * e + 1;  // directed id: from->to
  };
  auto dir_target = [&](int de) {
    auto [a, b] = endpoints(de / 2);
    return (de % 2 == 0) ? b : a;
  };
  auto dir_source = [&](int de) {
    auto [a, b] = endpoints(de / 2);
    return (de % 2 == 0) ? a : b;
  };

  FaceTrace ft;
  std::vector<int> next(2 * g.edges.size(), -1);
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    for (int dirid : {2 * static_cast<int>(e), 2 * static_cast<int>(e) + 1}) {
      int v = dir_target(dirid);
      int u = dir_source(dirid);
      // find the position of edge e in v's sorted neighbour list, step to the
      // next edge clockwise (previous index) for counterclockwise faces
      const auto& lst = nb[v];
      int idx = -1;
      for (std::size_t k = 0; k < lst.size(); ++k)
        if (lst[k].second == static_cast<int>(e)) idx = static_cast<int>(k);
      // angle of (v -> u) is the reverse direction
      // find entry with edge e then take previous entry
      int pidx = (idx - 1 + static_cast<int>(lst.size())) % static_cast<int>(lst.size());
      int enext = lst[pidx].second;
      int w = endpoints(enext).first == v ? endpoints(enext).second : endpoints(enext).first;
      (void)u;
      (void)w;
      next[dirid] = dir_from(enext, v);
    }
  }

  std::vector<char> used(2 * g.edges.size(), 0);
  for (std::size_t de = 0; de < used.size(); ++de) {
    if (used[de]) continue;
    std::vector<int> cycle;
    int cur = static_cast<int>(de);
    while (!used[cur]) {
      used[cur] = 1;
      cycle.push_back(cur);
      cur = next[cur];
    }
    ft.faces.push_back(std::move(cycle));
  }
  // identify outer face by signed area of the traversed polygon
  double worst = 0.0;
  for (std::size_t f = 0; f < ft.faces.size(); ++f) {
    double area = 0.0;
    for (int de : ft.faces[f]) {
      auto [a, b] = endpoints(de / 2);
      int s = (de % 2 == 0) ? a : b;
      int t = (de % 2 == 0) ? b : a;
      area += pos[s].first * pos[t].second - pos[t].first * pos[s].second;
    }
    if (area < worst) {
      worst = area;
      ft.outer_face = static_cast<int>(f);
    }
  }
  return ft;
}

}  // namespace

DualGraph dual_graph(const CellLattice& cl) {
  const Graph g = cl.graph();
  if (g.n < 3 || g.edges.size() < 3)
    throw std::invalid_argument("dual_graph(CellLattice): cell graph too small to triangulate");
  FaceTrace ft = trace_faces(g, cl.cell_pos);

  // map faces to dual vertex ids (interior faces only)
  std::vector<int> face_id(ft.faces.size(), -1);
  int nid = 0;
  for (std::size_t f = 0; f < ft.faces.size(); ++f) {
    if (static_cast<int>(f) == ft.outer_face) continue;
    if (ft.faces[f].size() != 3)
      throw std::invalid_argument("dual_graph(CellLattice): interior face is not a triangle");
    face_id[f] = nid++;
  }

  DualGraph d;
  d.n_interior = nid;
  d.vN = nid;
  d.vS = nid + 1;
  d.vE = nid + 2;
  d.vW = nid + 3;
  d.n_vertices = nid + 4;

  // bounding box centre for classifying boundary sides
  double cx = 0, cy = 0;
  for (const auto& [x, y] : cl.cell_pos) {
    cx += x;
    cy += y;
  }
  cx /= cl.cell_pos.size();
  cy /= cl.cell_pos.size();

  // which two faces border each primal edge
  std::vector<std::pair<int, int>> bord(g.edges.size(), {-2, -2});
  for (std::size_t f = 0; f < ft.faces.size(); ++f)
    for (int de : ft.faces[f]) {
      int e = de / 2;
      if (bord[e].first == -2)
        bord[e].first = static_cast<int>(f);
      else
        bord[e].second = static_cast<int>(f);
    }
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    auto [fa, fb] = bord[e];
    DualEdge de;
    de.primal_edge = static_cast<int>(e);
    auto vertex_for = [&](int f) {
      if (f != ft.outer_face) return face_id[f];
      auto [a, b] = g.edges[e];
      double mx = (cl.cell_pos[a].first + cl.cell_pos[b].first) / 2 - cx;
      double my = (cl.cell_pos[a].second + cl.cell_pos[b].second) / 2 - cy;
      if (std::abs(mx) >= std::abs(my)) return mx >= 0 ? d.vE : d.vW;
      return my >= 0 ? d.vN : d.vS;
    };
    de.u = vertex_for(fa);
    de.v = vertex_for(fb);
    d.edges.push_back(de);
  }
  d.incident.assign(d.n_vertices, {});
  for (std::size_t k = 0; k < d.edges.size(); ++k) {
    d.incident[d.edges[k].u].push_back(static_cast<int>(k));
    d.incident[d.edges[k].v].push_back(static_cast<int>(k));
  }
  return d;
}

bool separates(const DualGraph& dual, const std::vector<int>& walk_dual_edges,
               const Graph& primal, const std::vector<int>& A, const std::vector<int>& C) {
  if (A.empty() || C.empty()) return false;
  std::vector<char> cut(primal.edges.size(), 0);
  for (int de : walk_dual_edges) cut[dual.edges[de].primal_edge] = 1;
  std::vector<std::vector<int>> adj(primal.n);
  for (std::size_t e = 0; e < primal.edges.size(); ++e) {
    if (cut[e]) continue;
    auto [a, b] = primal.edges[e];
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  std::vector<char> vis(primal.n, 0);
  std::vector<int> stack(A.begin(), A.end());
  for (int a : A) vis[a] = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int w : adj[v])
      if (!vis[w]) {
        vis[w] = 1;
        stack.push_back(w);
      }
  }
  for (int c : C)
    if (vis[c]) return false;
  return true;
}

}  // namespace mielab
