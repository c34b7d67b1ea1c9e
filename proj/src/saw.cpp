#include "mielab/saw.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace mielab {

namespace {

// Depth-first enumeration of self-avoiding dual paths/loops with a length
// budget; candidates are filtered by the flood-fill cut check.
struct WalkEnum {
  const DualGraph& dual;
  const Graph& primal;
  const RegionPartition& part;
  int lmax;
  std::vector<Walk> out;
  std::vector<int> edge_stack, vertex_stack;
  std::vector<char> visited;

  WalkEnum(const DualGraph& d, const Graph& p, const RegionPartition& pa, int l)
      : dual(d), primal(p), part(pa), lmax(l), visited(d.n_vertices, 0) {}

  void emit(bool closed) {
    Walk w;
    w.dual_edges = edge_stack;
    w.vertices = vertex_stack;
    w.closed = closed;
    if (separates(dual, w.dual_edges, primal, part.A, part.C)) out.push_back(std::move(w));
  }

  // paths between virtual vertices
  void dfs_path(int v) {
    if (dual.is_virtual(v) && vertex_stack.size() > 1) {
      // candidate endpoint; dedupe reversals by endpoint ordering
      int s = vertex_stack.front();
      if (s < v || (s == v && edge_stack.front() <= edge_stack.back())) emit(false);
      return;  // walls terminate at the boundary
    }
    if (static_cast<int>(edge_stack.size()) >= lmax) return;
    for (int e : dual.incident[v]) {
      int w = dual.other(e, v);
      if (w == v) continue;
      if (!dual.is_virtual(w) && visited[w]) continue;
      edge_stack.push_back(e);
      vertex_stack.push_back(w);
      if (!dual.is_virtual(w)) visited[w] = 1;
      dfs_path(w);
      if (!dual.is_virtual(w)) visited[w] = 0;
      edge_stack.pop_back();
      vertex_stack.pop_back();
    }
  }

  // simple cycles through interior vertices; canonical form: the cycle's
  // smallest vertex comes first and its smaller incident cycle edge is taken
  // first, so each undirected cycle is produced exactly once.
  void dfs_cycle(int root, int v) {
    for (int e : dual.incident[v]) {
      int w = dual.other(e, v);
      if (dual.is_virtual(w)) continue;
      if (w == root && edge_stack.size() >= 2 && e != edge_stack.front()) {
        if (edge_stack.front() < e) {
          edge_stack.push_back(e);
          vertex_stack.push_back(w);
          emit(true);
          edge_stack.pop_back();
          vertex_stack.pop_back();
        }
        continue;
      }
      if (w <= root || visited[w]) continue;
      if (static_cast<int>(edge_stack.size()) >= lmax - 1) continue;
      edge_stack.push_back(e);
      vertex_stack.push_back(w);
      visited[w] = 1;
      dfs_cycle(root, w);
      visited[w] = 0;
      edge_stack.pop_back();
      vertex_stack.pop_back();
    }
  }
};

}  // namespace

std::vector<Walk> enumerate_separating_walks(const DualGraph& dual, const Graph& primal,
                                             const RegionPartition& part, int lmax) {
  WalkEnum we(dual, primal, part, lmax);
  if (lmax < 1) return {};
  for (int s = dual.n_interior; s < dual.n_vertices; ++s) {
    we.vertex_stack = {s};
    we.dfs_path(s);
  }
  for (int r = 0; r < dual.n_interior; ++r) {
    we.vertex_stack = {r};
    we.visited[r] = 1;
    we.dfs_cycle(r, r);
    we.visited[r] = 0;
  }
  std::sort(we.out.begin(), we.out.end(), [](const Walk& a, const Walk& b) {
    if (a.length() != b.length()) return a.length() < b.length();
    return a.dual_edges < b.dual_edges;
  });
  return we.out;
}

namespace {

struct P {
  int x, y;
  bool operator<(const P& o) const { return x != o.x ? x < o.x : y < o.y; }
  bool operator==(const P& o) const { return x == o.x && y == o.y; }
};

std::vector<P> steps_at(WalkLattice kind, const P& p) {
  switch (kind) {
    case WalkLattice::square:
      return {{p.x + 1, p.y}, {p.x - 1, p.y}, {p.x, p.y + 1}, {p.x, p.y - 1}};
    case WalkLattice::triangular:
      return {{p.x + 1, p.y},     {p.x - 1, p.y},     {p.x, p.y + 1},
              {p.x, p.y - 1},     {p.x + 1, p.y + 1}, {p.x - 1, p.y - 1}};
    case WalkLattice::hexagonal: {
      // brick-wall embedding of the honeycomb lattice
      bool up = ((p.x + p.y) % 2 + 2) % 2 == 0;
      return {{p.x + 1, p.y}, {p.x - 1, p.y}, up ? P{p.x, p.y + 1} : P{p.x, p.y - 1}};
    }
  }
  return {};
}

long long dfs_walks(WalkLattice kind, std::set<P>& vis, const P& p, int remaining) {
  if (remaining == 0) return 1;
  long long total = 0;
  for (const P& q : steps_at(kind, p)) {
    if (vis.count(q)) continue;
    vis.insert(q);
    total += dfs_walks(kind, vis, q, remaining - 1);
    vis.erase(q);
  }
  return total;
}

long long dfs_polygons(WalkLattice kind, std::set<P>& vis, const P& p, const P& origin,
                       int remaining) {
  if (remaining == 0) return 0;
  long long total = 0;
  for (const P& q : steps_at(kind, p)) {
    if (q == origin) {
      if (remaining == 1 && vis.size() >= 3) total += 1;
      continue;
    }
    if (vis.count(q)) continue;
    vis.insert(q);
    total += dfs_polygons(kind, vis, q, origin, remaining - 1);
    vis.erase(q);
  }
  return total;
}

}  // namespace

long long count_rooted_walks(WalkLattice kind, int n) {
  if (n < 0) throw std::invalid_argument("count_rooted_walks: n must be >= 0");
  if (n == 0) return 1;
  std::set<P> vis = {{0, 0}};
  return dfs_walks(kind, vis, {0, 0}, n);
}

long long count_rooted_polygons(WalkLattice kind, int l) {
  if (l < 3) return 0;
  std::set<P> vis = {{0, 0}};
  // each undirected cycle through the origin is traversed in two directions
  return dfs_polygons(kind, vis, {0, 0}, {0, 0}, l) / 2;
}

SawPartition partition_function(const std::vector<Walk>& walks, const WeightModel& wm,
                                int lmax, const TailCertificate* tail) {
  SawPartition sp;
  sp.lmax = lmax;
  for (const Walk& w : walks) {
    if (w.length() > lmax) continue;
    double H = wm.evaluate(w);
    if (H < 0) throw std::invalid_argument("partition_function: negative walk energy");
    sp.exact_sum += std::exp(-H);
  }
  if (tail == nullptr) {
    sp.tail_bound = 0.0;
    sp.tail_certified = true;
    return sp;
  }
  if (wm.mode != WeightModel::Mode::per_edge)
    throw std::invalid_argument("partition_function: tail certificate requires per_edge weights");
  const auto& c = tail->rooted_counts;
  const int K = static_cast<int>(c.size());
  if (K < 1) throw std::invalid_argument("partition_function: empty rooted-count table");

  // log-space dynamic programme for the submultiplicative count bound
  // cb(l) = min(c_l [l<=K], min_j c_j * cb(l-j))
  const int horizon = 200;
  std::vector<double> lcb(lmax + horizon + 2, std::numeric_limits<double>::infinity());
  lcb[0] = 0.0;
  for (int l = 1; l < static_cast<int>(lcb.size()); ++l) {
    if (l <= K) lcb[l] = std::log(static_cast<double>(c[l - 1]));
    for (int j = 1; j <= std::min(K, l - 1); ++j)
      lcb[l] = std::min(lcb[l], std::log(static_cast<double>(c[j - 1])) + lcb[l - j]);
  }

  double best_rate = std::numeric_limits<double>::infinity();
  int best_k = 1;
  for (int k = 1; k <= K; ++k) {
    double r = std::log(static_cast<double>(c[k - 1])) / k;
    if (r < best_rate) {
      best_rate = r;
      best_k = k;
    }
  }
  double rho = std::exp(best_rate - wm.beta);
  if (rho >= 1.0) {
    sp.tail_certified = false;
    sp.tail_bound = std::numeric_limits<double>::infinity();
    return sp;
  }
  double t = 0.0;
  for (int l = lmax + 1; l <= lmax + horizon; ++l)
    t += tail->anchor_count * std::exp(lcb[l] - wm.beta * l);
  // geometric remainder beyond the horizon: cb(l) <= c_K * (c_K^{1/K})^l
  int l0 = lmax + horizon + 1;
  t += tail->anchor_count * static_cast<double>(c[best_k - 1]) * std::pow(rho, l0) / (1.0 - rho);
  sp.tail_bound = t;
  sp.tail_certified = true;
  return sp;
}

LoopWeights loop_weight_bounds(double beta, double mu_log, int l0) {
  LoopWeights lw;
  lw.nu = std::exp(mu_log - beta);
  if (lw.nu >= 1.0)
    throw std::invalid_argument("loop_weight_bounds: nu >= 1 (ordered-phase precondition violated)");
  if (lw.nu == 0.0) return lw;
  lw.w_tail = std::pow(lw.nu, l0) / (1.0 - lw.nu);
  lw.type1_bound = 2.0 * std::pow(lw.nu, 4) / std::pow(1.0 - lw.nu, 3);
  lw.type3_bound = lw.type1_bound * lw.type1_bound;
  return lw;
}

}  // namespace mielab
