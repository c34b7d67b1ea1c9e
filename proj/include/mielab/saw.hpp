#pragma once

#include <functional>
#include <limits>
#include <vector>

#include "mielab/lattice.hpp"

namespace mielab {

struct Walk {
  std::vector<int> dual_edges;  // dual edge ids, in path order
  std::vector<int> vertices;    // dual vertex sequence (closed: first == last)
  bool closed = false;
  int length() const { return static_cast<int>(dual_edges.size()); }
};

// Self-avoiding dual paths between boundary virtual vertices (and, for
// bulk_triple geometry, closed interior loops) of length <= lmax that separate
// A from C on the primal graph. Deterministic lexicographic order.
std::vector<Walk> enumerate_separating_walks(const DualGraph& dual, const Graph& primal,
                                             const RegionPartition& part, int lmax);

enum class WalkLattice { square, triangular, hexagonal };

// Exact count of n-step self-avoiding walks from the origin of the infinite
// lattice (c_n), by depth-first enumeration.
long long count_rooted_walks(WalkLattice kind, int n);

// Exact count of lattice polygons (cycles, counted as undirected edge sets)
// of perimeter l passing through the origin.
long long count_rooted_polygons(WalkLattice kind, int l);

struct WeightModel {
  enum class Mode { per_edge, entropy_driven };
  Mode mode = Mode::per_edge;
  double beta = 0.0;                          // per_edge: H[W] = beta * |W|
  std::function<double(const Walk&)> energy;  // entropy_driven: H[W] in nats
  double evaluate(const Walk& w) const {
    return mode == Mode::per_edge ? beta * w.length() : energy(w);
  }
};

struct SawPartition {
  double exact_sum = 0.0;   // sum over enumerated walks up to lmax
  double tail_bound = 0.0;  // certified upper bound on the omitted weight
  int lmax = 0;
  bool tail_certified = true;
  double total_upper() const {
    return tail_certified ? exact_sum + tail_bound
                          : std::numeric_limits<double>::infinity();
  }
};

struct TailCertificate {
  int anchor_count = 0;                 // admissible wall starting locations
  std::vector<long long> rooted_counts; // c_1..c_K on the dual lattice kind
};

// Boltzmann sum over the enumerated walks plus, in per_edge mode, a certified
// geometric tail using submultiplicative walk-count bounds c_l <= c_j * c_{l-j}.
// The certificate fails (reported, not fatal) when beta <= log of the best
// enumerated growth rate min_k c_k^{1/k}.
SawPartition partition_function(const std::vector<Walk>& walks, const WeightModel& wm,
                                int lmax, const TailCertificate* tail = nullptr);

struct LoopWeights {
  double nu = 0.0;
  double w_tail = 0.0;       // sum_{l >= l0} nu^l = nu^l0 / (1 - nu)
  double type1_bound = 0.0;  // 2 nu^4 / (1-nu)^3
  double type3_bound = 0.0;  // type1^2
};

// Closed-loop weight bounds for the ordered phase, nu = e^{log mu - beta} < 1.
LoopWeights loop_weight_bounds(double beta, double mu_log, int l0);

}  // namespace mielab
