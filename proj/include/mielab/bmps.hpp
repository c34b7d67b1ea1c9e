#pragma once

#include <complex>
#include <random>
#include <vector>

#include "mielab/statevec.hpp"

namespace mielab {

// Rank-4 site tensor of a planar grid network, legs (left, up, right, down);
// boundary legs have dimension 1.
struct Tensor4 {
  int dl = 1, du = 1, dr = 1, dd = 1;
  std::vector<cd> v;

  long long size() const {
    return static_cast<long long>(dl) * du * dr * dd;
  }
  cd& at(int l, int u, int r, int d) {
    return v[((static_cast<long long>(l) * du + u) * dr + r) * dd + d];
  }
  cd at(int l, int u, int r, int d) const {
    return v[((static_cast<long long>(l) * du + u) * dr + r) * dd + d];
  }
  static Tensor4 zero(int dl, int du, int dr, int dd) {
    Tensor4 t;
    t.dl = dl;
    t.du = du;
    t.dr = dr;
    t.dd = dd;
    t.v.assign(t.size(), cd(0, 0));
    return t;
  }
};

struct TensorGrid {
  int Lx = 0, Ly = 0;
  std::vector<Tensor4> t;  // row-major: index y * Lx + x

  Tensor4& at(int x, int y) { return t[static_cast<std::size_t>(y) * Lx + x]; }
  const Tensor4& at(int x, int y) const { return t[static_cast<std::size_t>(y) * Lx + x]; }
  // neighbouring bond dimensions agree; boundary legs have dimension 1
  bool consistent() const;
};

// Grid of i.i.d. standard complex Gaussian tensors with internal bond
// dimension chi.
TensorGrid sample_gaussian_tn(int Lx, int Ly, int chi, std::mt19937_64& rng);

// Multiply every internal horizontal bond index r and vertical bond index d
// (absorbed at the left/upper endpoint) by the diagonal weight w[r]; tunes the
// bond entanglement scale of the network.
void apply_bond_weights(TensorGrid& grid, const std::vector<double>& w);

// Tensor network sampled from an actual circuit: bulk measurement of a
// holographic state on a square lattice. The contraction of the grid equals
// the amplitude of the sampled outcome (|amplitude|^2 = p).
struct ExactTnSample {
  TensorGrid grid;
  std::vector<long long> outcome;  // one digit per site
  double p = 0.0;                  // Born probability of the outcome
};
ExactTnSample sample_exact_tn(const HolographicSpec& spec, std::mt19937_64& rng);

// Brute-force contraction by summing over every internal bond assignment;
// refuses networks with more than 2^22 assignments.
cd contract_exact(const TensorGrid& grid);

struct TruncationPolicy {
  int chi_max = 16;
  double cutoff = 0.0;      // singular values <= cutoff * norm are dropped
  double abort_tol = 1e-3;  // abort when chi demanded > chi_max and the
                            // column's discarded weight exceeds this
};

struct ColumnStats {
  int t = 0;
  int chi_used = 1;
  int chi_demanded = 1;
  double discarded = 0.0;            // relative discarded weight this column
  double half_chain_entropy = 0.0;   // boundary-state entropy at bond Ly/2 (nats)
};

struct BmpsResult {
  cd amplitude = cd(0, 0);
  bool aborted = false;
  int abort_column = -1;
  std::vector<ColumnStats> columns;
};

// Column-by-column boundary-MPS contraction with SVD truncation.
BmpsResult contract_bmps(const TensorGrid& grid, const TruncationPolicy& policy);

struct SebdResult {
  std::vector<long long> outcomes;  // one digit per site (site-index order)
  bool aborted = false;
  int abort_column = -1;
  std::vector<ColumnStats> columns;
};

// Sidewise measurement sampling of a square-lattice holographic circuit: the
// conditional state of the unmeasured columns is held as a boundary MPS, each
// column's outcomes are Born-sampled from it. Site unitaries are drawn from
// per-site streams task_rng(spec.seed, site).
SebdResult sebd_sample(const HolographicSpec& spec, const TruncationPolicy& policy,
                       std::mt19937_64& rng);

}  // namespace mielab
