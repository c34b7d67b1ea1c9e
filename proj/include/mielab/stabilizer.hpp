#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <random>
#include <vector>

#include "mielab/lattice.hpp"

namespace mielab {

// n-qubit Pauli operator i^r * prod_j X_j^{x_j} Z_j^{z_j}, n <= 64.
struct Pauli {
  std::uint64_t x = 0, z = 0;
  int r = 0;  // phase exponent of i, mod 4
  int n = 0;

  static Pauli identity(int n) { return Pauli{0, 0, 0, n}; }
  static Pauli single_x(int n, int q) { return Pauli{1ULL << q, 0, 0, n}; }
  static Pauli single_z(int n, int q) { return Pauli{0, 1ULL << q, 0, n}; }
  static Pauli single_y(int n, int q) { return Pauli{1ULL << q, 1ULL << q, 1, n}; }

  Pauli operator*(const Pauli& o) const;
  bool commutes(const Pauli& o) const;
  bool is_identity_on(std::uint64_t mask) const { return ((x | z) & mask) == 0; }
};

// Symplectic inner product: 1 iff the operators anticommute.
int symplectic(const Pauli& a, const Pauli& b);

// Stabilizer tableau with destabilizer rows; all rows Hermitian, pairwise
// commuting within each half, destab[i] anticommutes exactly with stab[i].
struct Tableau {
  int n = 0;
  std::vector<Pauli> stab, destab;

  static Tableau zero_state(int n);

  void apply_h(int q);
  void apply_s(int q);
  void apply_cnot(int c, int t);

  // Computational-basis measurement of qubit q; returns 0/1 and collapses.
  int measure_z(int q, std::mt19937_64& rng);

  // Entanglement entropy of a region in units of ln 2 (an integer).
  long long region_entropy_bits(const std::vector<int>& region) const;

  bool check_invariants() const;  // commutation + rank
};

// Clifford element given by the images of the generators X_i, Z_i.
struct CliffordElement {
  int n = 0;
  std::vector<Pauli> imx, imz;
};

// Uniformly random Clifford via sequential symplectic-pair sampling with
// Gram-Schmidt reduction, plus uniform signs.
CliffordElement random_clifford(int n, std::mt19937_64& rng);

// Conjugate every row of the tableau: acts on all qubits, or embedded on the
// listed qubits (cl.n == sites.size()).
void apply_clifford(Tableau& tab, const CliffordElement& cl);
void apply_clifford(Tableau& tab, const CliffordElement& cl, const std::vector<int>& sites);

// Dense statevector of the stabilized state (n <= 20), for oracle checks.
// Qubit 0 is the slowest (most significant) index.
Eigen::VectorXcd tableau_statevector(const Tableau& tab);

// Canonical tripartite decomposition counts: g GHZ states plus e_XY Bell pairs
// per party pair (plus unentangled local states).
struct TripartiteShape {
  long long g = 0, e_hi = 0, e_hj = 0, e_ij = 0;
};

// Bell counts from the symplectic rank of the X-projection of the stabilizer
// subgroup supported on X u Y; g from the entropy of H. The qubits outside
// H u I u J must be unentangled from them. Throws on any inconsistency.
TripartiteShape tripartite_shape(const Tableau& tab, const std::vector<int>& H,
                                 const std::vector<int>& I, const std::vector<int>& J);

struct TripartiteRecord {
  std::size_t sample = 0;
  long long S_h = 0, S_i = 0, S_j = 0;  // per-site entropies in units of ln 2
  TripartiteShape shape;
  bool all_mixed = false;   // all three purities below c2
  bool site_premise = false;  // all three entropies >= ln 2
};

struct TripartiteResult {
  double p_hat = 0.0, ci_low = 0.0, ci_high = 0.0;  // all-mixed probability
  double site_premise_p = 0.0;
  std::size_t n_samples = 0;
  std::vector<TripartiteRecord> records;
};

// Holographic Clifford circuit on qudits of dimension q = 2^m: m Bell pairs
// per lattice edge (or |00> product pairs), one uniformly random Clifford per
// site, computational-basis measurement of every bulk site. Each sample picks
// a uniformly random site triple {h, i, j}; reports the fraction with all
// three site purities 2^{-S/ln 2} below c2.
TripartiteResult tripartite_mie_experiment(int m, const SiteLattice& lat, std::size_t n_samples,
                                           double c2, std::uint64_t seed,
                                           bool product_bonds = false);

// Qubit indices of each lattice site in the experiment's layout (m qubits per
// incident edge, slots in ascending edge order, sites contiguous).
std::vector<std::vector<int>> experiment_qubits(int m, const SiteLattice& lat);

}  // namespace mielab
