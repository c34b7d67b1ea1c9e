#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

#include "mielab/lattice.hpp"
#include "mielab/util.hpp"

namespace mielab {

using cd = std::complex<double>;

// Default cap on the number of dense amplitudes (2^26).
inline constexpr long long kDefaultAmpCap = 1LL << 26;

struct PureState {
  std::vector<long long> site_dims;
  Eigen::VectorXcd amp;

  long long dim() const {
    long long d = 1;
    for (long long s : site_dims) d *= s;
    return d;
  }
  double norm() const { return amp.norm(); }
};

PureState product_zero_state(const std::vector<long long>& dims);

// Haar-random unitary: QR of a complex Gaussian matrix with the phases of the
// triangular factor's diagonal divided out.
Eigen::MatrixXcd haar_unitary(long long d, std::mt19937_64& rng);

// d x k isometry distributed as the first k columns of a Haar unitary.
Eigen::MatrixXcd haar_isometry(long long d, long long k, std::mt19937_64& rng);

// Apply a unitary acting on the listed sites (tensor order as listed).
void apply_gate(PureState& st, const std::vector<int>& sites, const Eigen::MatrixXcd& U);

// Reduced density operator of the listed sites (ascending order enforced).
Eigen::MatrixXcd reduced_density(const PureState& st, const std::vector<int>& region);

enum class EntropyOrder { vn, renyi2 };

double entropy_of_density(const Eigen::MatrixXcd& rho, EntropyOrder order);
// Entanglement entropy of a region (nats); computed on the smaller side.
double entropy(const PureState& st, const std::vector<int>& region, EntropyOrder order);

// ---- holographic circuits -------------------------------------------------

struct HolographicSpec {
  SiteLattice lat;
  int chi = 2;
  // per-edge bond states, each a unit vector of length chi^2 (amplitudes of
  // |a>|b> with a the lower-indexed endpoint); empty => maximally entangled
  std::vector<Eigen::VectorXcd> bond_states;
  std::uint64_t seed = 0;
  long long amp_cap = kDefaultAmpCap;
};

// Incident edges of each site, ascending edge index; the site's local space is
// the tensor product of its bond halves in this order.
std::vector<std::vector<int>> site_slots(const SiteLattice& lat);
long long site_dim(const SiteLattice& lat, int site, int chi);

// Bond product state followed by one Haar unitary per site.
PureState prepare_holographic(const HolographicSpec& spec, std::mt19937_64& rng);
// Bond product state with no site unitaries (used by oracle cross-checks).
PureState prepare_bond_product(const HolographicSpec& spec);

Eigen::VectorXcd maximally_entangled_bond(int chi);
Eigen::VectorXcd random_bond_state(int chi, std::mt19937_64& rng);

// ---- measurement ----------------------------------------------------------

struct EnsembleSample {
  std::vector<long long> outcome;  // digits for each measured site
  double p = 0.0;
  PureState post;  // on the kept sites, original order
};

// Exhaustive projective computational-basis measurement of the listed sites.
// Refuses more than 2^20 outcomes.
std::vector<EnsembleSample> measure_exhaustive(const PureState& st, const std::vector<int>& B);
// Born-rule sampling of a single outcome (site-by-site projection).
EnsembleSample measure_sampled(const PureState& st, const std::vector<int>& B,
                               std::mt19937_64& rng);

// ---- distillation ---------------------------------------------------------

struct DistillResult {
  double eps = 0.0;     // Monte-Carlo estimate of the average error
  double stderr_ = 0.0;
  std::size_t n_unitaries = 0;
};

// Random-measurement distillation on the leading block A (total dimension dA)
// of a bipartite pure state; fixed isometry = first d' computational columns.
DistillResult distill(const PureState& post, long long dA, long long d_prime,
                      std::size_t n_unitaries, std::mt19937_64& rng);

// A-priori error guarantee exp((ln d' - S2)/2).
double distill_guarantee(long long d_prime, double renyi2_A);

// ---- replica moments ------------------------------------------------------

struct SwapMoments {
  MeanStderr numerator;    // E sum_s Tr[rho~_s^2]
  MeanStderr denominator;  // E sum_s p_s^2
  double q2() const { return std::log(denominator.mean / numerator.mean); }
};

// Monte-Carlo over circuits; measurement outcomes summed exhaustively.
SwapMoments swap_trick_moments(const HolographicSpec& spec, const RegionPartition& part,
                               std::size_t n_circuits);

// Exact per-circuit mean post-measurement entanglement sum_s p_s S(rho^A_s).
double mie_exhaustive(const PureState& st, const RegionPartition& part, EntropyOrder order);

struct MieEstimate {
  MeanStderr value;
  std::vector<double> per_circuit;
};

MieEstimate mie_monte_carlo(const HolographicSpec& spec, const RegionPartition& part,
                            std::size_t n_circuits, EntropyOrder order);

// ---- shallow plaquette circuits -------------------------------------------

struct PlaquetteSpec {
  int Lx = 0, Ly = 0;
  int depth = 2;
  std::uint64_t seed = 0;
  long long amp_cap = kDefaultAmpCap;
};

struct PlaquetteGate {
  int layer = 0;
  int x = 0, y = 0;            // anchor
  std::vector<int> sites;      // the four qubits
};

std::vector<PlaquetteGate> plaquette_gates(const PlaquetteSpec& spec);
Eigen::MatrixXcd plaquette_gate_unitary(const PlaquetteSpec& spec, const PlaquetteGate& g);

// Gates in the backward lightcone of the probe qubits, in layer order, plus
// the union of their supports.
std::pair<std::vector<PlaquetteGate>, std::vector<int>> plaquette_lightcone(
    const PlaquetteSpec& spec, const std::vector<int>& probes);

// Reduced state of the probes, simulated on their exact backward lightcone.
Eigen::MatrixXcd plaquette_reduced_state(const PlaquetteSpec& spec, const std::vector<int>& probes);

double trace_norm(const Eigen::MatrixXcd& X);
Eigen::MatrixXcd kron(const Eigen::MatrixXcd& A, const Eigen::MatrixXcd& B);

struct LocalityCheckResult {
  double max_deviation = 0.0;
  int pairs_checked = 0;
  int pairs_factorized_by_causality = 0;  // disjoint lightcones (exact factorization)
};

// For each geometrically screened (non-adjacent) cell pair, grow probe patches
// on the facing cell boundaries (greedily, keeping the backward lightcone
// within the amplitude cap) and evaluate ||rho_{AC} - rho_A x rho_C||_1 on the
// joint backward lightcone. Disjoint lightcones factorize exactly (deviation
// zero). Pairs are visited nearest first; the scan stops early once the
// deviation exceeds stop_above, so the result is then a certified lower bound
// on the maximum.
LocalityCheckResult strict_locality_check(const PlaquetteSpec& spec, const CellLattice& cl,
                                          int probes_per_cell = 8,
                                          double stop_above = std::numeric_limits<double>::infinity());

}  // namespace mielab
