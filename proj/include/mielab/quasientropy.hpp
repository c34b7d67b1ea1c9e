#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "mielab/statevec.hpp"

namespace mielab {

// Energy functional on +-1 spin configurations (one spin per lattice site).
using SpinEnergy = std::function<double(const std::vector<int>&)>;

// H[sigma] = sum_edges s2_e * (1 - sigma_u sigma_v) / 2: each domain-wall
// edge pays its bond entanglement.
SpinEnergy bond_rule_energy(const SiteLattice& lat, const std::vector<double>& edge_s2);

// H[sigma] = second Renyi entropy of the down-spin region of the given pure
// state (memoized over configurations; empty/full regions cost zero).
SpinEnergy state_rule_energy(const PureState& st);

// Sum of e^{-H} over the 2^|B| bulk configurations, with A clamped to tau_A
// and C clamped to tau_C. Refuses |B| > 24.
double boundary_partition_sum(int n_sites, const RegionPartition& part, int tau_A, int tau_C,
                              const SpinEnergy& H);

// Quasientropy of order two: ln(Z_{++} / Z_{-+}).
double q2_from_partition_sums(double Zpp, double Zmp);

// Second Renyi entropy of one half of a two-leg bond state (length chi^2).
double bond_renyi2(const Eigen::VectorXcd& bond, int chi);
// Per-edge bond entropies of a holographic circuit (ln chi when maximally
// entangled bonds are used).
std::vector<double> edge_entropies(const HolographicSpec& spec);

// prod_{i in B} 1 / (d_i + 1): the replica-averaged weight of the measured
// sites under Born-rule outcome summation.
double moment_prefactor(const std::vector<long long>& site_dims, const std::vector<int>& B);

// Circuit-averaged replica moments predicted by the spin sums:
//   E sum_s Tr[rho~_s^2] = prefactor * Z_{-+}
//   E sum_s p_s^2        = prefactor * Z_{++}
struct PredictedMoments {
  double prefactor = 0.0;
  double Zpp = 0.0;
  double Zmp = 0.0;
  double numerator() const { return prefactor * Zmp; }
  double denominator() const { return prefactor * Zpp; }
  double q2() const { return q2_from_partition_sums(Zpp, Zmp); }
};

// Domain-wall (bond) rule; exact for any bond product state.
PredictedMoments predicted_swap_moments(const HolographicSpec& spec, const RegionPartition& part);
// Same moments from the pre-unitary bond product state's region entropies;
// cross-checks the additivity of the bond rule.
PredictedMoments predicted_swap_moments_state(const HolographicSpec& spec,
                                              const RegionPartition& part);

}  // namespace mielab
