#include "mielab/quasientropy.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

namespace mielab {

SpinEnergy bond_rule_energy(const SiteLattice& lat, const std::vector<double>& edge_s2) {
  if (edge_s2.size() != lat.edges.size())
    throw std::invalid_argument("bond_rule_energy: entropy count mismatch");
  auto edges = lat.edges;
  return [edges, edge_s2](const std::vector<int>& spins) {
    double H = 0.0;
    for (std::size_t e = 0; e < edges.size(); ++e)
      if (spins[edges[e].first] != spins[edges[e].second]) H += edge_s2[e];
    return H;
  };
}

SpinEnergy state_rule_energy(const PureState& st) {
  auto state = std::make_shared<PureState>(st);
  auto memo = std::make_shared<std::map<std::uint64_t, double>>();
  return [state, memo](const std::vector<int>& spins) {
    if (spins.size() > 63) throw std::invalid_argument("state_rule_energy: too many sites");
    std::uint64_t mask = 0;
    std::vector<int> region;
    for (std::size_t i = 0; i < spins.size(); ++i)
      if (spins[i] < 0) {
        mask |= (1ULL << i);
        region.push_back(static_cast<int>(i));
      }
    if (region.empty() || region.size() == spins.size()) return 0.0;
    auto it = memo->find(mask);
    if (it != memo->end()) return it->second;
    double s2 = entropy(*state, region, EntropyOrder::renyi2);
    (*memo)[mask] = s2;
    return s2;
  };
}

double boundary_partition_sum(int n_sites, const RegionPartition& part, int tau_A, int tau_C,
                              const SpinEnergy& H) {
  if (part.B.size() > 24)
    throw std::invalid_argument("boundary_partition_sum: more than 24 bulk spins");
  std::vector<int> spins(n_sites, 1);
  for (int a : part.A) spins[a] = tau_A;
  for (int c : part.C) spins[c] = tau_C;
  const std::uint64_t n_conf = 1ULL << part.B.size();
  double Z = 0.0;
  for (std::uint64_t m = 0; m < n_conf; ++m) {
    for (std::size_t k = 0; k < part.B.size(); ++k)
      spins[part.B[k]] = ((m >> k) & 1) ? -1 : 1;
    Z += std::exp(-H(spins));
  }
  return Z;
}

double q2_from_partition_sums(double Zpp, double Zmp) {
  if (Zpp <= 0.0 || Zmp <= 0.0)
    throw std::invalid_argument("q2_from_partition_sums: sums must be positive");
  return std::log(Zpp / Zmp);
}

double bond_renyi2(const Eigen::VectorXcd& bond, int chi) {
  if (bond.size() != static_cast<long long>(chi) * chi)
    throw std::invalid_argument("bond_renyi2: length must be chi^2");
  Eigen::Map<const Eigen::Matrix<cd, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> M(
      bond.data(), chi, chi);
  Eigen::MatrixXcd rho = M * M.adjoint();
  rho /= rho.trace().real();
  return -std::log((rho * rho).trace().real());
}

std::vector<double> edge_entropies(const HolographicSpec& spec) {
  std::vector<double> s2;
  if (spec.bond_states.empty()) {
    s2.assign(spec.lat.edges.size(), std::log(static_cast<double>(spec.chi)));
  } else {
    for (const auto& b : spec.bond_states) s2.push_back(bond_renyi2(b, spec.chi));
  }
  return s2;
}

double moment_prefactor(const std::vector<long long>& site_dims, const std::vector<int>& B) {
  double f = 1.0;
  for (int i : B) {
    double d = static_cast<double>(site_dims[i]);
    // each measured site contributes d_i basis outcomes and a twofold replica
    // average (I + F) / (d_i (d_i + 1)), leaving 1 / (d_i + 1)
    f /= d + 1.0;
  }
  return f;
}

namespace {

PredictedMoments moments_from_energy(const HolographicSpec& spec, const RegionPartition& part,
                                     const SpinEnergy& H) {
  PredictedMoments pm;
  std::vector<long long> dims;
  for (int i = 0; i < spec.lat.sites(); ++i) dims.push_back(site_dim(spec.lat, i, spec.chi));
  pm.prefactor = moment_prefactor(dims, part.B);
  pm.Zpp = boundary_partition_sum(spec.lat.sites(), part, +1, +1, H);
  pm.Zmp = boundary_partition_sum(spec.lat.sites(), part, -1, +1, H);
  return pm;
}

}  // namespace

PredictedMoments predicted_swap_moments(const HolographicSpec& spec, const RegionPartition& part) {
  return moments_from_energy(spec, part, bond_rule_energy(spec.lat, edge_entropies(spec)));
}

PredictedMoments predicted_swap_moments_state(const HolographicSpec& spec,
                                              const RegionPartition& part) {
  PureState st = prepare_bond_product(spec);
  return moments_from_energy(spec, part, state_rule_energy(st));
}

}  // namespace mielab
