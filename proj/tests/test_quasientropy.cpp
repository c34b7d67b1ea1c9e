#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "mielab/quasientropy.hpp"

using namespace mielab;

namespace {

HolographicSpec square_spec(int Lx, int Ly, int chi, std::uint64_t seed) {
  HolographicSpec s;
  s.lat = build_lattice(LatticeKind::square, Lx, Ly);
  s.chi = chi;
  s.seed = seed;
  return s;
}

}  // namespace

TEST_CASE("bond entropies") {
  CHECK(bond_renyi2(maximally_entangled_bond(3), 3) == doctest::Approx(std::log(3.0)));
  Eigen::VectorXcd prod = Eigen::VectorXcd::Zero(4);
  prod(0) = 1.0;  // |0>|0>
  CHECK(bond_renyi2(prod, 2) == doctest::Approx(0.0));
  HolographicSpec spec = square_spec(2, 2, 3, 0);
  for (double s2 : edge_entropies(spec)) CHECK(s2 == doctest::Approx(std::log(3.0)));
}

TEST_CASE("moment prefactor") {
  CHECK(moment_prefactor({4, 4, 8}, {}) == doctest::Approx(1.0));
  CHECK(moment_prefactor({4, 8, 4}, {1}) == doctest::Approx(1.0 / 9.0));
  CHECK(moment_prefactor({8, 8}, {0, 1}) == doctest::Approx(1.0 / 81.0));
}

TEST_CASE("hand-computed spin sums on small grids") {
  {
    HolographicSpec spec = square_spec(2, 2, 2, 0);
    RegionPartition part = strip_partition(spec.lat);
    PredictedMoments m = predicted_swap_moments(spec, part);
    CHECK(m.prefactor == doctest::Approx(1.0));  // no bulk sites
    CHECK(m.Zpp == doctest::Approx(1.0));
    CHECK(m.Zmp == doctest::Approx(0.25));  // two cut vertical bonds
    CHECK(m.q2() == doctest::Approx(std::log(4.0)));
  }
  {
    HolographicSpec spec = square_spec(2, 3, 2, 0);
    RegionPartition part = strip_partition(spec.lat);
    PredictedMoments m = predicted_swap_moments(spec, part);
    CHECK(m.prefactor == doctest::Approx(1.0 / 81.0));
    CHECK(m.Zpp == doctest::Approx(1.0 + 1.0 / 16.0 + 1.0 / 8.0 + 1.0 / 8.0));
    CHECK(m.Zmp == doctest::Approx(0.25 + 0.25 + 0.125 + 0.125));
  }
}

TEST_CASE("state rule agrees with the bond rule") {
  for (std::uint64_t seed : {1ULL, 2ULL}) {
    HolographicSpec spec = square_spec(2, 3, 2, seed);
    if (seed == 2) {
      // non-maximally-entangled bonds exercise the general additivity
      auto rng = task_rng(seed, 17);
      for (std::size_t e = 0; e < spec.lat.edges.size(); ++e)
        spec.bond_states.push_back(random_bond_state(spec.chi, rng));
    }
    RegionPartition part = strip_partition(spec.lat);
    PredictedMoments bond = predicted_swap_moments(spec, part);
    PredictedMoments state = predicted_swap_moments_state(spec, part);
    CHECK(bond.Zpp == doctest::Approx(state.Zpp).epsilon(1e-10));
    CHECK(bond.Zmp == doctest::Approx(state.Zmp).epsilon(1e-10));
    CHECK(bond.prefactor == doctest::Approx(state.prefactor).epsilon(1e-12));
  }
}

TEST_CASE("partition sum building blocks") {
  CHECK(q2_from_partition_sums(1.3125, 0.75) == doctest::Approx(std::log(1.3125 / 0.75)));
  SiteLattice lat = build_lattice(LatticeKind::square, 1, 3);
  std::vector<double> s2(lat.edges.size(), std::log(2.0));
  SpinEnergy H = bond_rule_energy(lat, s2);
  // all spins up costs nothing; one domain wall on a chain costs one bond
  CHECK(H({1, 1, 1}) == doctest::Approx(0.0));
  CHECK(H({-1, 1, 1}) == doctest::Approx(std::log(2.0)));
  CHECK(H({-1, -1, 1}) == doctest::Approx(std::log(2.0)));
  RegionPartition part = strip_partition(lat);
  double Zmp = boundary_partition_sum(lat.sites(), part, -1, 1, H);
  // bulk spin down or up: each leaves exactly one cut bond
  CHECK(Zmp == doctest::Approx(0.5 + 0.5));
}

TEST_CASE("monte-carlo moments agree with the prediction") {
  HolographicSpec spec = square_spec(2, 2, 2, 31);
  RegionPartition part = strip_partition(spec.lat);
  PredictedMoments pred = predicted_swap_moments(spec, part);
  SwapMoments mc = swap_trick_moments(spec, part, 200);
  CHECK(std::fabs(mc.numerator.mean - pred.numerator()) <= 4.0 * mc.numerator.stderr_ + 1e-12);
  CHECK(std::fabs(mc.denominator.mean - pred.denominator()) <=
        4.0 * mc.denominator.stderr_ + 1e-12);
}
