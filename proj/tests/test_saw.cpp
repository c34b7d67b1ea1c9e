#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "mielab/saw.hpp"

using namespace mielab;

TEST_CASE("rooted walk counts: square") {
  const long long expected[] = {4, 12, 36, 100, 284, 780, 2172, 5916, 16268, 44100};
  for (int n = 1; n <= 10; ++n)
    CHECK(count_rooted_walks(WalkLattice::square, n) == expected[n - 1]);
}

TEST_CASE("rooted walk counts: other lattices") {
  CHECK(count_rooted_walks(WalkLattice::hexagonal, 1) == 3);
  CHECK(count_rooted_walks(WalkLattice::hexagonal, 2) == 6);
  CHECK(count_rooted_walks(WalkLattice::hexagonal, 3) == 12);
  CHECK(count_rooted_walks(WalkLattice::triangular, 1) == 6);
  CHECK(count_rooted_walks(WalkLattice::triangular, 2) == 30);
}

TEST_CASE("rooted polygons: square") {
  CHECK(count_rooted_polygons(WalkLattice::square, 3) == 0);
  CHECK(count_rooted_polygons(WalkLattice::square, 4) == 4);
  CHECK(count_rooted_polygons(WalkLattice::square, 5) == 0);
  CHECK(count_rooted_polygons(WalkLattice::square, 7) == 0);
}

TEST_CASE("separating walls on small strips") {
  {
    SiteLattice lat = build_lattice(LatticeKind::square, 2, 2);
    RegionPartition p = strip_partition(lat);
    DualGraph d = dual_graph(lat);
    auto walls = enumerate_separating_walks(d, lat.graph(), p, 10);
    CHECK(walls.size() == 1);  // straight W-E wall through the single face
    CHECK(walls[0].length() == 2);
  }
  {
    SiteLattice lat = build_lattice(LatticeKind::square, 1, 4);
    RegionPartition p = strip_partition(lat);
    DualGraph d = dual_graph(lat);
    auto walls = enumerate_separating_walks(d, lat.graph(), p, 10);
    CHECK(walls.size() == 3);  // one single-edge wall per interior rung
    for (const auto& w : walls) CHECK(w.length() == 1);
  }
}

TEST_CASE("partition function with certified tail") {
  SiteLattice lat = build_lattice(LatticeKind::square, 3, 3);
  RegionPartition p = strip_partition(lat);
  DualGraph d = dual_graph(lat);
  auto walls = enumerate_separating_walks(d, lat.graph(), p, 8);
  WeightModel wm;
  wm.mode = WeightModel::Mode::per_edge;
  wm.beta = 2.0;
  TailCertificate tail;
  tail.anchor_count = 3;
  for (int k = 1; k <= 6; ++k)
    tail.rooted_counts.push_back(count_rooted_walks(WalkLattice::square, k));
  SawPartition sp = partition_function(walls, wm, 8, &tail);
  CHECK(sp.tail_certified);
  CHECK(sp.tail_bound >= 0.0);
  CHECK(sp.exact_sum > 0.0);
  CHECK(sp.total_upper() >= sp.exact_sum);
  double direct = 0.0;
  for (const auto& w : walls) direct += std::exp(-wm.beta * w.length());
  CHECK(sp.exact_sum == doctest::Approx(direct).epsilon(1e-12));

  // below the enumerated growth rate the geometric tail is not summable
  wm.beta = 0.5;
  SawPartition bad = partition_function(walls, wm, 8, &tail);
  CHECK_FALSE(bad.tail_certified);
  CHECK(std::isinf(bad.total_upper()));
}

TEST_CASE("entropy-driven weights") {
  SiteLattice lat = build_lattice(LatticeKind::square, 2, 2);
  RegionPartition p = strip_partition(lat);
  DualGraph d = dual_graph(lat);
  auto walls = enumerate_separating_walks(d, lat.graph(), p, 10);
  WeightModel wm;
  wm.mode = WeightModel::Mode::entropy_driven;
  wm.energy = [](const Walk& w) { return 0.5 * std::log(2.0) * w.length(); };
  SawPartition sp = partition_function(walls, wm, 10, nullptr);
  CHECK(sp.exact_sum == doctest::Approx(0.5).epsilon(1e-12));  // one wall of length 2
}

TEST_CASE("loop weight bounds") {
  double beta = 1.0, mu_log = 0.30788439567568845;
  LoopWeights lw = loop_weight_bounds(beta, mu_log, 4);
  double nu = std::exp(mu_log - beta);
  CHECK(lw.nu == doctest::Approx(nu));
  CHECK(lw.w_tail == doctest::Approx(std::pow(nu, 4) / (1 - nu)));
  CHECK(lw.type1_bound == doctest::Approx(2 * std::pow(nu, 4) / std::pow(1 - nu, 3)));
  CHECK(lw.type3_bound == doctest::Approx(lw.type1_bound * lw.type1_bound));
}
