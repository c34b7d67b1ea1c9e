#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "mielab/quasientropy.hpp"
#include "mielab/statevec.hpp"

using namespace mielab;

TEST_CASE("random unitaries and isometries") {
  auto rng = task_rng(1, 0);
  Eigen::MatrixXcd U = haar_unitary(5, rng);
  CHECK((U.adjoint() * U - Eigen::MatrixXcd::Identity(5, 5)).norm() < 1e-12);
  Eigen::MatrixXcd V = haar_isometry(6, 2, rng);
  CHECK(V.rows() == 6);
  CHECK(V.cols() == 2);
  CHECK((V.adjoint() * V - Eigen::MatrixXcd::Identity(2, 2)).norm() < 1e-12);
}

TEST_CASE("gate application matches a dense kron") {
  auto rng = task_rng(1, 1);
  PureState st = product_zero_state({2, 3});
  st.amp.setRandom();
  st.amp /= st.amp.norm();
  Eigen::MatrixXcd U = haar_unitary(2, rng);
  PureState a = st;
  apply_gate(a, {0}, U);
  Eigen::VectorXcd expect = kron(U, Eigen::MatrixXcd::Identity(3, 3)) * st.amp;
  CHECK((a.amp - expect).norm() < 1e-12);
  Eigen::MatrixXcd W = haar_unitary(3, rng);
  PureState b = st;
  apply_gate(b, {1}, W);
  expect = kron(Eigen::MatrixXcd::Identity(2, 2), W) * st.amp;
  CHECK((b.amp - expect).norm() < 1e-12);
}

TEST_CASE("entropies of simple states") {
  PureState bell = product_zero_state({2, 2});
  bell.amp.setZero();
  bell.amp(0) = bell.amp(3) = 1.0 / std::sqrt(2.0);
  CHECK(entropy(bell, {0}, EntropyOrder::vn) == doctest::Approx(std::log(2.0)));
  CHECK(entropy(bell, {1}, EntropyOrder::renyi2) == doctest::Approx(std::log(2.0)));
  PureState prod = product_zero_state({2, 2});
  CHECK(entropy(prod, {0}, EntropyOrder::vn) == doctest::Approx(0.0));
  Eigen::MatrixXcd rho = reduced_density(bell, {0});
  CHECK(rho.rows() == 2);
  CHECK(std::abs(rho.trace() - cd(1, 0)) < 1e-12);
  CHECK((rho - 0.5 * Eigen::MatrixXcd::Identity(2, 2)).norm() < 1e-12);
}

TEST_CASE("bond product state on a two-site chain") {
  HolographicSpec spec;
  spec.lat = build_lattice(LatticeKind::square, 1, 2);
  spec.chi = 3;
  PureState st = prepare_bond_product(spec);
  CHECK(st.site_dims == std::vector<long long>{3, 3});
  CHECK(st.norm() == doctest::Approx(1.0));
  CHECK(entropy(st, {0}, EntropyOrder::vn) == doctest::Approx(std::log(3.0)));
}

TEST_CASE("holographic state site dimensions and normalization") {
  HolographicSpec spec;
  spec.lat = build_lattice(LatticeKind::square, 2, 2);
  spec.chi = 2;
  spec.seed = 5;
  auto rng = task_rng(5, 0);
  PureState st = prepare_holographic(spec, rng);
  for (long long d : st.site_dims) CHECK(d == 4);  // every site has degree 2
  CHECK(st.norm() == doctest::Approx(1.0));
}

TEST_CASE("exhaustive measurement is a resolution of identity") {
  HolographicSpec spec;
  spec.lat = build_lattice(LatticeKind::square, 1, 3);
  spec.chi = 2;
  spec.seed = 9;
  auto rng = task_rng(9, 0);
  PureState st = prepare_holographic(spec, rng);
  auto samples = measure_exhaustive(st, {1});
  CHECK(samples.size() == 4);  // middle site has dimension 4
  double ptot = 0.0;
  for (const auto& s : samples) {
    ptot += s.p;
    if (s.p > 1e-12) CHECK(s.post.norm() == doctest::Approx(1.0));
    CHECK(s.post.site_dims == std::vector<long long>{2, 2});
  }
  CHECK(ptot == doctest::Approx(1.0));
  // a sampled outcome agrees with one of the exhaustive branches
  auto srng = task_rng(9, 1);
  EnsembleSample one = measure_sampled(st, {1}, srng);
  bool found = false;
  for (const auto& s : samples)
    if (s.outcome == one.outcome) {
      found = true;
      CHECK(one.p == doctest::Approx(s.p));
      CHECK(std::abs(std::abs(one.post.amp.dot(s.post.amp)) - 1.0) < 1e-9);
    }
  CHECK(found);
}

TEST_CASE("distillation of a perfect pair") {
  PureState bell = product_zero_state({2, 2});
  bell.amp.setZero();
  bell.amp(0) = bell.amp(3) = 1.0 / std::sqrt(2.0);
  auto rng = task_rng(2, 0);
  DistillResult d = distill(bell, 2, 2, 6, rng);
  CHECK(d.eps == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(distill_guarantee(2, std::log(2.0)) == doctest::Approx(1.0));
  CHECK(distill_guarantee(2, 3.0 * std::log(2.0)) < 0.6);
}

TEST_CASE("mean post-measurement entanglement without bulk") {
  HolographicSpec spec;
  spec.lat = build_lattice(LatticeKind::square, 1, 2);
  spec.chi = 2;
  spec.seed = 3;
  RegionPartition part = strip_partition(spec.lat);
  CHECK(part.B.empty());
  auto rng = task_rng(3, 0);
  PureState st = prepare_holographic(spec, rng);
  // local unitaries cannot change the bond entanglement
  CHECK(mie_exhaustive(st, part, EntropyOrder::vn) == doctest::Approx(std::log(2.0)));
}

TEST_CASE("plaquette lightcones and reduced states") {
  PlaquetteSpec spec;
  spec.Lx = 6;
  spec.Ly = 4;
  spec.depth = 2;
  spec.seed = 7;
  auto gates = plaquette_gates(spec);
  CHECK(!gates.empty());
  for (const auto& g : gates) {
    CHECK(g.sites.size() == 4);
    Eigen::MatrixXcd U = plaquette_gate_unitary(spec, g);
    CHECK((U.adjoint() * U - Eigen::MatrixXcd::Identity(16, 16)).norm() < 1e-12);
  }
  std::vector<int> probes = {spec.Lx + 1, spec.Lx + 2};
  auto [cone, support] = plaquette_lightcone(spec, probes);
  for (int p : probes) CHECK(std::count(support.begin(), support.end(), p) == 1);
  Eigen::MatrixXcd rho = plaquette_reduced_state(spec, probes);
  CHECK(rho.rows() == 4);
  CHECK(std::abs(rho.trace() - cd(1, 0)) < 1e-9);
  CHECK((rho - rho.adjoint()).norm() < 1e-9);
}

TEST_CASE("trace norm") {
  Eigen::MatrixXcd X(2, 2);
  X << 1, 0, 0, -3;
  CHECK(trace_norm(X) == doctest::Approx(4.0));
}
