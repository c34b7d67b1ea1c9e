#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>

#include "mielab/stabilizer.hpp"
#include "mielab/statevec.hpp"
#include "mielab/util.hpp"

using namespace mielab;

TEST_CASE("pauli algebra") {
  int n = 2;
  Pauli X = Pauli::single_x(n, 0), Z = Pauli::single_z(n, 0), Y = Pauli::single_y(n, 0);
  CHECK_FALSE(X.commutes(Z));
  CHECK(X.commutes(Pauli::single_z(n, 1)));
  Pauli XZ = X * Z;
  CHECK(XZ.x == Y.x);
  CHECK(XZ.z == Y.z);
  CHECK((XZ.r + 1) % 4 == Y.r);  // Y = i XZ
  CHECK(symplectic(X, Z) == 1);
  CHECK(symplectic(X, X) == 0);
  Pauli XX = X * X;
  CHECK(XX.is_identity_on(~0ULL >> (64 - n)));
  CHECK(XX.r == 0);
}

TEST_CASE("bell and ghz entropies") {
  Tableau bell = Tableau::zero_state(2);
  bell.apply_h(0);
  bell.apply_cnot(0, 1);
  CHECK(bell.check_invariants());
  CHECK(bell.region_entropy_bits({0}) == 1);
  CHECK(bell.region_entropy_bits({0, 1}) == 0);
  Tableau ghz = Tableau::zero_state(3);
  ghz.apply_h(0);
  ghz.apply_cnot(0, 1);
  ghz.apply_cnot(0, 2);
  CHECK(ghz.region_entropy_bits({0}) == 1);
  CHECK(ghz.region_entropy_bits({0, 1}) == 1);
  Eigen::VectorXcd psi = tableau_statevector(ghz);
  CHECK(std::abs(psi(0) - psi(7)) < 1e-12);
  CHECK(std::abs(std::abs(psi(0)) - 1.0 / std::sqrt(2.0)) < 1e-12);
  for (int i = 1; i < 7; ++i) CHECK(std::abs(psi(i)) < 1e-12);
}

TEST_CASE("measurements collapse and repeat") {
  auto rng = task_rng(41, 0);
  Tableau t = Tableau::zero_state(1);
  CHECK(t.measure_z(0, rng) == 0);  // deterministic on |0>
  t.apply_h(0);
  int o = t.measure_z(0, rng);
  CHECK((o == 0 || o == 1));
  CHECK(t.measure_z(0, rng) == o);  // collapsed
  CHECK(t.check_invariants());
}

TEST_CASE("random single-qubit cliffords cover the six stabilizer states") {
  std::map<std::pair<std::pair<std::uint64_t, std::uint64_t>, int>, int> freq;
  for (int k = 0; k < 600; ++k) {
    auto rng = task_rng(42, k);
    Tableau t = Tableau::zero_state(1);
    apply_clifford(t, random_clifford(1, rng));
    CHECK(t.check_invariants());
    freq[{{t.stab[0].x, t.stab[0].z}, t.stab[0].r}]++;
  }
  CHECK(freq.size() == 6);
  for (auto& [k, v] : freq) CHECK(v > 50);  // roughly uniform (100 expected)
}

TEST_CASE("random cliffords agree with the dense oracle") {
  for (int inst = 0; inst < 30; ++inst) {
    auto rng = task_rng(43, inst);
    int n = 2 + static_cast<int>(rng() % 5);
    Tableau t = Tableau::zero_state(n);
    apply_clifford(t, random_clifford(n, rng));
    REQUIRE(t.check_invariants());
    Eigen::VectorXcd psi = tableau_statevector(t);
    CHECK(std::abs(psi.norm() - 1.0) < 1e-9);
    PureState dense;
    dense.site_dims.assign(n, 2);
    dense.amp = psi;
    for (int rep = 0; rep < 3; ++rep) {
      int q = static_cast<int>(rng() % n);
      double s = entropy(dense, {q}, EntropyOrder::vn);
      CHECK(std::fabs(s - t.region_entropy_bits({q}) * std::log(2.0)) < 1e-7);
    }
  }
}

TEST_CASE("embedded clifford application") {
  auto rng = task_rng(44, 0);
  Tableau t = Tableau::zero_state(4);
  CliffordElement cl = random_clifford(2, rng);
  apply_clifford(t, cl, {1, 3});
  CHECK(t.check_invariants());
  CHECK(t.region_entropy_bits({0}) == 0);  // untouched qubits stay product
  CHECK(t.region_entropy_bits({2}) == 0);
}

TEST_CASE("tripartite shapes") {
  Tableau ghz = Tableau::zero_state(3);
  ghz.apply_h(0);
  ghz.apply_cnot(0, 1);
  ghz.apply_cnot(0, 2);
  TripartiteShape s = tripartite_shape(ghz, {0}, {1}, {2});
  CHECK(s.g == 1);
  CHECK(s.e_hi == 0);
  CHECK(s.e_hj == 0);
  CHECK(s.e_ij == 0);

  Tableau tri = Tableau::zero_state(6);
  for (int q : {0, 2, 4}) {
    tri.apply_h(q);
    tri.apply_cnot(q, q + 1);
  }
  TripartiteShape u = tripartite_shape(tri, {0, 5}, {1, 2}, {3, 4});
  CHECK(u.g == 0);
  CHECK(u.e_hi == 1);
  CHECK(u.e_hj == 1);
  CHECK(u.e_ij == 1);
}

TEST_CASE("experiment layout") {
  SiteLattice lat = build_lattice(LatticeKind::square, 2, 2);
  auto qubits = experiment_qubits(1, lat);
  REQUIRE(qubits.size() == 4);
  int total = 0;
  for (const auto& qs : qubits) {
    CHECK(qs.size() == 2);  // degree 2, one qubit per bond half
    total += static_cast<int>(qs.size());
  }
  CHECK(total == 8);
}

TEST_CASE("tripartite experiment statistics") {
  SiteLattice lat = build_lattice(LatticeKind::square, 2, 2);
  TripartiteResult r = tripartite_mie_experiment(1, lat, 60, 0.75, 7);
  CHECK(r.n_samples == 60);
  CHECK(r.records.size() == 60);
  CHECK(r.p_hat >= 0.0);
  CHECK(r.p_hat <= 1.0);
  CHECK(r.ci_low <= r.p_hat);
  CHECK(r.ci_high >= r.p_hat);
  // product bonds leave every site pure: nothing is ever mixed
  TripartiteResult p = tripartite_mie_experiment(1, lat, 40, 0.75, 7, true);
  CHECK(p.p_hat == doctest::Approx(0.0));
}
