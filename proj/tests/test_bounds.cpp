#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "mielab/bounds.hpp"
#include "mielab/util.hpp"

using namespace mielab;

TEST_CASE("entropy floor after distillation") {
  CHECK(lemma1_bound(0.0, 8) == doctest::Approx(std::log(8.0)));
  CHECK(lemma1_bound(1.0, 2) == doctest::Approx(0.5 * std::log(2.0) - h2(0.5)));
  CHECK(lemma1_bound(2.0, 5) == doctest::Approx(0.0));
}

TEST_CASE("concentration inequality") {
  CHECK(markov_concentration(10.0, 4, 1.0) == 1.0);  // clamped
  double v = markov_concentration(0.01, 8, 1.0);
  CHECK(v == doctest::Approx(0.01 * std::log(8.0) / (2.0 * (1.0 - std::log(2.0)))));
}

TEST_CASE("average-error bound") {
  CHECK(f_of(1.0) == doctest::Approx(std::exp(1.0) - 1.0));
  double Z = 0.3;
  CHECK(lemma2_eps_bound(Z, 2) ==
        doctest::Approx(std::sqrt(2.0) * Z * (std::exp(Z) - 1.0) / Z));
}

TEST_CASE("full bound chain") {
  BoundReport r = theorem3_bound(std::exp(-3.0));
  CHECK(r.valid);
  CHECK(r.F == doctest::Approx(3.0));
  CHECK(r.d_prime == 45);  // ceil(e^6 / 9)
  CHECK(r.mie_lower_nats == doctest::Approx(6.0 - 2.0 * std::log(std::exp(1.0) * 3.0)));
  BoundReport weak = theorem3_bound(std::exp(-1.0));
  CHECK_FALSE(weak.valid);
}

TEST_CASE("chain consistency") {
  for (double F : {2.5, 3.0, 4.0, 6.0}) {
    double Z = std::exp(-F);
    BoundReport r = theorem3_bound(Z);
    REQUIRE(r.valid);
    double floor = lemma1_bound(std::min(2.0, lemma2_eps_bound(Z, r.d_prime)), r.d_prime);
    CHECK(floor >= r.mie_lower_nats - 1e-9);
  }
}

TEST_CASE("holographic thresholds") {
  ThresholdSet t = holographic_threshold(0.97);
  CHECK(t.S_crit_nats == doctest::Approx(1.94));
  CHECK(t.S_crit_bits == doctest::Approx(1.94 / std::log(2.0)));
  CHECK(t.chi_crit == 7);
}

TEST_CASE("per-cell factors and crude thresholds") {
  CellFactorTable f = fourlocal_constants(100);
  CHECK(f.c2 == doctest::Approx(std::sqrt(2.0 * 100.0 * 100.0 / (1e8 + 1.0))));
  CHECK(f.per_cell_factor == doctest::Approx(255.0 * f.c2));
  CellFactorTable b = brickwork_constants(100);
  CHECK(b.c2 == doctest::Approx(2.0 * 100.0 / (100.0 * 100.0 + 1.0)));
  CHECK(b.per_cell_factor == doctest::Approx(std::sqrt(3.0) * 65535.0 * b.c2));
  CHECK(crude_threshold_q(CellFactorTable::Architecture::fourlocal_d2) == 667);
  CHECK(crude_threshold_q(CellFactorTable::Architecture::brickwork_d4) == 419479);
}

TEST_CASE("ordered-phase premise") {
  AdvantageCheck a6 = advantage_premise_check(6, 0.97);
  CHECK(a6.pass);
  CHECK(a6.lhs == doctest::Approx(3.0 * std::log(2.0)));
  CHECK(a6.rhs == doctest::Approx(std::log(3.0) + 0.97));
  CHECK(a6.nu == doctest::Approx(std::exp(0.97 - 3.0 * std::log(2.0))));
  AdvantageCheck a5 = advantage_premise_check(5, 0.97);
  CHECK_FALSE(a5.pass);
}

TEST_CASE("triangle-route bound") {
  CHECK(vacuous_bound(9.0, 0.25) == doctest::Approx(1.5));
  CHECK(vacuous_bound(2.0, 0.25) == doctest::Approx(std::sqrt(0.5)));
}

TEST_CASE("contractivity of a trivial measurement") {
  // single-outcome POVM {I}: no traceless component survives
  std::vector<Eigen::MatrixXcd> povm = {Eigen::MatrixXcd::Identity(2, 2)};
  CHECK(contractivity_lambda(povm) == doctest::Approx(0.0).epsilon(1e-9));
  // a projective measurement has a nonzero contraction factor
  Eigen::MatrixXcd p0 = Eigen::MatrixXcd::Zero(2, 2), p1 = Eigen::MatrixXcd::Zero(2, 2);
  p0(0, 0) = 1;
  p1(1, 1) = 1;
  double lam = contractivity_lambda({p0, p1});
  CHECK(lam > 0.0);
  CHECK(std::isfinite(lam));
}
