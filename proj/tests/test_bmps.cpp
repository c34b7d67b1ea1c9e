#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "mielab/bmps.hpp"

using namespace mielab;

namespace {

TruncationPolicy generous() {
  TruncationPolicy p;
  p.chi_max = 64;
  p.cutoff = 0.0;
  return p;
}

}  // namespace

TEST_CASE("gaussian grids are consistent") {
  auto rng = task_rng(60, 0);
  TensorGrid g = sample_gaussian_tn(4, 3, 2, rng);
  CHECK(g.consistent());
  CHECK(g.t.size() == 12);
  CHECK(g.at(0, 0).dl == 1);
  CHECK(g.at(0, 0).du == 1);
  CHECK(g.at(1, 1).dl == 2);
}

TEST_CASE("trivial network contracts to one") {
  TensorGrid g;
  g.Lx = 3;
  g.Ly = 2;
  for (int i = 0; i < 6; ++i) {
    Tensor4 t = Tensor4::zero(1, 1, 1, 1);
    t.at(0, 0, 0, 0) = 1.0;
    g.t.push_back(t);
  }
  CHECK(std::abs(contract_exact(g) - cd(1, 0)) < 1e-12);
  BmpsResult r = contract_bmps(g, generous());
  CHECK_FALSE(r.aborted);
  CHECK(std::abs(r.amplitude - cd(1, 0)) < 1e-12);
}

TEST_CASE("boundary contraction matches brute force") {
  for (int net = 0; net < 4; ++net) {
    auto rng = task_rng(61, net);
    int Lx = 2 + net % 2, Ly = 2 + net / 2;
    TensorGrid g = sample_gaussian_tn(Lx, Ly, 2, rng);
    cd exact = contract_exact(g);
    BmpsResult r = contract_bmps(g, generous());
    CHECK_FALSE(r.aborted);
    CHECK(std::abs(r.amplitude - exact) <= 1e-8 * std::max(1.0, std::abs(exact)));
    CHECK(static_cast<int>(r.columns.size()) == Lx);
  }
}

TEST_CASE("bond weights dampen entanglement") {
  auto rng = task_rng(62, 0);
  TensorGrid g = sample_gaussian_tn(3, 3, 2, rng);
  TensorGrid damped = g;
  apply_bond_weights(damped, {1.0, 0.0});  // kills the second bond channel
  cd exact = contract_exact(damped);
  TruncationPolicy tight;
  tight.chi_max = 1;
  BmpsResult r = contract_bmps(damped, tight);
  CHECK_FALSE(r.aborted);  // effectively a chi=1 network
  CHECK(std::abs(r.amplitude - exact) <= 1e-8 * std::max(1.0, std::abs(exact)));
}

TEST_CASE("circuit-sampled network reproduces the outcome amplitude") {
  HolographicSpec spec;
  spec.lat = build_lattice(LatticeKind::square, 3, 3);
  spec.chi = 2;
  spec.seed = 63;
  auto rng = task_rng(63, 0);
  ExactTnSample s = sample_exact_tn(spec, rng);
  CHECK(s.grid.consistent());
  CHECK(s.outcome.size() == 9);
  cd amp = contract_exact(s.grid);
  CHECK(std::norm(amp) == doctest::Approx(s.p).epsilon(1e-8));
  BmpsResult r = contract_bmps(s.grid, generous());
  CHECK(std::abs(r.amplitude - amp) <= 1e-8 * std::max(1.0, std::abs(amp)));
}

TEST_CASE("sidewise sampling runs and is reproducible") {
  HolographicSpec spec;
  spec.lat = build_lattice(LatticeKind::square, 4, 4);
  spec.chi = 2;
  spec.seed = 64;
  TruncationPolicy pol = generous();
  auto rng1 = task_rng(64, 1);
  SebdResult a = sebd_sample(spec, pol, rng1);
  CHECK_FALSE(a.aborted);
  CHECK(a.outcomes.size() == 16);
  for (std::size_t i = 0; i < a.outcomes.size(); ++i) {
    CHECK(a.outcomes[i] >= 0);
    CHECK(a.outcomes[i] < site_dim(spec.lat, static_cast<int>(i), spec.chi));
  }
  for (const auto& col : a.columns) {
    CHECK(col.chi_used >= 1);
    CHECK(col.half_chain_entropy >= 0.0);
  }
  auto rng2 = task_rng(64, 1);
  SebdResult b = sebd_sample(spec, pol, rng2);
  CHECK(a.outcomes == b.outcomes);
}

TEST_CASE("starved truncation aborts") {
  HolographicSpec spec;
  spec.lat = build_lattice(LatticeKind::square, 4, 4);
  spec.chi = 2;
  spec.seed = 65;
  TruncationPolicy tight;
  tight.chi_max = 1;
  auto rng = task_rng(65, 0);
  SebdResult r = sebd_sample(spec, tight, rng);
  CHECK(r.aborted);
  CHECK(r.abort_column >= 0);
}
