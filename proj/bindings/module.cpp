#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "mielab/bmps.hpp"
#include "mielab/bounds.hpp"
#include "mielab/cli.hpp"
#include "mielab/lattice.hpp"
#include "mielab/quasientropy.hpp"
#include "mielab/saw.hpp"
#include "mielab/selfcheck.hpp"
#include "mielab/stabilizer.hpp"
#include "mielab/statevec.hpp"
#include "mielab/util.hpp"

namespace py = pybind11;
using namespace mielab;

namespace {

WalkLattice walk_lattice(const std::string& name) {
  if (name == "square") return WalkLattice::square;
  if (name == "triangular") return WalkLattice::triangular;
  if (name == "hexagonal") return WalkLattice::hexagonal;
  throw std::invalid_argument("unknown lattice: " + name);
}

HolographicSpec make_spec(int Lx, int Ly, int chi, std::uint64_t seed) {
  HolographicSpec spec;
  spec.lat = build_lattice(LatticeKind::square, Lx, Ly);
  spec.chi = chi;
  spec.seed = seed;
  return spec;
}

}  // namespace

PYBIND11_MODULE(_mielab, m) {
  m.doc() = "measurement-induced entanglement laboratory";

  m.def("thresholds", [] {
    ThresholdSet t = holographic_threshold(0.97);
    py::dict d;
    d["S_crit_nats"] = t.S_crit_nats;
    d["S_crit_bits"] = t.S_crit_bits;
    d["chi_crit"] = t.chi_crit;
    d["fourlocal_crude_q"] = crude_threshold_q(CellFactorTable::Architecture::fourlocal_d2);
    d["brickwork_crude_q"] = crude_threshold_q(CellFactorTable::Architecture::brickwork_d4);
    d["advantage_m"] = 6;
    return d;
  });

  m.def("count_rooted_walks",
        [](const std::string& lattice, int n) { return count_rooted_walks(walk_lattice(lattice), n); },
        py::arg("lattice"), py::arg("n"));
  m.def("count_rooted_polygons",
        [](const std::string& lattice, int l) {
          return count_rooted_polygons(walk_lattice(lattice), l);
        },
        py::arg("lattice"), py::arg("l"));

  m.def("zsaw",
        [](int Lx, int Ly, double beta, int lmax) {
          SiteLattice lat = build_lattice(LatticeKind::square, Lx, Ly);
          RegionPartition part = strip_partition(lat);
          DualGraph dual = dual_graph(lat);
          auto walks = enumerate_separating_walks(dual, lat.graph(), part, lmax);
          WeightModel wm;
          wm.mode = WeightModel::Mode::per_edge;
          wm.beta = beta;
          TailCertificate tail;
          tail.anchor_count = Ly;
          for (int k = 1; k <= 9; ++k)
            tail.rooted_counts.push_back(count_rooted_walks(WalkLattice::square, k));
          SawPartition sp = partition_function(walks, wm, lmax, &tail);
          py::dict d;
          d["n_walls"] = walks.size();
          d["exact_sum"] = sp.exact_sum;
          d["tail_bound"] = sp.tail_bound;
          d["tail_certified"] = sp.tail_certified;
          d["total_upper"] = sp.total_upper();
          return d;
        },
        py::arg("Lx"), py::arg("Ly"), py::arg("beta"), py::arg("lmax") = 10);

  m.def("bound_chain",
        [](double Z) {
          BoundReport r = theorem3_bound(Z);
          py::dict d;
          d["F"] = r.F;
          d["valid"] = r.valid;
          d["d_prime"] = r.d_prime;
          d["mie_lower_nats"] = r.mie_lower_nats;
          d["eps_upper"] = r.eps_upper;
          return d;
        },
        py::arg("Z_upper"));

  m.def("mie_monte_carlo",
        [](int Lx, int Ly, int chi, int n_circuits, std::uint64_t seed,
           const std::string& order) {
          HolographicSpec spec = make_spec(Lx, Ly, chi, seed);
          RegionPartition part = strip_partition(spec.lat);
          EntropyOrder eo = order == "renyi2" ? EntropyOrder::renyi2 : EntropyOrder::vn;
          MieEstimate e = mie_monte_carlo(spec, part, n_circuits, eo);
          py::dict d;
          d["mean"] = e.value.mean;
          d["stderr"] = e.value.stderr_;
          d["per_circuit"] = e.per_circuit;
          return d;
        },
        py::arg("Lx"), py::arg("Ly"), py::arg("chi"), py::arg("n_circuits"), py::arg("seed") = 0,
        py::arg("order") = "vn");

  m.def("predicted_swap_moments",
        [](int Lx, int Ly, int chi) {
          HolographicSpec spec = make_spec(Lx, Ly, chi, 0);
          RegionPartition part = strip_partition(spec.lat);
          PredictedMoments p = predicted_swap_moments(spec, part);
          py::dict d;
          d["prefactor"] = p.prefactor;
          d["Zpp"] = p.Zpp;
          d["Zmp"] = p.Zmp;
          d["numerator"] = p.numerator();
          d["denominator"] = p.denominator();
          d["q2"] = p.q2();
          return d;
        },
        py::arg("Lx"), py::arg("Ly"), py::arg("chi"));

  m.def("swap_trick_moments",
        [](int Lx, int Ly, int chi, int n_circuits, std::uint64_t seed) {
          HolographicSpec spec = make_spec(Lx, Ly, chi, seed);
          RegionPartition part = strip_partition(spec.lat);
          SwapMoments s = swap_trick_moments(spec, part, n_circuits);
          py::dict d;
          d["numerator"] = s.numerator.mean;
          d["numerator_stderr"] = s.numerator.stderr_;
          d["denominator"] = s.denominator.mean;
          d["denominator_stderr"] = s.denominator.stderr_;
          d["q2"] = s.q2();
          return d;
        },
        py::arg("Lx"), py::arg("Ly"), py::arg("chi"), py::arg("n_circuits"), py::arg("seed") = 0);

  m.def("tripartite_experiment",
        [](int m_, int Lx, int Ly, int n_samples, double c2, std::uint64_t seed,
           bool product_bonds) {
          SiteLattice lat = build_lattice(LatticeKind::square, Lx, Ly);
          TripartiteResult r = tripartite_mie_experiment(m_, lat, n_samples, c2, seed,
                                                         product_bonds);
          py::dict d;
          d["p_hat"] = r.p_hat;
          d["ci_low"] = r.ci_low;
          d["ci_high"] = r.ci_high;
          d["site_premise_p"] = r.site_premise_p;
          d["n_samples"] = r.n_samples;
          return d;
        },
        py::arg("m"), py::arg("Lx"), py::arg("Ly"), py::arg("n_samples"), py::arg("c2") = 0.75,
        py::arg("seed") = 0, py::arg("product_bonds") = false);

  m.def("sebd_sample",
        [](int Lx, int Ly, int chi, int chi_max, std::uint64_t seed) {
          HolographicSpec spec = make_spec(Lx, Ly, chi, seed);
          TruncationPolicy pol;
          pol.chi_max = chi_max;
          auto rng = task_rng(seed, 5000);
          SebdResult r = sebd_sample(spec, pol, rng);
          py::dict d;
          d["outcomes"] = r.outcomes;
          d["aborted"] = r.aborted;
          std::vector<double> ent;
          for (const auto& c : r.columns) ent.push_back(c.half_chain_entropy);
          d["half_chain_entropy"] = ent;
          return d;
        },
        py::arg("Lx"), py::arg("Ly"), py::arg("chi"), py::arg("chi_max") = 16,
        py::arg("seed") = 0);

  m.def("run_criterion",
        [](int id) {
          CriterionResult r = run_criterion(id);
          py::dict d;
          d["id"] = r.id;
          d["pass"] = r.pass;
          d["detail"] = r.detail;
          return d;
        },
        py::arg("id"));

  m.def("run_cli",
        [](const std::vector<std::string>& args) {
          std::ostringstream out, err;
          int code = run_cli(args, out, err);
          return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"));
}
