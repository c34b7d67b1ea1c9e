#include "mielab/selfcheck.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "mielab/bmps.hpp"
#include "mielab/bounds.hpp"
#include "mielab/cli.hpp"
#include "mielab/lattice.hpp"
#include "mielab/quasientropy.hpp"
#include "mielab/saw.hpp"
#include "mielab/stabilizer.hpp"
#include "mielab/statevec.hpp"
#include "mielab/util.hpp"

namespace mielab {

namespace {

struct Check {
  bool pass = true;
  std::ostringstream detail;

  void expect(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << "[failed: " << what << "] ";
    }
  }
};

// ---- 1: closed-form constants ----------------------------------------------

CriterionResult crit1() {
  Check c;
  ThresholdSet t = holographic_threshold(0.97);
  c.expect(std::fabs(t.S_crit_nats - 1.94) < 5e-3, "S_crit nats != 1.94");
  c.expect(std::fabs(t.S_crit_bits - 2.80) < 5e-3, "S_crit bits != 2.80");
  c.expect(t.chi_crit == 7, "chi_crit != 7");
  long long q = crude_threshold_q(CellFactorTable::Architecture::brickwork_d4);
  c.expect(q == 419479, "brickwork crude threshold != 419479");
  AdvantageCheck a6 = advantage_premise_check(6, 0.97);
  c.expect(a6.pass, "premise fails at m=6");
  c.expect(std::fabs(a6.lhs - 2.0794) < 5e-5, "m=6 lhs != 2.0794");
  c.expect(std::fabs(a6.rhs - 2.0686) < 5e-5, "m=6 rhs != 2.0686");
  c.expect(std::fabs(a6.nu - 0.3298) < 1.1e-4, "m=6 nu != 0.3298");
  c.expect(a6.nu <= 1.0 / 3.0, "m=6 nu > 1/3");
  AdvantageCheck a5 = advantage_premise_check(5, 0.97);
  c.expect(!a5.pass, "premise passes at m=5");
  c.detail << "S_crit=" << t.S_crit_nats << " nats (" << t.S_crit_bits << " bits), chi_crit="
           << t.chi_crit << ", brickwork q=" << q << ", m=6 pass / m=5 fail";
  return {1, c.pass, c.detail.str()};
}

// ---- 2: walk counts --------------------------------------------------------

CriterionResult crit2() {
  Check c;
  std::vector<long long> sq;
  for (int n = 1; n <= 10; ++n) sq.push_back(count_rooted_walks(WalkLattice::square, n));
  for (int i = 1; i <= 10; ++i)
    for (int j = 1; i + j <= 10; ++j)
      c.expect(sq[i + j - 1] <= sq[i - 1] * sq[j - 1], "square submultiplicativity");
  const double mu_hex = std::sqrt(2.0 + std::sqrt(2.0));
  for (int k = 1; k <= 12; ++k) {
    long long ck = count_rooted_walks(WalkLattice::hexagonal, k);
    c.expect(std::pow(static_cast<double>(ck), 1.0 / k) >= mu_hex - 1e-12,
             "hexagonal growth-rate lower bound");
  }
  for (int l = 1; l <= 12; ++l) {
    long long pl = count_rooted_polygons(WalkLattice::square, l);
    c.expect(static_cast<double>(pl) <= std::exp(0.97 * l), "square polygon bound");
  }
  c.detail << "square c1..c10 = ";
  for (long long v : sq) c.detail << v << " ";
  c.detail << "(submultiplicative); hexagonal growth >= sqrt(2+sqrt2); polygons within e^{0.97 l}";
  return {2, c.pass, c.detail.str()};
}

// ---- 3: certified strip partition sums --------------------------------------

struct StripZ {
  SawPartition sp;
  std::size_t n_walls = 0;
};

StripZ strip_Z(int Lx, int Ly, double beta, int lmax) {
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
  StripZ r;
  r.sp = partition_function(walks, wm, lmax, &tail);
  r.n_walls = walks.size();
  return r;
}

CriterionResult crit3() {
  Check c;
  struct Case {
    int Lx, Ly, lmax;
    double beta;
  };
  for (const Case& k : {Case{4, 3, 12, 1.5}, Case{4, 3, 10, 2.0}, Case{5, 3, 10, 2.0},
                        Case{6, 4, 10, 2.5}}) {
    StripZ r = strip_Z(k.Lx, k.Ly, k.beta, k.lmax);
    double rhs = k.Ly * std::exp(-(k.beta - 0.97) * k.Lx) * (1.0 + 1e-9);
    c.expect(r.sp.tail_certified, "tail not certified");
    c.expect(r.sp.total_upper() <= rhs, "certified sum exceeds the strip tail form");
    c.detail << "(" << k.Lx << "x" << k.Ly << ", beta=" << k.beta << ") Z<=" << r.sp.total_upper()
             << " vs " << rhs << "; ";
  }
  return {3, c.pass, c.detail.str()};
}

// ---- 4: inequality chain on holographic instances ---------------------------

double saw_Z_entropy_driven(const SiteLattice& lat, const RegionPartition& part, int chi) {
  DualGraph dual = dual_graph(lat);
  WeightModel wm;
  wm.mode = WeightModel::Mode::entropy_driven;
  const double s2 = std::log(static_cast<double>(chi));
  wm.energy = [s2](const Walk& w) { return 0.5 * s2 * w.length(); };
  // complete enumeration: a self-avoiding wall cannot revisit a dual edge
  int lmax = static_cast<int>(dual.edges.size());
  auto walks = enumerate_separating_walks(dual, lat.graph(), part, lmax);
  return partition_function(walks, wm, lmax, nullptr).exact_sum;
}

CriterionResult crit4() {
  Check c;
  struct Inst {
    int Lx, Ly, chi;
  };
  const std::vector<Inst> insts = {{1, 3, 2}, {1, 3, 3}, {1, 3, 4}, {1, 4, 2}, {1, 4, 3},
                                   {1, 4, 4}, {2, 3, 2}, {2, 3, 3}, {1, 5, 2}, {1, 5, 3}};
  const std::vector<std::uint64_t> seeds = {11, 12};
  const long long d_prime = 2;
  const std::size_t n_unitaries = 12;
  int n_instances = 0;
  for (const Inst& in : insts) {
    for (std::uint64_t seed : seeds) {
      ++n_instances;
      HolographicSpec spec;
      spec.lat = build_lattice(LatticeKind::square, in.Lx, in.Ly);
      spec.chi = in.chi;
      spec.seed = seed;
      RegionPartition part = strip_partition(spec.lat);
      auto rng = task_rng(seed, 0);
      PureState st = prepare_holographic(spec, rng);
      auto samples = measure_exhaustive(st, part.B);
      long long dA = 1;
      for (int a : part.A) dA *= st.site_dims[a];
      std::vector<int> apos(part.A.size());
      for (std::size_t i = 0; i < part.A.size(); ++i) apos[i] = static_cast<int>(i);
      double Z = saw_Z_entropy_driven(spec.lat, part, in.chi);
      double eps_bar = 0.0, eps_var = 0.0, mie = 0.0;
      std::size_t idx = 0;
      for (const auto& s : samples) {
        ++idx;
        if (s.p < 1e-12) continue;
        double S = entropy(s.post, apos, EntropyOrder::vn);
        double S2 = entropy(s.post, apos, EntropyOrder::renyi2);
        auto drng = task_rng(seed, 7000 + idx);
        DistillResult d = distill(s.post, dA, d_prime, n_unitaries, drng);
        // continuity floor, minimized over the 3-sigma window of the error
        double lo = std::max(0.0, d.eps - 3.0 * d.stderr_);
        double hi = std::min(2.0, d.eps + 3.0 * d.stderr_);
        double floor = 1e300;
        for (int g = 0; g <= 24; ++g)
          floor = std::min(floor, lemma1_bound(lo + (hi - lo) * g / 24.0, d_prime));
        c.expect(S >= floor - 1e-9, "continuity floor violated per outcome");
        c.expect(d.eps <= distill_guarantee(d_prime, S2) + 3.0 * d.stderr_ + 1e-9,
                 "per-outcome error guarantee violated");
        eps_bar += s.p * d.eps;
        eps_var += s.p * s.p * d.stderr_ * d.stderr_;
        mie += s.p * S;
      }
      double eps_sigma = std::sqrt(eps_var);
      c.expect(eps_bar <= lemma2_eps_bound(Z, d_prime) + 3.0 * eps_sigma + 1e-9,
               "averaged error exceeds the walk bound");
      BoundReport rep = theorem3_bound(Z);
      if (rep.valid) c.expect(mie >= rep.mie_lower_nats, "certified lower bound violated");
    }
  }
  c.detail << n_instances << " instances (lattices up to 2x3, chi 2..4, d'=2): per-outcome "
           << "floor + guarantee, averaged error vs sqrt(d') Z f(Z), certified bound when valid";
  return {4, c.pass, c.detail.str()};
}

// ---- 5: replica moments vs spin sums ----------------------------------------

CriterionResult crit5() {
  Check c;
  struct Inst {
    int Lx, Ly;
  };
  for (const Inst& in : {Inst{2, 2}, Inst{2, 3}}) {
    HolographicSpec spec;
    spec.lat = build_lattice(LatticeKind::square, in.Lx, in.Ly);
    spec.chi = 2;
    spec.seed = 21;
    RegionPartition part = strip_partition(spec.lat);
    PredictedMoments pred = predicted_swap_moments(spec, part);
    PredictedMoments preds = predicted_swap_moments_state(spec, part);
    c.expect(std::fabs(pred.Zpp - preds.Zpp) < 1e-9 && std::fabs(pred.Zmp - preds.Zmp) < 1e-9,
             "domain-wall rule disagrees with the state rule");
    SwapMoments mc = swap_trick_moments(spec, part, 400);
    c.expect(std::fabs(mc.numerator.mean - pred.numerator()) <=
                 3.0 * mc.numerator.stderr_ + 1e-12,
             "numerator moment outside 3 sigma");
    c.expect(std::fabs(mc.denominator.mean - pred.denominator()) <=
                 3.0 * mc.denominator.stderr_ + 1e-12,
             "denominator moment outside 3 sigma");
    // triangle-inequality route is vacuous at the distillation dimension the
    // free energy would dictate ...
    double F = -std::log(pred.Zmp);
    double dv = std::ceil(std::exp(2.0 * F) / (F * F));
    c.expect(vacuous_bound(dv, pred.Zmp) > 1.0, "triangle route unexpectedly informative");
    // ... while the walk bound stays below 1 where its premise (Z < 1) holds
    double Zsaw = saw_Z_entropy_driven(spec.lat, part, spec.chi);
    if (Zsaw < 1.0)
      c.expect(lemma2_eps_bound(Zsaw, 2) < 1.0, "walk bound vacuous despite Z < 1");
    c.detail << "(" << in.Lx << "x" << in.Ly << ") Zpp=" << pred.Zpp << " Zmp=" << pred.Zmp
             << " mc_num=" << mc.numerator.mean << " mc_den=" << mc.denominator.mean
             << " Zsaw=" << Zsaw << "; ";
  }
  return {5, c.pass, c.detail.str()};
}

// ---- 6: strict locality of the shallow circuit ------------------------------

CriterionResult crit6() {
  Check c;
  PlaquetteSpec spec;
  spec.Lx = 16;
  spec.Ly = 8;
  spec.depth = 2;
  spec.seed = 99;
  SiteLattice lat = build_lattice(LatticeKind::square, 16, 8);
  CellLattice big = block_cells(lat, 2);   // 8x4 cells
  CellLattice half = block_cells(lat, 1);  // 4x2 cells
  LocalityCheckResult rb = strict_locality_check(spec, big, 2);
  c.expect(rb.pairs_checked > 0, "no screened pairs at full cell size");
  c.expect(rb.max_deviation < 1e-9, "screened pairs fail to factorize");
  LocalityCheckResult rh = strict_locality_check(spec, half, 8, 0.1);
  c.expect(rh.max_deviation > 0.1, "half cells unexpectedly factorize");
  c.detail << "8x4 cells: " << rb.pairs_checked << " screened pairs, max deviation "
           << rb.max_deviation << "; 4x2 cells: " << rh.pairs_checked
           << " pairs, max deviation " << rh.max_deviation;
  return {6, c.pass, c.detail.str()};
}

// ---- 7: stabilizer engine vs dense oracle -----------------------------------

CriterionResult crit7() {
  Check c;
  // gate-walk cross-checks against the dense simulator
  for (int inst = 0; inst < 200; ++inst) {
    auto rng = task_rng(701, inst);
    int n = 2 + static_cast<int>(rng() % 13);  // 2..14
    Tableau tab = Tableau::zero_state(n);
    PureState psi = product_zero_state(std::vector<long long>(n, 2));
    Eigen::MatrixXcd H(2, 2), S(2, 2), CX(4, 4);
    H << 1, 1, 1, -1;
    H /= std::sqrt(2.0);
    S << 1, 0, 0, cd(0, 1);
    CX.setZero();
    CX(0, 0) = CX(1, 1) = CX(2, 3) = CX(3, 2) = 1;
    int n_ops = 3 * n + static_cast<int>(rng() % (3 * n));
    for (int t = 0; t < n_ops; ++t) {
      int kind = static_cast<int>(rng() % 4);
      int q = static_cast<int>(rng() % n);
      if (kind == 0) {
        tab.apply_h(q);
        apply_gate(psi, {q}, H);
      } else if (kind == 1) {
        tab.apply_s(q);
        apply_gate(psi, {q}, S);
      } else if (kind == 2) {
        int r = static_cast<int>(rng() % n);
        if (r == q) r = (q + 1) % n;
        tab.apply_cnot(q, r);
        apply_gate(psi, {q, r}, CX);
      } else {
        int o = tab.measure_z(q, rng);
        // project the dense state onto the same outcome
        const auto strides = [&] {
          std::vector<long long> s(n, 1);
          for (int i = n - 2; i >= 0; --i) s[i] = s[i + 1] * 2;
          return s;
        }();
        for (long long g = 0; g < psi.dim(); ++g)
          if (((g / strides[q]) % 2) != o) psi.amp(g) = 0.0;
        double nrm = psi.amp.norm();
        c.expect(nrm > 1e-9, "dense oracle rejects the tableau outcome");
        psi.amp /= nrm;
      }
    }
    c.expect(tab.check_invariants(), "tableau invariants broken");
    for (int rep = 0; rep < 3; ++rep) {
      int sz = 1 + static_cast<int>(rng() % (n - 1));
      std::vector<int> perm(n);
      for (int i = 0; i < n; ++i) perm[i] = i;
      std::shuffle(perm.begin(), perm.end(), rng);
      std::vector<int> region(perm.begin(), perm.begin() + sz);
      double dense = entropy(psi, region, EntropyOrder::vn);
      double tabent = tab.region_entropy_bits(region) * std::log(2.0);
      c.expect(std::fabs(dense - tabent) < 1e-6, "entropy mismatch vs dense oracle");
    }
  }
  // canonical decompositions on random tripartitions
  int shape_pass = 0;
  for (int inst = 0; inst < 10000; ++inst) {
    auto rng = task_rng(702, inst);
    int n = 3 + static_cast<int>(rng() % 10);  // 3..12
    Tableau tab = Tableau::zero_state(n);
    apply_clifford(tab, random_clifford(n, rng));
    std::vector<int> H, I, J;
    for (int q = 0; q < n; ++q) {
      int which = q < 3 ? q : static_cast<int>(rng() % 3);
      (which == 0 ? H : which == 1 ? I : J).push_back(q);
    }
    TripartiteShape s = tripartite_shape(tab, H, I, J);
    bool ok = s.g >= 0 && s.e_hi >= 0 && s.e_hj >= 0 && s.e_ij >= 0;
    ok = ok && tab.region_entropy_bits(H) == s.g + s.e_hi + s.e_hj;
    ok = ok && tab.region_entropy_bits(I) == s.g + s.e_hi + s.e_ij;
    ok = ok && tab.region_entropy_bits(J) == s.g + s.e_hj + s.e_ij;
    std::vector<int> HI = H, HJ = H;
    HI.insert(HI.end(), I.begin(), I.end());
    HJ.insert(HJ.end(), J.begin(), J.end());
    ok = ok && tab.region_entropy_bits(HI) == s.g + s.e_hj + s.e_ij;
    ok = ok && tab.region_entropy_bits(HJ) == s.g + s.e_hi + s.e_ij;
    if (ok) ++shape_pass;
  }
  c.expect(shape_pass == 10000, "tripartite shapes fail to reproduce the region entropies");
  // fixtures
  {
    Tableau ghz = Tableau::zero_state(3);
    ghz.apply_h(0);
    ghz.apply_cnot(0, 1);
    ghz.apply_cnot(0, 2);
    TripartiteShape s = tripartite_shape(ghz, {0}, {1}, {2});
    c.expect(s.g == 1 && s.e_hi == 0 && s.e_hj == 0 && s.e_ij == 0, "GHZ fixture shape");
    Tableau tri = Tableau::zero_state(6);
    for (int q : {0, 2, 4}) {
      tri.apply_h(q);
      tri.apply_cnot(q, q + 1);
    }
    TripartiteShape t = tripartite_shape(tri, {0, 5}, {1, 2}, {3, 4});
    c.expect(t.g == 0 && t.e_hi == 1 && t.e_hj == 1 && t.e_ij == 1, "Bell-triangle fixture");
  }
  c.detail << "200 gate-walk oracle instances exact; " << shape_pass
           << "/10000 tripartitions consistent; GHZ and Bell-triangle fixtures correct";
  return {7, c.pass, c.detail.str()};
}

// ---- 8: boundary-MPS contraction --------------------------------------------

CriterionResult crit8() {
  Check c;
  TruncationPolicy generous;
  generous.chi_max = 64;
  generous.cutoff = 0.0;
  struct Net {
    int Lx, Ly, chi;
  };
  double worst = 0.0;
  int net_idx = 0;
  for (const Net& n : {Net{2, 2, 2}, Net{3, 3, 2}, Net{4, 3, 2}, Net{3, 4, 2}, Net{3, 3, 3}}) {
    auto rng = task_rng(801, net_idx++);
    TensorGrid g = sample_gaussian_tn(n.Lx, n.Ly, n.chi, rng);
    cd exact = contract_exact(g);
    BmpsResult r = contract_bmps(g, generous);
    c.expect(!r.aborted, "generous contraction aborted");
    double err = std::abs(r.amplitude - exact) / std::max(1.0, std::abs(exact));
    worst = std::max(worst, err);
    c.expect(err < 1e-8, "contraction disagrees with brute force");
  }
  // a rank-1 boundary cannot carry the entangled bonds
  {
    HolographicSpec spec;
    spec.lat = build_lattice(LatticeKind::square, 4, 4);
    spec.chi = 2;
    spec.seed = 88;
    TruncationPolicy tight;
    tight.chi_max = 1;
    auto rng = task_rng(802, 0);
    SebdResult s = sebd_sample(spec, tight, rng);
    c.expect(s.aborted, "chi_max=1 run did not abort");
  }
  // regime split: strong vs weak bond weights
  std::vector<double> diffs;
  double mh = 0.0, ml = 0.0;
  for (int seed = 0; seed < 50; ++seed) {
    auto rng_h = task_rng(803, seed);
    TensorGrid high = sample_gaussian_tn(8, 8, 2, rng_h);
    auto rng_l = task_rng(803, seed);
    TensorGrid low = sample_gaussian_tn(8, 8, 2, rng_l);
    apply_bond_weights(low, {1.0, 0.05});
    BmpsResult rh = contract_bmps(high, generous);
    BmpsResult rl = contract_bmps(low, generous);
    double eh = rh.columns[4].half_chain_entropy;
    double el = rl.columns[4].half_chain_entropy;
    diffs.push_back(eh - 2.0 * el);
    mh += eh / 50.0;
    ml += el / 50.0;
  }
  MeanStderr d = mean_stderr(diffs);
  c.expect(d.mean > 1.645 * d.stderr_, "regime split not significant at 5%");
  c.detail << "oracle nets worst relative error " << worst
           << "; chi_max=1 aborts; boundary entropy at t=Lx/2: strong " << mh << " vs weak "
           << ml << " nats (one-sided t=" << (d.stderr_ > 0 ? d.mean / d.stderr_ : 1e9) << ")";
  return {8, c.pass, c.detail.str()};
}

// ---- 9: byte-stable determinism ---------------------------------------------

std::string run_capture(const std::vector<std::string>& args, int* code = nullptr) {
  std::ostringstream out, err;
  int rc = run_cli(args, out, err);
  if (code) *code = rc;
  return out.str() + "\x1e" + err.str();
}

CriterionResult crit9() {
  Check c;
  const std::vector<std::vector<std::string>> cases = {
      {"mielab", "thresholds"},
      {"mielab", "saw-enum", "--lattice", "hexagonal", "--max-n", "8"},
      {"mielab", "zsaw", "--Lx", "4", "--Ly", "3", "--beta", "2.0", "--lmax", "10"},
      {"mielab", "bound", "--Z", "0.01"},
      {"mielab", "mie-sim", "--Lx", "1", "--Ly", "3", "--chi", "2", "--n-circuits", "6",
       "--seed", "7"},
      {"mielab", "distill", "--Lx", "1", "--Ly", "3", "--chi", "2", "--d-prime", "2",
       "--n-unitaries", "4", "--seed", "7"},
      {"mielab", "quasi", "--Lx", "2", "--Ly", "2", "--chi", "2", "--n-circuits", "8",
       "--seed", "7"},
      {"mielab", "stab-advantage", "--n-samples", "40", "--seed", "3"},
      {"mielab", "sebd", "--Lx", "4", "--Ly", "4", "--chi", "2", "--n-samples", "2", "--seed",
       "5", "--chi-max", "8"},
  };
  for (const auto& base : cases) {
    int rc1 = 0, rc2 = 0, rc3 = 0;
    std::string a = run_capture(base, &rc1);
    std::string b = run_capture(base, &rc2);
    auto threaded = base;
    threaded.push_back("--threads");
    threaded.push_back("3");
    std::string t = run_capture(threaded, &rc3);
    c.expect(rc1 == 0 && rc2 == 0 && rc3 == 0, "subcommand failed: " + base[1]);
    c.expect(a == b, "rerun differs: " + base[1]);
    c.expect(a == t, "thread count changes output: " + base[1]);
  }
  c.detail << cases.size() << " subcommands byte-stable across reruns and thread counts";
  return {9, c.pass, c.detail.str()};
}

}  // namespace

CriterionResult run_criterion(int id) {
  switch (id) {
    case 1: return crit1();
    case 2: return crit2();
    case 3: return crit3();
    case 4: return crit4();
    case 5: return crit5();
    case 6: return crit6();
    case 7: return crit7();
    case 8: return crit8();
    case 9: return crit9();
    default: return {id, false, "unknown criterion"};
  }
}

std::vector<CriterionResult> run_all_criteria() {
  std::vector<CriterionResult> out;
  for (int id = 1; id <= 9; ++id) out.push_back(run_criterion(id));
  return out;
}

}  // namespace mielab
