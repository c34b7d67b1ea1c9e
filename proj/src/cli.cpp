#include "mielab/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "mielab/bmps.hpp"
#include "mielab/bounds.hpp"
#include "mielab/lattice.hpp"
#include "mielab/quasientropy.hpp"
#include "mielab/saw.hpp"
#include "mielab/selfcheck.hpp"
#include "mielab/stabilizer.hpp"
#include "mielab/statevec.hpp"
#include "mielab/util.hpp"

namespace mielab {

namespace {

using json = nlohmann::ordered_json;

constexpr const char* kVersion = "mielab 1.0.0";

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

struct CommonOpts {
  std::string config_path;
  std::string out_dir;
  std::string format;  // "json" or "csv"; empty = subcommand default
  std::uint64_t seed = 0;
  int threads = 1;
};

void add_common(CLI::App* app, CommonOpts& c) {
  app->add_option("--config", c.config_path, "JSON file whose keys provide option defaults");
  app->add_option("--seed", c.seed, "master seed");
  app->add_option("--out", c.out_dir, "output directory (file <out>/<subcommand>.<ext>)");
  app->add_option("--threads", c.threads, "worker cap (results are thread-count independent)")
      ->check(CLI::PositiveNumber);
  app->add_option("--format", c.format, "output format")
      ->check(CLI::IsMember({"json", "csv"}));
}

// Expand `--config file.json` into leading command-line tokens so explicit
// flags still override the config values.
std::vector<std::string> expand_config(const std::vector<std::string>& args, std::ostream& err) {
  std::vector<std::string> out;
  if (args.empty()) return args;
  out.push_back(args[0]);
  std::string path;
  for (std::size_t i = 1; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
  }
  if (!path.empty()) {
    std::ifstream f(path);
    if (!f) throw CLI::ValidationError("--config", "cannot open " + path);
    json cfg;
    try {
      cfg = json::parse(f);
    } catch (const json::parse_error& e) {
      throw CLI::ValidationError("--config", std::string("parse error in ") + path + ": " +
                                                 e.what());
    }
    if (!cfg.is_object()) throw CLI::ValidationError("--config", "top level must be an object");
  }
  // keep the subcommand name first, then config-derived defaults, then the
  // explicit flags (which therefore override the config)
  std::size_t i = 1;
  if (i < args.size() && !args[i].empty() && args[i][0] != '-') out.push_back(args[i++]);
  if (!path.empty()) {
    std::ifstream f(path);
    json cfg = json::parse(f);
    for (auto& [k, v] : cfg.items()) {
      // an explicit flag wins outright: drop the config value for that key
      if (std::find(args.begin(), args.end(), "--" + k) != args.end()) continue;
      out.push_back("--" + k);
      if (v.is_string()) out.push_back(v.get<std::string>());
      else out.push_back(v.dump());
    }
  }
  for (; i < args.size(); ++i) out.push_back(args[i]);
  return out;
}

void emit(const CommonOpts& c, const std::string& name, const std::string& ext,
          const std::string& content, std::ostream& os) {
  os << content;
  if (!c.out_dir.empty()) {
    std::filesystem::create_directories(c.out_dir);
    std::ofstream f(std::filesystem::path(c.out_dir) / (name + "." + ext), std::ios::binary);
    f << content;
  }
}

std::string json_or_csv(const CommonOpts& c, const json& j) {
  if (c.format == "csv") {
    std::ostringstream os;
    os << "key,value\n";
    std::function<void(const std::string&, const json&)> walk = [&](const std::string& prefix,
                                                                    const json& v) {
      if (v.is_object()) {
        for (auto& [k, w] : v.items()) walk(prefix.empty() ? k : prefix + "." + k, w);
      } else if (v.is_array()) {
        int i = 0;
        for (auto& w : v) walk(prefix + "." + std::to_string(i++), w);
      } else {
        os << prefix << "," << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
      }
    };
    walk("", j);
    return os.str();
  }
  return j.dump(2) + "\n";
}

// deterministic parallel map: task i writes slot i regardless of scheduling
template <typename F>
void parallel_for(std::size_t n, int threads, F&& fn) {
  if (threads <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  std::size_t per = (n + threads - 1) / threads;
  for (int t = 0; t < threads; ++t) {
    std::size_t lo = t * per, hi = std::min(n, lo + per);
    if (lo >= hi) break;
    pool.emplace_back([lo, hi, &fn] {
      for (std::size_t i = lo; i < hi; ++i) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

json config_header(const CommonOpts& c, json extra) {
  json h;
  h["version"] = kVersion;
  h["seed"] = c.seed;
  for (auto& [k, v] : extra.items()) h[k] = v;
  return h;
}

// ---- subcommand payloads ---------------------------------------------------

int cmd_thresholds(const CommonOpts& c, std::ostream& os) {
  ThresholdSet t = holographic_threshold(0.97);
  json j;
  j["config"] = config_header(c, {{"mu_log_upper", 0.97}});
  j["units"] = "entropies in nats unless suffixed _bits";
  j["S_crit_nats"] = t.S_crit_nats;
  j["S_crit_bits"] = t.S_crit_bits;
  j["chi_crit"] = t.chi_crit;
  j["fourlocal_crude_q"] = crude_threshold_q(CellFactorTable::Architecture::fourlocal_d2);
  j["brickwork_crude_q"] = crude_threshold_q(CellFactorTable::Architecture::brickwork_d4);
  for (int m : {5, 6}) {
    AdvantageCheck a = advantage_premise_check(m, 0.97);
    json ja;
    ja["lhs"] = a.lhs;
    ja["rhs"] = a.rhs;
    ja["nu"] = a.nu;
    ja["pass"] = a.pass;
    j["advantage_m" + std::to_string(m)] = ja;
  }
  j["advantage_m"] = 6;
  emit(c, "thresholds", c.format == "csv" ? "csv" : "json", json_or_csv(c, j), os);
  return 0;
}

int cmd_saw_enum(const CommonOpts& c, const std::string& lattice, int max_n, std::ostream& os) {
  WalkLattice kind = lattice == "square"       ? WalkLattice::square
                     : lattice == "triangular" ? WalkLattice::triangular
                                               : WalkLattice::hexagonal;
  std::ostringstream csv;
  csv << "# " << kVersion << " saw-enum lattice=" << lattice << " max_n=" << max_n << "\n";
  csv << "# units: dimensionless counts\n";
  csv << "n,walks,polygons\n";
  for (int n = 1; n <= max_n; ++n)
    csv << n << "," << count_rooted_walks(kind, n) << "," << count_rooted_polygons(kind, n)
        << "\n";
  emit(c, "saw-enum", "csv", csv.str(), os);
  return 0;
}

struct ZsawReport {
  SawPartition sp;
  std::size_t n_walls = 0;
};

ZsawReport zsaw_compute(int Lx, int Ly, double beta, int lmax) {
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
  ZsawReport r;
  r.sp = partition_function(walks, wm, lmax, &tail);
  r.n_walls = walks.size();
  return r;
}

int cmd_zsaw(const CommonOpts& c, int Lx, int Ly, double beta, int lmax, std::ostream& os) {
  ZsawReport r = zsaw_compute(Lx, Ly, beta, lmax);
  json j;
  j["config"] = config_header(c, {{"Lx", Lx}, {"Ly", Ly}, {"beta", beta}, {"lmax", lmax}});
  j["units"] = "beta in nats per dual edge";
  j["n_walls"] = r.n_walls;
  j["exact_sum"] = r.sp.exact_sum;
  j["tail_bound"] = r.sp.tail_bound;
  j["tail_certified"] = r.sp.tail_certified;
  if (r.sp.tail_certified) j["total_upper"] = r.sp.total_upper();
  else j["total_upper"] = "uncertified";
  emit(c, "zsaw", c.format == "csv" ? "csv" : "json", json_or_csv(c, j), os);
  return 0;
}

int cmd_bound(const CommonOpts& c, double Z, double delta, std::ostream& os) {
  BoundReport r = theorem3_bound(Z);
  json j;
  j["config"] = config_header(c, {{"Z_upper", Z}, {"delta", delta}});
  j["units"] = "entropies and bounds in nats";
  j["F"] = r.F;
  j["valid"] = r.valid;
  j["d_prime"] = r.d_prime;
  j["mie_lower_nats"] = r.mie_lower_nats;
  j["eps_upper"] = r.eps_upper;
  if (r.valid) {
    j["lemma1_floor_nats"] = lemma1_bound(std::min(2.0, r.eps_upper), r.d_prime);
    j["markov_tail_prob"] = markov_concentration(r.eps_upper, r.d_prime, delta);
  }
  emit(c, "bound", c.format == "csv" ? "csv" : "json", json_or_csv(c, j), os);
  return 0;
}

HolographicSpec make_spec(int Lx, int Ly, int chi, std::uint64_t seed) {
  HolographicSpec spec;
  spec.lat = build_lattice(LatticeKind::square, Lx, Ly);
  spec.chi = chi;
  spec.seed = seed;
  return spec;
}

int cmd_mie_sim(const CommonOpts& c, int Lx, int Ly, int chi, int n_circuits,
                const std::string& order, std::ostream& os) {
  HolographicSpec spec = make_spec(Lx, Ly, chi, c.seed);
  RegionPartition part = strip_partition(spec.lat);
  EntropyOrder eo = order == "renyi2" ? EntropyOrder::renyi2 : EntropyOrder::vn;
  std::vector<double> vals(n_circuits);
  parallel_for(n_circuits, c.threads, [&](std::size_t k) {
    auto rng = task_rng(spec.seed, k);
    PureState st = prepare_holographic(spec, rng);
    vals[k] = mie_exhaustive(st, part, eo);
  });
  MeanStderr ms = mean_stderr(vals);
  std::ostringstream csv;
  csv << "# " << kVersion << " mie-sim Lx=" << Lx << " Ly=" << Ly << " chi=" << chi
      << " n_circuits=" << n_circuits << " order=" << order << " seed=" << c.seed << "\n";
  csv << "# units: mie in nats\n";
  csv << "circuit,mie\n";
  for (int k = 0; k < n_circuits; ++k) csv << k << "," << fmt(vals[k]) << "\n";
  csv << "# mean=" << fmt(ms.mean) << " stderr=" << fmt(ms.stderr_) << "\n";
  emit(c, "mie-sim", "csv", csv.str(), os);
  return 0;
}

int cmd_distill(const CommonOpts& c, int Lx, int Ly, int chi, long long d_prime,
                int n_unitaries, std::ostream& os) {
  HolographicSpec spec = make_spec(Lx, Ly, chi, c.seed);
  RegionPartition part = strip_partition(spec.lat);
  auto rng = task_rng(spec.seed, 0);
  PureState st = prepare_holographic(spec, rng);
  auto samples = measure_exhaustive(st, part.B);
  long long dA = 1;
  for (int a : part.A) dA *= st.site_dims[a];
  double eps_mean = 0.0, guar_mean = 0.0, ptot = 0.0;
  std::size_t idx = 0;
  for (const auto& s : samples) {
    if (s.p < 1e-12) {
      ++idx;
      continue;
    }
    auto drng = task_rng(spec.seed, 1000 + idx);
    ++idx;
    DistillResult d = distill(s.post, dA, d_prime, n_unitaries, drng);
    std::vector<int> apos(part.A.size());
    for (std::size_t i = 0; i < part.A.size(); ++i) apos[i] = static_cast<int>(i);
    double s2 = entropy(s.post, apos, EntropyOrder::renyi2);
    eps_mean += s.p * d.eps;
    guar_mean += s.p * distill_guarantee(d_prime, s2);
    ptot += s.p;
  }
  json j;
  j["config"] = config_header(c, {{"Lx", Lx},
                                  {"Ly", Ly},
                                  {"chi", chi},
                                  {"d_prime", d_prime},
                                  {"n_unitaries", n_unitaries}});
  j["units"] = "trace-distance errors, dimensionless";
  j["eps_mean"] = eps_mean / ptot;
  j["guarantee_mean"] = guar_mean / ptot;
  j["outcome_mass"] = ptot;
  emit(c, "distill", c.format == "csv" ? "csv" : "json", json_or_csv(c, j), os);
  return 0;
}

int cmd_quasi(const CommonOpts& c, int Lx, int Ly, int chi, int n_circuits, std::ostream& os) {
  HolographicSpec spec = make_spec(Lx, Ly, chi, c.seed);
  RegionPartition part = strip_partition(spec.lat);
  PredictedMoments bond = predicted_swap_moments(spec, part);
  PredictedMoments state = predicted_swap_moments_state(spec, part);
  SwapMoments mc = swap_trick_moments(spec, part, n_circuits);
  json j;
  j["config"] = config_header(
      c, {{"Lx", Lx}, {"Ly", Ly}, {"chi", chi}, {"n_circuits", n_circuits}});
  j["units"] = "quasientropy in nats";
  j["prefactor"] = bond.prefactor;
  j["Zpp"] = bond.Zpp;
  j["Zmp"] = bond.Zmp;
  j["Zpp_state_rule"] = state.Zpp;
  j["Zmp_state_rule"] = state.Zmp;
  j["q2_predicted"] = bond.q2();
  j["mc_numerator"] = mc.numerator.mean;
  j["mc_numerator_stderr"] = mc.numerator.stderr_;
  j["mc_denominator"] = mc.denominator.mean;
  j["mc_denominator_stderr"] = mc.denominator.stderr_;
  j["q2_mc"] = mc.q2();
  emit(c, "quasi", c.format == "csv" ? "csv" : "json", json_or_csv(c, j), os);
  return 0;
}

int cmd_stab_advantage(const CommonOpts& c, int m, int Lx, int Ly, int n_samples, double c2,
                       bool product_bonds, std::ostream& os) {
  SiteLattice lat = build_lattice(LatticeKind::square, Lx, Ly);
  TripartiteResult r = tripartite_mie_experiment(m, lat, n_samples, c2, c.seed, product_bonds);
  std::ostringstream csv;
  csv << "# " << kVersion << " stab-advantage m=" << m << " Lx=" << Lx << " Ly=" << Ly
      << " n_samples=" << n_samples << " c2=" << fmt(c2) << " seed=" << c.seed
      << " product_bonds=" << (product_bonds ? 1 : 0) << "\n";
  csv << "# units: entropies in multiples of ln 2\n";
  csv << "sample,S_H,S_I,S_J,g,e_HI,e_HJ,e_IJ,pass\n";
  for (const auto& rec : r.records)
    csv << rec.sample << "," << rec.S_h << "," << rec.S_i << "," << rec.S_j << ","
        << rec.shape.g << "," << rec.shape.e_hi << "," << rec.shape.e_hj << ","
        << rec.shape.e_ij << "," << (rec.all_mixed ? 1 : 0) << "\n";
  csv << "# p_hat=" << fmt(r.p_hat) << " ci=[" << fmt(r.ci_low) << "," << fmt(r.ci_high)
      << "] site_premise_p=" << fmt(r.site_premise_p) << "\n";
  emit(c, "stab-advantage", "csv", csv.str(), os);
  return 0;
}

int cmd_sebd(const CommonOpts& c, int Lx, int Ly, int chi, int chi_max, double cutoff,
             double abort_tol, int n_samples, std::ostream& os) {
  HolographicSpec spec = make_spec(Lx, Ly, chi, c.seed);
  TruncationPolicy pol;
  pol.chi_max = chi_max;
  pol.cutoff = cutoff;
  pol.abort_tol = abort_tol;
  std::ostringstream csv;
  csv << "# " << kVersion << " sebd Lx=" << Lx << " Ly=" << Ly << " chi=" << chi
      << " chi_max=" << chi_max << " cutoff=" << fmt(cutoff) << " abort_tol=" << fmt(abort_tol)
      << " n_samples=" << n_samples << " seed=" << c.seed << "\n";
  csv << "# units: half_chain_entropy in nats\n";
  csv << "sample,t,chi_used,discarded,half_chain_entropy,aborted\n";
  std::vector<SebdResult> results(n_samples);
  parallel_for(n_samples, c.threads, [&](std::size_t k) {
    auto rng = task_rng(c.seed, 5000 + k);
    results[k] = sebd_sample(spec, pol, rng);
  });
  for (int k = 0; k < n_samples; ++k)
    for (const auto& col : results[k].columns)
      csv << k << "," << col.t << "," << col.chi_used << "," << fmt(col.discarded) << ","
          << fmt(col.half_chain_entropy) << ","
          << ((results[k].aborted && col.t == results[k].abort_column) ? 1 : 0) << "\n";
  emit(c, "sebd", "csv", csv.str(), os);
  return 0;
}

int cmd_selfcheck(const CommonOpts& c, int only, std::ostream& os) {
  std::ostringstream txt;
  bool all = true;
  for (int id = 1; id <= 9; ++id) {
    if (only != 0 && id != only) continue;
    CriterionResult r = run_criterion(id);
    txt << "criterion " << id << ": " << (r.pass ? "PASS" : "FAIL") << " — " << r.detail << "\n";
    all = all && r.pass;
  }
  emit(c, "selfcheck", "txt", txt.str(), os);
  return all ? 0 : 1;
}

}  // namespace

int run_cli(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  CLI::App app{"measurement-induced entanglement laboratory"};
  app.require_subcommand(1);

  CommonOpts copts[10];
  int ci = 0;

  // thresholds
  auto* th = app.add_subcommand("thresholds", "closed-form constants and premise checks");
  add_common(th, copts[0]);

  // saw-enum
  auto* se = app.add_subcommand("saw-enum", "rooted self-avoiding walk and polygon counts");
  std::string se_lattice = "square";
  int se_maxn = 10;
  se->add_option("--lattice", se_lattice, "walk lattice")
      ->check(CLI::IsMember({"square", "triangular", "hexagonal"}));
  se->add_option("--max-n", se_maxn, "largest walk length")->check(CLI::Range(1, 16));
  add_common(se, copts[1]);

  // zsaw
  auto* zs = app.add_subcommand("zsaw", "certified separating-wall partition sum on a strip");
  int zs_Lx = 4, zs_Ly = 3, zs_lmax = 10;
  double zs_beta = 2.0;
  zs->add_option("--Lx", zs_Lx)->check(CLI::Range(2, 12));
  zs->add_option("--Ly", zs_Ly)->check(CLI::Range(2, 12));
  zs->add_option("--beta", zs_beta, "per-edge weight in nats");
  zs->add_option("--lmax", zs_lmax, "enumeration cutoff")->check(CLI::Range(1, 24));
  add_common(zs, copts[2]);

  // bound
  auto* bd = app.add_subcommand("bound", "distillation bound chain from a certified Z");
  double bd_Z = 0.01, bd_delta = 1.7;
  bd->add_option("--Z", bd_Z, "certified upper bound on the wall partition sum");
  bd->add_option("--delta", bd_delta, "concentration offset in nats (> ln 2)");
  add_common(bd, copts[3]);

  // mie-sim
  auto* ms = app.add_subcommand("mie-sim", "exact mean post-measurement entanglement");
  int ms_Lx = 1, ms_Ly = 3, ms_chi = 2, ms_n = 8;
  std::string ms_order = "vn";
  ms->add_option("--Lx", ms_Lx)->check(CLI::Range(1, 4));
  ms->add_option("--Ly", ms_Ly)->check(CLI::Range(2, 6));
  ms->add_option("--chi", ms_chi)->check(CLI::Range(2, 4));
  ms->add_option("--n-circuits", ms_n)->check(CLI::PositiveNumber);
  ms->add_option("--order", ms_order)->check(CLI::IsMember({"vn", "renyi2"}));
  add_common(ms, copts[4]);

  // distill
  auto* di = app.add_subcommand("distill", "random-measurement distillation errors");
  int di_Lx = 1, di_Ly = 3, di_chi = 2, di_nu = 8;
  long long di_dprime = 2;
  di->add_option("--Lx", di_Lx)->check(CLI::Range(1, 4));
  di->add_option("--Ly", di_Ly)->check(CLI::Range(2, 6));
  di->add_option("--chi", di_chi)->check(CLI::Range(2, 4));
  di->add_option("--d-prime", di_dprime)->check(CLI::PositiveNumber);
  di->add_option("--n-unitaries", di_nu)->check(CLI::PositiveNumber);
  add_common(di, copts[5]);

  // quasi
  auto* qu = app.add_subcommand("quasi", "replica moments vs spin-sum predictions");
  int qu_Lx = 2, qu_Ly = 2, qu_chi = 2, qu_n = 16;
  qu->add_option("--Lx", qu_Lx)->check(CLI::Range(1, 4));
  qu->add_option("--Ly", qu_Ly)->check(CLI::Range(2, 6));
  qu->add_option("--chi", qu_chi)->check(CLI::Range(2, 4));
  qu->add_option("--n-circuits", qu_n)->check(CLI::PositiveNumber);
  add_common(qu, copts[6]);

  // stab-advantage
  auto* sa = app.add_subcommand("stab-advantage", "tripartite mixedness statistics");
  int sa_m = 1, sa_Lx = 2, sa_Ly = 2, sa_n = 100;
  double sa_c2 = 0.75;
  bool sa_prod = false;
  sa->add_option("--m", sa_m, "qubits per bond half")->check(CLI::Range(1, 4));
  sa->add_option("--Lx", sa_Lx)->check(CLI::Range(2, 4));
  sa->add_option("--Ly", sa_Ly)->check(CLI::Range(2, 4));
  sa->add_option("--n-samples", sa_n)->check(CLI::PositiveNumber);
  sa->add_option("--c2", sa_c2, "purity threshold");
  sa->add_flag("--product-bonds", sa_prod, "replace entangled bonds by |00>");
  add_common(sa, copts[7]);

  // sebd
  auto* sb = app.add_subcommand("sebd", "boundary-MPS sidewise measurement sampling");
  int sb_Lx = 4, sb_Ly = 4, sb_chi = 2, sb_chimax = 16, sb_n = 4;
  double sb_cutoff = 0.0, sb_tol = 1e-3;
  sb->add_option("--Lx", sb_Lx)->check(CLI::Range(2, 16));
  sb->add_option("--Ly", sb_Ly)->check(CLI::Range(2, 16));
  sb->add_option("--chi", sb_chi)->check(CLI::Range(2, 4));
  sb->add_option("--chi-max", sb_chimax)->check(CLI::PositiveNumber);
  sb->add_option("--cutoff", sb_cutoff);
  sb->add_option("--abort-tol", sb_tol);
  sb->add_option("--n-samples", sb_n)->check(CLI::PositiveNumber);
  add_common(sb, copts[8]);

  // selfcheck
  auto* sc = app.add_subcommand("selfcheck", "run the numbered verification suite");
  int sc_only = 0;
  sc->add_option("--only", sc_only, "run a single criterion (1-9)")->check(CLI::Range(0, 9));
  add_common(sc, copts[9]);

  std::vector<std::string> args;
  try {
    args = expand_config(raw_args, err);
  } catch (const CLI::Error& e) {
    err << e.what() << "\n";
    return 2;
  }
  // CLI11 parses reversed argv without the program name
  std::vector<std::string> rev(args.begin() + (args.empty() ? 0 : 1), args.end());
  std::reverse(rev.begin(), rev.end());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() != 0) {
      err << e.what() << "\n";
      return e.get_exit_code();
    }
    out << app.help();
    return 0;
  }

  try {
    if (th->parsed()) return cmd_thresholds(copts[0], out);
    if (se->parsed()) return cmd_saw_enum(copts[1], se_lattice, se_maxn, out);
    if (zs->parsed()) return cmd_zsaw(copts[2], zs_Lx, zs_Ly, zs_beta, zs_lmax, out);
    if (bd->parsed()) return cmd_bound(copts[3], bd_Z, bd_delta, out);
    if (ms->parsed()) return cmd_mie_sim(copts[4], ms_Lx, ms_Ly, ms_chi, ms_n, ms_order, out);
    if (di->parsed()) return cmd_distill(copts[5], di_Lx, di_Ly, di_chi, di_dprime, di_nu, out);
    if (qu->parsed()) return cmd_quasi(copts[6], qu_Lx, qu_Ly, qu_chi, qu_n, out);
    if (sa->parsed())
      return cmd_stab_advantage(copts[7], sa_m, sa_Lx, sa_Ly, sa_n, sa_c2, sa_prod, out);
    if (sb->parsed())
      return cmd_sebd(copts[8], sb_Lx, sb_Ly, sb_chi, sb_chimax, sb_cutoff, sb_tol, sb_n, out);
    if (sc->parsed()) return cmd_selfcheck(copts[9], sc_only, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  err << "error: no subcommand\n";
  return 2;
}

int run_cli(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return run_cli(args, std::cout, std::cerr);
}

}  // namespace mielab
