#include "mielab/statevec.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace mielab {

namespace {

std::vector<long long> strides_of(const std::vector<long long>& dims) {
  std::vector<long long> s(dims.size(), 1);
  for (int i = static_cast<int>(dims.size()) - 2; i >= 0; --i) s[i] = s[i + 1] * dims[i + 1];
  return s;
}

}  // namespace

PureState product_zero_state(const std::vector<long long>& dims) {
  PureState st;
  st.site_dims = dims;
  st.amp = Eigen::VectorXcd::Zero(st.dim());
  st.amp(0) = 1.0;
  return st;
}

Eigen::MatrixXcd haar_unitary(long long d, std::mt19937_64& rng) {
  if (d < 1) throw std::invalid_argument("haar_unitary: d must be >= 1");
  std::normal_distribution<double> g(0.0, 1.0);
  Eigen::MatrixXcd A(d, d);
  for (long long i = 0; i < d; ++i)
    for (long long j = 0; j < d; ++j) A(i, j) = cd(g(rng), g(rng));
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(A);
  Eigen::MatrixXcd Q = qr.householderQ();
  Eigen::MatrixXcd R = qr.matrixQR().triangularView<Eigen::Upper>();
  for (long long j = 0; j < d; ++j) {
    cd r = R(j, j);
    cd ph = std::abs(r) > 0 ? r / std::abs(r) : cd(1.0, 0.0);
    Q.col(j) *= ph;
  }
  return Q;
}

Eigen::MatrixXcd haar_isometry(long long d, long long k, std::mt19937_64& rng) {
  if (k < 1 || k > d) throw std::invalid_argument("haar_isometry: need 1 <= k <= d");
  std::normal_distribution<double> g(0.0, 1.0);
  Eigen::MatrixXcd A(d, k);
  for (long long i = 0; i < d; ++i)
    for (long long j = 0; j < k; ++j) A(i, j) = cd(g(rng), g(rng));
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(A);
  Eigen::MatrixXcd Q = Eigen::MatrixXcd(qr.householderQ()).leftCols(k);
  Eigen::MatrixXcd R = qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();
  for (long long j = 0; j < k; ++j) {
    cd r = R(j, j);
    cd ph = std::abs(r) > 0 ? r / std::abs(r) : cd(1.0, 0.0);
    Q.col(j) *= ph;
  }
  return Q;
}

void apply_gate(PureState& st, const std::vector<int>& sites, const Eigen::MatrixXcd& U) {
  const auto& dims = st.site_dims;
  const auto strides = strides_of(dims);
  long long D = 1;
  for (int s : sites) D *= dims[s];
  if (U.rows() != D || U.cols() != D)
    throw std::invalid_argument("apply_gate: unitary dimension mismatch");

  // offsets of the D target-digit combinations
  std::vector<long long> offs(D, 0);
  {
    long long rep = 1;
    for (int k = static_cast<int>(sites.size()) - 1; k >= 0; --k) {
      int s = sites[k];
      long long d = dims[s];
      for (long long idx = 0; idx < D; ++idx) {
        long long digit = (idx / rep) % d;
        offs[idx] += digit * strides[s];
      }
      rep *= d;
    }
  }
  // enumerate environment base offsets with an odometer over the other sites
  std::vector<int> env;
  for (int i = 0; i < static_cast<int>(dims.size()); ++i)
    if (std::find(sites.begin(), sites.end(), i) == sites.end()) env.push_back(i);
  std::vector<long long> digit(env.size(), 0);
  Eigen::VectorXcd x(D);
  for (;;) {
    long long base = 0;
    for (std::size_t k = 0; k < env.size(); ++k) base += digit[k] * strides[env[k]];
    for (long long idx = 0; idx < D; ++idx) x(idx) = st.amp(base + offs[idx]);
    Eigen::VectorXcd y = U * x;
    for (long long idx = 0; idx < D; ++idx) st.amp(base + offs[idx]) = y(idx);
    int k = static_cast<int>(env.size()) - 1;
    while (k >= 0 && ++digit[k] == dims[env[k]]) digit[k--] = 0;
    if (k < 0) break;
  }
}

namespace {

// Split the state into a (region x environment) matrix.
Eigen::MatrixXcd region_matrix(const PureState& st, const std::vector<int>& region) {
  const auto& dims = st.site_dims;
  const auto strides = strides_of(dims);
  std::vector<char> in_r(dims.size(), 0);
  for (int s : region) in_r[s] = 1;
  long long dR = 1, dE = 1;
  for (std::size_t i = 0; i < dims.size(); ++i) (in_r[i] ? dR : dE) *= dims[i];
  Eigen::MatrixXcd M(dR, dE);
  const long long N = st.dim();
  // per-site strides within the region / environment spaces
  std::vector<long long> rstride(dims.size(), 0), estride(dims.size(), 0);
  {
    long long rs = 1, es = 1;
    for (int i = static_cast<int>(dims.size()) - 1; i >= 0; --i) {
      if (in_r[i]) {
        rstride[i] = rs;
        rs *= dims[i];
      } else {
        estride[i] = es;
        es *= dims[i];
      }
    }
  }
  for (long long g = 0; g < N; ++g) {
    long long r = 0, e = 0;
    for (std::size_t i = 0; i < dims.size(); ++i) {
      long long digit = (g / strides[i]) % dims[i];
      r += digit * rstride[i];
      e += digit * estride[i];
    }
    M(r, e) = st.amp(g);
  }
  return M;
}

}  // namespace

Eigen::MatrixXcd reduced_density(const PureState& st, const std::vector<int>& region) {
  std::vector<int> r = region;
  std::sort(r.begin(), r.end());
  Eigen::MatrixXcd M = region_matrix(st, r);
  return M * M.adjoint();
}

double entropy_of_density(const Eigen::MatrixXcd& rho, EntropyOrder order) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho, Eigen::EigenvaluesOnly);
  double s = 0.0, p2 = 0.0;
  for (long long i = 0; i < es.eigenvalues().size(); ++i) {
    double l = es.eigenvalues()(i);
    if (l < 1e-12) continue;
    s -= l * std::log(l);
    p2 += l * l;
  }
  return order == EntropyOrder::vn ? s : -std::log(p2);
}

double entropy(const PureState& st, const std::vector<int>& region, EntropyOrder order) {
  if (region.empty() || region.size() >= st.site_dims.size())
    throw std::invalid_argument("entropy: region must be a nonempty proper subset");
  std::vector<int> r = region;
  std::sort(r.begin(), r.end());
  long long dR = 1;
  for (int s : r) dR *= st.site_dims[s];
  if (dR * dR <= st.dim()) return entropy_of_density(reduced_density(st, r), order);
  std::vector<int> comp;
  for (int i = 0; i < static_cast<int>(st.site_dims.size()); ++i)
    if (!std::binary_search(r.begin(), r.end(), i)) comp.push_back(i);
  return entropy_of_density(reduced_density(st, comp), order);
}

// ---- holographic circuits -------------------------------------------------

std::vector<std::vector<int>> site_slots(const SiteLattice& lat) {
  std::vector<std::vector<int>> slots(lat.sites());
  for (std::size_t e = 0; e < lat.edges.size(); ++e) {
    slots[lat.edges[e].first].push_back(static_cast<int>(e));
    slots[lat.edges[e].second].push_back(static_cast<int>(e));
  }
  return slots;
}

long long site_dim(const SiteLattice& lat, int site, int chi) {
  long long d = 1;
  for (std::size_t e = 0; e < lat.edges.size(); ++e)
    if (lat.edges[e].first == site || lat.edges[e].second == site) d *= chi;
  return d;
}

Eigen::VectorXcd maximally_entangled_bond(int chi) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<long long>(chi) * chi);
  for (int a = 0; a < chi; ++a) v(static_cast<long long>(a) * chi + a) = 1.0 / std::sqrt(chi);
  return v;
}

Eigen::VectorXcd random_bond_state(int chi, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Eigen::VectorXcd v(static_cast<long long>(chi) * chi);
  for (long long i = 0; i < v.size(); ++i) v(i) = cd(g(rng), g(rng));
  v /= v.norm();
  return v;
}

PureState prepare_bond_product(const HolographicSpec& spec) {
  const auto& lat = spec.lat;
  const int chi = spec.chi;
  const auto slots = site_slots(lat);
  PureState st;
  for (int i = 0; i < lat.sites(); ++i)
    st.site_dims.push_back(site_dim(lat, i, chi));
  const long long N = st.dim();
  if (N > spec.amp_cap) throw std::invalid_argument("prepare: amplitude cap exceeded");

  std::vector<Eigen::VectorXcd> bonds = spec.bond_states;
  if (bonds.empty()) bonds.assign(lat.edges.size(), maximally_entangled_bond(chi));
  if (bonds.size() != lat.edges.size())
    throw std::invalid_argument("prepare: bond state count mismatch");

  // chi-ary digit stride of each (site, slot)
  const auto sstrides = strides_of(st.site_dims);
  std::map<std::pair<int, int>, long long> digit_stride;  // (site, edge) -> stride
  for (int i = 0; i < lat.sites(); ++i) {
    long long s = 1;
    for (int k = static_cast<int>(slots[i].size()) - 1; k >= 0; --k) {
      digit_stride[{i, slots[i][k]}] = sstrides[i] * s;
      s *= chi;
    }
  }
  st.amp = Eigen::VectorXcd::Zero(N);
  std::vector<std::pair<long long, long long>> edge_strides;  // (stride_a, stride_b)
  for (std::size_t e = 0; e < lat.edges.size(); ++e) {
    auto [u, v] = lat.edges[e];
    int a = std::min(u, v), b = std::max(u, v);
    edge_strides.emplace_back(digit_stride[{a, static_cast<int>(e)}],
                              digit_stride[{b, static_cast<int>(e)}]);
  }
  for (long long g = 0; g < N; ++g) {
    cd f(1.0, 0.0);
    for (std::size_t e = 0; e < lat.edges.size(); ++e) {
      long long da = (g / edge_strides[e].first) % chi;
      long long db = (g / edge_strides[e].second) % chi;
      f *= bonds[e](da * chi + db);
      if (f == cd(0.0, 0.0)) break;
    }
    st.amp(g) = f;
  }
  return st;
}

PureState prepare_holographic(const HolographicSpec& spec, std::mt19937_64& rng) {
  PureState st = prepare_bond_product(spec);
  for (int i = 0; i < spec.lat.sites(); ++i) {
    if (st.site_dims[i] == 1) continue;
    Eigen::MatrixXcd U = haar_unitary(st.site_dims[i], rng);
    apply_gate(st, {i}, U);
  }
  return st;
}

// ---- measurement ----------------------------------------------------------

std::vector<EnsembleSample> measure_exhaustive(const PureState& st, const std::vector<int>& B) {
  std::vector<int> b = B;
  std::sort(b.begin(), b.end());
  long long nOut = 1;
  for (int s : b) nOut *= st.site_dims[s];
  if (nOut > (1LL << 20)) throw std::invalid_argument("measure_exhaustive: too many outcomes");

  std::vector<int> keep;
  for (int i = 0; i < static_cast<int>(st.site_dims.size()); ++i)
    if (!std::binary_search(b.begin(), b.end(), i)) keep.push_back(i);
  std::vector<long long> keep_dims;
  long long dK = 1;
  for (int s : keep) {
    keep_dims.push_back(st.site_dims[s]);
    dK *= st.site_dims[s];
  }
  const auto strides = strides_of(st.site_dims);
  std::vector<long long> bstride(st.site_dims.size(), 0), kstride(st.site_dims.size(), 0);
  {
    long long bs = 1, ks = 1;
    for (int i = static_cast<int>(st.site_dims.size()) - 1; i >= 0; --i) {
      if (std::binary_search(b.begin(), b.end(), i)) {
        bstride[i] = bs;
        bs *= st.site_dims[i];
      } else {
        kstride[i] = ks;
        ks *= st.site_dims[i];
      }
    }
  }
  std::vector<EnsembleSample> out(nOut);
  for (long long o = 0; o < nOut; ++o) {
    out[o].post.site_dims = keep_dims;
    out[o].post.amp = Eigen::VectorXcd::Zero(dK);
  }
  const long long N = st.dim();
  for (long long g = 0; g < N; ++g) {
    long long bi = 0, ki = 0;
    for (std::size_t i = 0; i < st.site_dims.size(); ++i) {
      long long digit = (g / strides[i]) % st.site_dims[i];
      bi += digit * bstride[i];
      ki += digit * kstride[i];
    }
    out[bi].post.amp(ki) = st.amp(g);
  }
  for (long long o = 0; o < nOut; ++o) {
    double p = out[o].post.amp.squaredNorm();
    out[o].p = p;
    long long rem = o;
    for (int k = static_cast<int>(b.size()) - 1; k >= 0; --k) {
      // decode digits in the same mixed radix used for bi
    }
    // decode outcome digits (most significant site first)
    out[o].outcome.resize(b.size());
    long long q = o;
    for (int k = static_cast<int>(b.size()) - 1; k >= 0; --k) {
      out[o].outcome[k] = q % st.site_dims[b[k]];
      q /= st.site_dims[b[k]];
    }
    if (p > 1e-300) out[o].post.amp /= std::sqrt(p);
  }
  return out;
}

EnsembleSample measure_sampled(const PureState& st, const std::vector<int>& B,
                               std::mt19937_64& rng) {
  PureState cur = st;
  const auto strides = strides_of(st.site_dims);
  EnsembleSample res;
  res.p = 1.0;
  std::vector<int> b = B;
  std::sort(b.begin(), b.end());
  for (int site : b) {
    long long d = st.site_dims[site];
    std::vector<double> probs(d, 0.0);
    const long long N = cur.dim();
    for (long long g = 0; g < N; ++g)
      probs[(g / strides[site]) % d] += std::norm(cur.amp(g));
    std::discrete_distribution<long long> dist(probs.begin(), probs.end());
    long long o = dist(rng);
    res.outcome.push_back(o);
    res.p *= probs[o];
    for (long long g = 0; g < N; ++g)
      if ((g / strides[site]) % d != o) cur.amp(g) = 0.0;
    cur.amp /= std::sqrt(probs[o]);
  }
  // gather kept sites
  std::vector<int> keep;
  for (int i = 0; i < static_cast<int>(st.site_dims.size()); ++i)
    if (!std::binary_search(b.begin(), b.end(), i)) keep.push_back(i);
  Eigen::MatrixXcd M = region_matrix(cur, keep);
  res.post.site_dims.clear();
  for (int s : keep) res.post.site_dims.push_back(st.site_dims[s]);
  res.post.amp = Eigen::VectorXcd::Zero(M.rows());
  // the environment (measured digits) is now a single nonzero column
  for (long long e = 0; e < M.cols(); ++e)
    if (M.col(e).squaredNorm() > 0.5) {
      res.post.amp = M.col(e);
      break;
    }
  return res;
}

// ---- distillation ---------------------------------------------------------

DistillResult distill(const PureState& post, long long dA, long long d_prime,
                      std::size_t n_unitaries, std::mt19937_64& rng) {
  const long long N = post.dim();
  if (N % dA != 0) throw std::invalid_argument("distill: dA does not divide the dimension");
  const long long dC = N / dA;
  if (d_prime < 1 || d_prime > dA) throw std::invalid_argument("distill: d' out of range");
  Eigen::Map<const Eigen::Matrix<cd, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> Phi(
      post.amp.data(), dA, dC);
  std::vector<double> vals;
  vals.reserve(n_unitaries);
  Eigen::MatrixXcd Id = Eigen::MatrixXcd::Identity(d_prime, d_prime);
  for (std::size_t k = 0; k < n_unitaries; ++k) {
    // first d' rows of a Haar unitary = adjoint of a Haar isometry
    Eigen::MatrixXcd M = haar_isometry(dA, d_prime, rng).adjoint() * Phi;  // L0^dag V Phi
    double w = M.squaredNorm();
    double dist;
    if (w < 1e-300) {
      dist = 0.0;  // zero-probability branch contributes nothing
      vals.push_back(0.0);
      continue;
    }
    Eigen::MatrixXcd rho = (M * M.adjoint()) / w;
    dist = trace_norm(rho - Id / static_cast<double>(d_prime));
    vals.push_back(static_cast<double>(dA) / d_prime * w * dist);
  }
  MeanStderr ms = mean_stderr(vals);
  return DistillResult{ms.mean, ms.stderr_, n_unitaries};
}

double distill_guarantee(long long d_prime, double renyi2_A) {
  return std::exp(0.5 * (std::log(static_cast<double>(d_prime)) - renyi2_A));
}

// ---- replica moments ------------------------------------------------------

namespace {

std::vector<int> positions_in(const std::vector<int>& keep, const std::vector<int>& sub) {
  std::vector<int> pos;
  for (std::size_t i = 0; i < keep.size(); ++i)
    if (std::find(sub.begin(), sub.end(), keep[i]) != sub.end())
      pos.push_back(static_cast<int>(i));
  return pos;
}

std::vector<int> sorted_keep(const RegionPartition& part) {
  std::vector<int> keep;
  keep.insert(keep.end(), part.A.begin(), part.A.end());
  keep.insert(keep.end(), part.C.begin(), part.C.end());
  std::sort(keep.begin(), keep.end());
  return keep;
}

}  // namespace

SwapMoments swap_trick_moments(const HolographicSpec& spec, const RegionPartition& part,
                               std::size_t n_circuits) {
  std::vector<double> nums, dens;
  const std::vector<int> keep = sorted_keep(part);
  for (std::size_t k = 0; k < n_circuits; ++k) {
    auto rng = task_rng(spec.seed, k);
    PureState st = prepare_holographic(spec, rng);
    auto samples = measure_exhaustive(st, part.B);
    double num = 0.0, den = 0.0;
    for (const auto& s : samples) {
      if (s.p < 1e-300) continue;
      auto apos = positions_in(keep, part.A);
      double purity = std::exp(-entropy(s.post, apos, EntropyOrder::renyi2));
      num += s.p * s.p * purity;
      den += s.p * s.p;
    }
    nums.push_back(num);
    dens.push_back(den);
  }
  SwapMoments sm;
  sm.numerator = mean_stderr(nums);
  sm.denominator = mean_stderr(dens);
  return sm;
}

double mie_exhaustive(const PureState& st, const RegionPartition& part, EntropyOrder order) {
  const std::vector<int> keep = sorted_keep(part);
  const auto apos = positions_in(keep, part.A);
  double mie = 0.0;
  if (part.B.empty()) return entropy(st, part.A, order);
  for (const auto& s : measure_exhaustive(st, part.B)) {
    if (s.p < 1e-300) continue;
    mie += s.p * entropy(s.post, apos, order);
  }
  return mie;
}

MieEstimate mie_monte_carlo(const HolographicSpec& spec, const RegionPartition& part,
                            std::size_t n_circuits, EntropyOrder order) {
  MieEstimate est;
  for (std::size_t k = 0; k < n_circuits; ++k) {
    auto rng = task_rng(spec.seed, k);
    PureState st = prepare_holographic(spec, rng);
    est.per_circuit.push_back(mie_exhaustive(st, part, order));
  }
  est.value = mean_stderr(est.per_circuit);
  return est;
}

// ---- shallow plaquette circuits -------------------------------------------

std::vector<PlaquetteGate> plaquette_gates(const PlaquetteSpec& spec) {
  std::vector<PlaquetteGate> gates;
  for (int t = 0; t < spec.depth; ++t) {
    int par = t % 2;
    for (int y = par; y + 1 < spec.Ly; y += 2)
      for (int x = par; x + 1 < spec.Lx; x += 2) {
        PlaquetteGate g;
        g.layer = t;
        g.x = x;
        g.y = y;
        auto q = [&](int xx, int yy) { return yy * spec.Lx + xx; };
        g.sites = {q(x, y), q(x + 1, y), q(x, y + 1), q(x + 1, y + 1)};
        gates.push_back(g);
      }
  }
  return gates;
}

Eigen::MatrixXcd plaquette_gate_unitary(const PlaquetteSpec& spec, const PlaquetteGate& g) {
  std::uint64_t idx = (static_cast<std::uint64_t>(g.layer) * spec.Ly + g.y) * spec.Lx + g.x;
  auto rng = task_rng(spec.seed, idx);
  return haar_unitary(16, rng);
}

std::pair<std::vector<PlaquetteGate>, std::vector<int>> plaquette_lightcone(
    const PlaquetteSpec& spec, const std::vector<int>& probes) {
  auto gates = plaquette_gates(spec);
  std::set<int> S(probes.begin(), probes.end());
  std::vector<PlaquetteGate> anc;
  for (int t = spec.depth - 1; t >= 0; --t) {
    std::set<int> grow = S;
    for (const auto& g : gates) {
      if (g.layer != t) continue;
      bool hit = false;
      for (int s : g.sites)
        if (S.count(s)) hit = true;
      if (hit) {
        anc.push_back(g);
        for (int s : g.sites) grow.insert(s);
      }
    }
    S = grow;
  }
  std::sort(anc.begin(), anc.end(), [](const PlaquetteGate& a, const PlaquetteGate& b) {
    return std::tie(a.layer, a.y, a.x) < std::tie(b.layer, b.y, b.x);
  });
  return {anc, std::vector<int>(S.begin(), S.end())};
}

Eigen::MatrixXcd plaquette_reduced_state(const PlaquetteSpec& spec,
                                         const std::vector<int>& probes) {
  auto [gates, region] = plaquette_lightcone(spec, probes);
  if ((1LL << region.size()) > spec.amp_cap)
    throw std::invalid_argument("plaquette_reduced_state: lightcone exceeds amplitude cap");
  std::map<int, int> local;
  for (std::size_t i = 0; i < region.size(); ++i) local[region[i]] = static_cast<int>(i);
  PureState st = product_zero_state(std::vector<long long>(region.size(), 2));
  for (const auto& g : gates) {
    std::vector<int> s;
    for (int q : g.sites) s.push_back(local.at(q));
    apply_gate(st, s, plaquette_gate_unitary(spec, g));
  }
  std::vector<int> ppos;
  for (int q : probes) ppos.push_back(local.at(q));
  std::sort(ppos.begin(), ppos.end());
  return reduced_density(st, ppos);
}

double trace_norm(const Eigen::MatrixXcd& X) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es((X + X.adjoint()) / 2.0,
                                                     Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().sum();
}

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& A, const Eigen::MatrixXcd& B) {
  Eigen::MatrixXcd K(A.rows() * B.rows(), A.cols() * B.cols());
  for (long long i = 0; i < A.rows(); ++i)
    for (long long j = 0; j < A.cols(); ++j)
      K.block(i * B.rows(), j * B.cols(), B.rows(), B.cols()) = A(i, j) * B;
  return K;
}

namespace {

// rho_A (x) rho_B laid out on the merged, sorted qubit list.
Eigen::MatrixXcd product_on_sorted(const Eigen::MatrixXcd& rhoA, const std::vector<int>& qa,
                                   const Eigen::MatrixXcd& rhoB, const std::vector<int>& qb) {
  std::vector<std::pair<int, int>> all;  // (qubit, side 0/1)
  for (int q : qa) all.emplace_back(q, 0);
  for (int q : qb) all.emplace_back(q, 1);
  std::sort(all.begin(), all.end());
  const int n = static_cast<int>(all.size());
  const long long D = 1LL << n;
  // for each merged index, the (a-part, b-part) sub-indices
  auto split = [&](long long m) {
    long long a = 0, bidx = 0;
    int ka = 0, kb = 0;
    // positions of each side's qubits in sorted order, in side-local order
    for (int i = 0; i < n; ++i) {
      int bit = static_cast<int>((m >> (n - 1 - i)) & 1);
      if (all[i].second == 0) {
        a = (a << 1) | bit;
        ++ka;
      } else {
        bidx = (bidx << 1) | bit;
        ++kb;
      }
    }
    (void)ka;
    (void)kb;
    return std::pair<long long, long long>(a, bidx);
  };
  // side-local order must match rhoA/rhoB index order (sorted qubit ids);
  // qa and qb are sorted by the caller
  Eigen::MatrixXcd out(D, D);
  for (long long r = 0; r < D; ++r) {
    auto [ra, rb] = split(r);
    for (long long c = 0; c < D; ++c) {
      auto [ca, cb] = split(c);
      out(r, c) = rhoA(ra, ca) * rhoB(rb, cb);
    }
  }
  return out;
}

int manhattan(const SiteLattice& lat, int a, int b) {
  auto [ax, ay] = lat.coords(a);
  auto [bx, by] = lat.coords(b);
  return std::abs(ax - bx) + std::abs(ay - by);
}

}  // namespace

namespace {

// Greedily grow probe patches on the facing boundaries of cells a and b,
// alternating sides nearest-site-first, keeping the backward lightcone(s)
// within the amplitude cap (joint lightcone when they intersect, each side
// separately when they are disjoint). Returns sorted probe lists.
std::pair<std::vector<int>, std::vector<int>> grow_probes(const PlaquetteSpec& spec,
                                                          const CellLattice& cl, int a, int b,
                                                          int max_per_side, long long cap) {
  // candidate sites of each cell ranked nearest-to-the-partner first
  auto rank = [&](int cell, int other) {
    std::vector<std::pair<int, int>> r;
    for (int s : cl.cells[cell]) {
      int best = 1 << 30;
      for (int t : cl.cells[other]) best = std::min(best, manhattan(cl.base, s, t));
      r.emplace_back(best, s);
    }
    std::sort(r.begin(), r.end());
    std::vector<int> out;
    for (auto& [d, s] : r) out.push_back(s);
    return out;
  };
  std::vector<int> ca = rank(a, b), cb = rank(b, a);
  std::vector<int> pa, pb;
  auto fits = [&](std::vector<int> ta, std::vector<int> tb) {
    auto [ga, qa] = plaquette_lightcone(spec, ta);
    auto [gb, qb] = plaquette_lightcone(spec, tb);
    std::vector<int> inter;
    std::set_intersection(qa.begin(), qa.end(), qb.begin(), qb.end(), std::back_inserter(inter));
    if (inter.empty())
      return (1LL << qa.size()) <= cap && (1LL << qb.size()) <= cap;
    ta.insert(ta.end(), tb.begin(), tb.end());
    auto [gj, qj] = plaquette_lightcone(spec, ta);
    return (1LL << qj.size()) <= cap;
  };
  std::size_t ia = 0, ib = 0;
  bool side_a = true;
  while (ia < ca.size() || ib < cb.size()) {
    auto& idx = side_a ? ia : ib;
    auto& cand = side_a ? ca : cb;
    auto& mine = side_a ? pa : pb;
    auto& theirs = side_a ? pb : pa;
    if (idx < cand.size() && static_cast<int>(mine.size()) < max_per_side) {
      std::vector<int> trial = mine;
      trial.push_back(cand[idx]);
      // the partner side must end up non-empty: reserve room for its first site
      std::vector<int> partner = theirs;
      if (partner.empty() && !(side_a ? cb : ca).empty())
        partner.push_back((side_a ? cb : ca).front());
      if (fits(side_a ? trial : partner, side_a ? partner : trial)) mine = trial;
      ++idx;
    } else {
      idx = cand.size();
    }
    side_a = !side_a;
  }
  std::sort(pa.begin(), pa.end());
  std::sort(pb.begin(), pb.end());
  return {pa, pb};
}

}  // namespace

LocalityCheckResult strict_locality_check(const PlaquetteSpec& spec, const CellLattice& cl,
                                          int probes_per_cell, double stop_above) {
  std::set<std::pair<int, int>> adj(cl.adjacency.begin(), cl.adjacency.end());
  LocalityCheckResult res;
  const int nc = static_cast<int>(cl.cells.size());
  // screened pairs, nearest first: large deviations (if any) show up early
  std::vector<std::tuple<int, int, int>> pairs;  // (min site distance, a, b)
  for (int a = 0; a < nc; ++a)
    for (int b = a + 1; b < nc; ++b) {
      if (adj.count({a, b})) continue;
      int d = 1 << 30;
      for (int s : cl.cells[a])
        for (int t : cl.cells[b]) d = std::min(d, manhattan(cl.base, s, t));
      pairs.emplace_back(d, a, b);
    }
  std::sort(pairs.begin(), pairs.end());
  for (auto& [dist, a, b] : pairs) {
    auto [pa, pb] = grow_probes(spec, cl, a, b, probes_per_cell, spec.amp_cap);
    if (pa.empty() || pb.empty())
      throw std::invalid_argument("strict_locality_check: probe lightcones exceed cap");
    auto [ga, qa] = plaquette_lightcone(spec, pa);
    auto [gb, qb] = plaquette_lightcone(spec, pb);
    std::vector<int> inter;
    std::set_intersection(qa.begin(), qa.end(), qb.begin(), qb.end(), std::back_inserter(inter));
    double dev;
    if (inter.empty()) {
      // disjoint backward lightcones: the joint state is exactly the product
      dev = 0.0;
      ++res.pairs_factorized_by_causality;
    } else {
      std::vector<int> probes = pa;
      probes.insert(probes.end(), pb.begin(), pb.end());
      std::sort(probes.begin(), probes.end());
      Eigen::MatrixXcd joint = plaquette_reduced_state(spec, probes);
      // marginals, with qubit positions inside the sorted probe list
      std::vector<int> posa, posb;
      for (std::size_t i = 0; i < probes.size(); ++i) {
        if (std::find(pa.begin(), pa.end(), probes[i]) != pa.end())
          posa.push_back(static_cast<int>(i));
        else
          posb.push_back(static_cast<int>(i));
      }
      auto ptrace = [&](const Eigen::MatrixXcd& rho, const std::vector<int>& keep) {
        const int n = static_cast<int>(probes.size());
        const long long D = 1LL << n;
        long long dk = 1LL << keep.size();
        Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dk, dk);
        auto proj = [&](long long m) {
          long long k = 0;
          for (int p : keep) k = (k << 1) | ((m >> (n - 1 - p)) & 1);
          return k;
        };
        auto env = [&](long long m) {
          long long e = 0;
          for (int i = 0; i < n; ++i)
            if (std::find(keep.begin(), keep.end(), i) == keep.end())
              e = (e << 1) | ((m >> (n - 1 - i)) & 1);
          return e;
        };
        for (long long r = 0; r < D; ++r)
          for (long long c = 0; c < D; ++c)
            if (env(r) == env(c)) out(proj(r), proj(c)) += rho(r, c);
        return out;
      };
      Eigen::MatrixXcd rma = ptrace(joint, posa);
      Eigen::MatrixXcd rmb = ptrace(joint, posb);
      dev = trace_norm(joint - product_on_sorted(rma, pa, rmb, pb));
    }
    res.max_deviation = std::max(res.max_deviation, dev);
    ++res.pairs_checked;
    if (res.max_deviation > stop_above) break;
  }
  return res;
}

}  // namespace mielab
