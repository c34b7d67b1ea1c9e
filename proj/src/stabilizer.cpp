#include "mielab/stabilizer.hpp"

#include "mielab/statevec.hpp"
#include "mielab/util.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace mielab {

Pauli Pauli::operator*(const Pauli& o) const {
  Pauli p;
  p.n = n;
  p.x = x ^ o.x;
  p.z = z ^ o.z;
  p.r = (r + o.r + 2 * (std::popcount(z & o.x) & 1)) & 3;
  return p;
}

bool Pauli::commutes(const Pauli& o) const { return symplectic(*this, o) == 0; }

int symplectic(const Pauli& a, const Pauli& b) {
  return (std::popcount(a.x & b.z) + std::popcount(a.z & b.x)) & 1;
}

Tableau Tableau::zero_state(int n) {
  if (n < 1 || n > 64) throw std::invalid_argument("zero_state: n must be in [1, 64]");
  Tableau t;
  t.n = n;
  for (int q = 0; q < n; ++q) {
    t.stab.push_back(Pauli::single_z(n, q));
    t.destab.push_back(Pauli::single_x(n, q));
  }
  return t;
}

namespace {

// Conjugate a Pauli by the Clifford given as generator images.
Pauli conjugate(const Pauli& p, const CliffordElement& cl) {
  Pauli out = Pauli::identity(p.n);
  out.r = p.r;
  for (int q = 0; q < p.n; ++q) {
    if ((p.x >> q) & 1) out = out * cl.imx[q];
    if ((p.z >> q) & 1) out = out * cl.imz[q];
  }
  return out;
}

CliffordElement identity_clifford(int n) {
  CliffordElement cl;
  cl.n = n;
  for (int q = 0; q < n; ++q) {
    cl.imx.push_back(Pauli::single_x(n, q));
    cl.imz.push_back(Pauli::single_z(n, q));
  }
  return cl;
}

}  // namespace

void apply_clifford(Tableau& tab, const CliffordElement& cl) {
  if (cl.n != tab.n) throw std::invalid_argument("apply_clifford: qubit count mismatch");
  for (auto& p : tab.stab) p = conjugate(p, cl);
  for (auto& p : tab.destab) p = conjugate(p, cl);
}

void apply_clifford(Tableau& tab, const CliffordElement& cl, const std::vector<int>& sites) {
  if (cl.n != static_cast<int>(sites.size()))
    throw std::invalid_argument("apply_clifford: site count mismatch");
  CliffordElement g = identity_clifford(tab.n);
  auto embed = [&](const Pauli& p) {
    Pauli out = Pauli::identity(tab.n);
    out.r = p.r;
    for (int j = 0; j < p.n; ++j) {
      if ((p.x >> j) & 1) out.x |= 1ULL << sites[j];
      if ((p.z >> j) & 1) out.z |= 1ULL << sites[j];
    }
    return out;
  };
  for (int j = 0; j < cl.n; ++j) {
    g.imx[sites[j]] = embed(cl.imx[j]);
    g.imz[sites[j]] = embed(cl.imz[j]);
  }
  apply_clifford(tab, g);
}

void Tableau::apply_h(int q) {
  CliffordElement cl;
  cl.n = 1;
  cl.imx = {Pauli::single_z(1, 0)};
  cl.imz = {Pauli::single_x(1, 0)};
  apply_clifford(*this, cl, {q});
}

void Tableau::apply_s(int q) {
  CliffordElement cl;
  cl.n = 1;
  cl.imx = {Pauli::single_y(1, 0)};
  cl.imz = {Pauli::single_z(1, 0)};
  apply_clifford(*this, cl, {q});
}

void Tableau::apply_cnot(int c, int t) {
  CliffordElement cl;
  cl.n = 2;
  Pauli xx{0b11ULL, 0, 0, 2};           // X_c X_t
  Pauli zz{0, 0b11ULL, 0, 2};           // Z_c Z_t
  cl.imx = {xx, Pauli::single_x(2, 1)};
  cl.imz = {Pauli::single_z(2, 0), zz};
  apply_clifford(*this, cl, {c, t});
}

int Tableau::measure_z(int q, std::mt19937_64& rng) {
  const std::uint64_t bit = 1ULL << q;
  int p = -1;
  for (int i = 0; i < n; ++i)
    if (stab[i].x & bit) {
      p = i;
      break;
    }
  if (p >= 0) {
    // random outcome: the measured operator anticommutes with stab[p]
    for (int i = 0; i < n; ++i) {
      if (i != p && (stab[i].x & bit)) stab[i] = stab[i] * stab[p];
      if (destab[i].x & bit) destab[i] = destab[i] * stab[p];
    }
    destab[p] = stab[p];
    int outcome = static_cast<int>(rng() & 1);
    Pauli m = Pauli::single_z(n, q);
    m.r = outcome ? 2 : 0;
    stab[p] = m;
    return outcome;
  }
  // deterministic outcome: +-Z_q is in the stabilizer group
  Pauli acc = Pauli::identity(n);
  for (int i = 0; i < n; ++i)
    if (destab[i].x & bit) acc = acc * stab[i];
  if (acc.x != 0 || acc.z != bit || (acc.r & 1))
    throw std::runtime_error("measure_z: inconsistent tableau");
  return acc.r == 2 ? 1 : 0;
}

namespace {

// GF(2) rank of rows given as (x, z) bit-pair vectors.
long long gf2_rank(std::vector<std::pair<std::uint64_t, std::uint64_t>> rows) {
  long long rank = 0;
  for (int bit = 127; bit >= 0; --bit) {
    std::uint64_t mx = bit >= 64 ? (1ULL << (bit - 64)) : 0;
    std::uint64_t mz = bit >= 64 ? 0 : (1ULL << bit);
    std::size_t piv = rank;
    while (piv < rows.size() && !((rows[piv].first & mx) || (rows[piv].second & mz))) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[rank], rows[piv]);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == static_cast<std::size_t>(rank)) continue;
      if ((rows[i].first & mx) || (rows[i].second & mz)) {
        rows[i].first ^= rows[rank].first;
        rows[i].second ^= rows[rank].second;
      }
    }
    ++rank;
    if (rank == static_cast<long long>(rows.size())) break;
  }
  return rank;
}

std::uint64_t mask_of(const std::vector<int>& region) {
  std::uint64_t m = 0;
  for (int q : region) m |= 1ULL << q;
  return m;
}

}  // namespace

long long Tableau::region_entropy_bits(const std::vector<int>& region) const {
  const std::uint64_t m = mask_of(region);
  std::vector<std::pair<std::uint64_t, std::uint64_t>> rows;
  for (const auto& p : stab) rows.emplace_back(p.x & m, p.z & m);
  return gf2_rank(rows) - static_cast<long long>(region.size());
}

bool Tableau::check_invariants() const {
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (symplectic(stab[i], stab[j])) return false;
      if (symplectic(destab[i], destab[j])) return false;
      if (symplectic(stab[i], destab[j]) != (i == j ? 1 : 0)) return false;
    }
  std::vector<std::pair<std::uint64_t, std::uint64_t>> rows;
  for (const auto& p : stab) rows.emplace_back(p.x, p.z);
  return gf2_rank(rows) == n;
}

CliffordElement random_clifford(int n, std::mt19937_64& rng) {
  if (n < 1 || n > 64) throw std::invalid_argument("random_clifford: n must be in [1, 64]");
  CliffordElement cl;
  cl.n = n;
  std::vector<Pauli> vs, ws;  // completed symplectic pairs
  auto reduce = [&](Pauli b) {
    for (std::size_t i = 0; i < vs.size(); ++i) {
      if (symplectic(b, ws[i])) b = Pauli{b.x ^ vs[i].x, b.z ^ vs[i].z, 0, n};
      if (symplectic(b, vs[i])) b = Pauli{b.x ^ ws[i].x, b.z ^ ws[i].z, 0, n};
    }
    return b;
  };
  auto rand_pauli = [&]() {
    std::uint64_t mask = n == 64 ? ~0ULL : ((1ULL << n) - 1);
    return Pauli{rng() & mask, rng() & mask, 0, n};
  };
  for (int k = 0; k < n; ++k) {
    Pauli v;
    do {
      v = reduce(rand_pauli());
    } while (v.x == 0 && v.z == 0);
    Pauli w;
    do {
      w = reduce(rand_pauli());
    } while (symplectic(v, w) == 0);
    vs.push_back(v);
    ws.push_back(w);
  }
  for (int k = 0; k < n; ++k) {
    Pauli v = vs[k], w = ws[k];
    // Hermiticity requires the phase parity to match the number of Y factors;
    // the sign on top is uniform.
    v.r = (std::popcount(v.x & v.z) & 1) + ((rng() & 1) ? 2 : 0);
    w.r = (std::popcount(w.x & w.z) & 1) + ((rng() & 1) ? 2 : 0);
    cl.imx.push_back(v);
    cl.imz.push_back(w);
  }
  return cl;
}

Eigen::VectorXcd tableau_statevector(const Tableau& tab) {
  if (tab.n > 20) throw std::invalid_argument("tableau_statevector: too many qubits");
  const long long D = 1LL << tab.n;
  // find a computational-basis state with nonzero overlap by collapsing a copy
  Tableau collapsed = tab;
  std::mt19937_64 branch_rng(0x5eedULL);
  long long support = 0;
  for (int q = 0; q < tab.n; ++q)
    if (collapsed.measure_z(q, branch_rng)) support |= 1LL << (tab.n - 1 - q);
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(D);
  v(support) = 1.0;
  const std::complex<double> iunit(0.0, 1.0);
  auto apply_pauli = [&](const Pauli& p, const Eigen::VectorXcd& in) {
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(D);
    std::complex<double> ph = std::pow(iunit, p.r);
    // qubit q corresponds to bit (n-1-q): qubit 0 is the slowest index
    std::uint64_t xm = 0, zm = 0;
    for (int q = 0; q < tab.n; ++q) {
      if ((p.x >> q) & 1) xm |= 1ULL << (tab.n - 1 - q);
      if ((p.z >> q) & 1) zm |= 1ULL << (tab.n - 1 - q);
    }
    for (long long b = 0; b < D; ++b) {
      double sgn = (std::popcount(static_cast<std::uint64_t>(b) & zm) & 1) ? -1.0 : 1.0;
      out(b ^ xm) += ph * sgn * in(b);
    }
    return out;
  };
  for (const auto& s : tab.stab) v = 0.5 * (v + apply_pauli(s, v));
  double nrm = v.norm();
  if (nrm < 1e-12) throw std::runtime_error("tableau_statevector: projector product vanished");
  v /= nrm;
  // fix the global phase: first nonzero amplitude real positive
  for (long long b = 0; b < D; ++b)
    if (std::abs(v(b)) > 1e-9) {
      v *= std::conj(v(b)) / std::abs(v(b));
      break;
    }
  return v;
}

namespace {

// Generators (phases dropped) of the stabilizer subgroup supported on `mask`.
std::vector<Pauli> supported_subgroup(const Tableau& tab, std::uint64_t mask) {
  const std::uint64_t out = ~mask;
  // Gaussian elimination on the outside-restricted rows, tracking combinations.
  struct Row {
    std::uint64_t x, z;     // restriction to the complement
    std::uint64_t combo;    // which generators were multiplied
  };
  std::vector<Row> rows;
  for (int i = 0; i < tab.n; ++i)
    rows.push_back({tab.stab[i].x & out, tab.stab[i].z & out, 1ULL << i});
  std::vector<Pauli> gens;
  std::size_t r = 0;
  for (int bit = 127; bit >= 0; --bit) {
    std::uint64_t mx = bit >= 64 ? (1ULL << (bit - 64)) : 0;
    std::uint64_t mz = bit >= 64 ? 0 : (1ULL << bit);
    std::size_t piv = r;
    while (piv < rows.size() && !((rows[piv].x & mx) || (rows[piv].z & mz))) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[r], rows[piv]);
    for (std::size_t i = r + 1; i < rows.size(); ++i)
      if ((rows[i].x & mx) || (rows[i].z & mz)) {
        rows[i].x ^= rows[r].x;
        rows[i].z ^= rows[r].z;
        rows[i].combo ^= rows[r].combo;
      }
    ++r;
  }
  for (std::size_t i = r; i < rows.size(); ++i) {
    Pauli p = Pauli::identity(tab.n);
    for (int j = 0; j < tab.n; ++j)
      if ((rows[i].combo >> j) & 1) p = p * tab.stab[j];
    gens.push_back(p);
  }
  return gens;
}

// Half the symplectic rank of the projections onto X.
long long bell_count(const Tableau& tab, std::uint64_t xmask, std::uint64_t ymask) {
  auto gens = supported_subgroup(tab, xmask | ymask);
  std::vector<Pauli> proj;
  for (const auto& g : gens) proj.push_back(Pauli{g.x & xmask, g.z & xmask, 0, tab.n});
  const int k = static_cast<int>(proj.size());
  // GF(2) rank of the Gram matrix of symplectic products
  std::vector<std::uint64_t> gram(k, 0);
  if (k > 64) throw std::runtime_error("bell_count: too many subgroup generators");
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b)
      if (symplectic(proj[a], proj[b])) gram[a] |= 1ULL << b;
  long long rank = 0;
  for (int bit = k - 1; bit >= 0; --bit) {
    std::size_t piv = rank;
    while (piv < gram.size() && !((gram[piv] >> bit) & 1)) ++piv;
    if (piv == gram.size()) continue;
    std::swap(gram[rank], gram[piv]);
    for (std::size_t i = 0; i < gram.size(); ++i)
      if (i != static_cast<std::size_t>(rank) && ((gram[i] >> bit) & 1)) gram[i] ^= gram[rank];
    ++rank;
  }
  if (rank % 2 != 0) throw std::runtime_error("bell_count: odd symplectic rank");
  return rank / 2;
}

}  // namespace

TripartiteShape tripartite_shape(const Tableau& tab, const std::vector<int>& H,
                                 const std::vector<int>& I, const std::vector<int>& J) {
  std::vector<int> hij;
  hij.insert(hij.end(), H.begin(), H.end());
  hij.insert(hij.end(), I.begin(), I.end());
  hij.insert(hij.end(), J.begin(), J.end());
  if (static_cast<int>(hij.size()) < tab.n && tab.region_entropy_bits(hij) != 0)
    throw std::invalid_argument("tripartite_shape: leftover qubits entangled with H u I u J");
  const std::uint64_t hm = mask_of(H), im = mask_of(I), jm = mask_of(J);
  TripartiteShape s;
  s.e_hi = bell_count(tab, hm, im);
  s.e_hj = bell_count(tab, hm, jm);
  s.e_ij = bell_count(tab, im, jm);
  long long Sh = tab.region_entropy_bits(H);
  long long Si = tab.region_entropy_bits(I);
  long long Sj = tab.region_entropy_bits(J);
  s.g = Sh - s.e_hi - s.e_hj;
  if (s.g < 0 || Si != s.g + s.e_hi + s.e_ij || Sj != s.g + s.e_hj + s.e_ij)
    throw std::runtime_error("tripartite_shape: inconsistent entropies");
  return s;
}

std::vector<std::vector<int>> experiment_qubits(int m, const SiteLattice& lat) {
  const auto slots = site_slots(lat);
  std::vector<std::vector<int>> qubits(lat.sites());
  int next = 0;
  for (int i = 0; i < lat.sites(); ++i)
    for (std::size_t s = 0; s < slots[i].size(); ++s)
      for (int k = 0; k < m; ++k) qubits[i].push_back(next++);
  return qubits;
}

TripartiteResult tripartite_mie_experiment(int m, const SiteLattice& lat, std::size_t n_samples,
                                           double c2, std::uint64_t seed, bool product_bonds) {
  const auto slots = site_slots(lat);
  const auto qubits = experiment_qubits(m, lat);
  const int E = static_cast<int>(lat.edges.size());
  const int n = 2 * m * E;
  if (n > 64) throw std::invalid_argument("tripartite_mie_experiment: more than 64 qubits");
  if (lat.sites() < 3)
    throw std::invalid_argument("tripartite_mie_experiment: need at least three sites");

  // qubit of (site, edge slot, copy)
  auto slot_qubit = [&](int site, int edge, int copy) {
    int pos = static_cast<int>(std::find(slots[site].begin(), slots[site].end(), edge) -
                               slots[site].begin());
    return qubits[site][pos * m + copy];
  };

  TripartiteResult res;
  res.n_samples = n_samples;
  std::size_t n_mixed = 0, n_premise = 0;
  for (std::size_t sample = 0; sample < n_samples; ++sample) {
    auto rng = task_rng(seed, sample);
    Tableau tab = Tableau::zero_state(n);
    if (!product_bonds) {
      for (int e = 0; e < E; ++e)
        for (int k = 0; k < m; ++k) {
          int a = slot_qubit(lat.edges[e].first, e, k);
          int b = slot_qubit(lat.edges[e].second, e, k);
          tab.apply_h(a);
          tab.apply_cnot(a, b);
        }
    }
    for (int i = 0; i < lat.sites(); ++i)
      if (!qubits[i].empty())
        apply_clifford(tab, random_clifford(static_cast<int>(qubits[i].size()), rng), qubits[i]);

    // uniformly random distinct site triple {h, i, j}
    std::vector<int> sites(lat.sites());
    for (int i = 0; i < lat.sites(); ++i) sites[i] = i;
    std::shuffle(sites.begin(), sites.end(), rng);
    int h = sites[0], si = sites[1], sj = sites[2];

    for (int i = 3; i < lat.sites(); ++i)
      for (int q : qubits[sites[i]]) tab.measure_z(q, rng);

    TripartiteRecord rec;
    rec.sample = sample;
    rec.S_h = tab.region_entropy_bits(qubits[h]);
    rec.S_i = tab.region_entropy_bits(qubits[si]);
    rec.S_j = tab.region_entropy_bits(qubits[sj]);
    rec.shape = tripartite_shape(tab, qubits[h], qubits[si], qubits[sj]);
    auto purity = [](long long bits) { return std::pow(2.0, -static_cast<double>(bits)); };
    rec.all_mixed = purity(rec.S_h) < c2 && purity(rec.S_i) < c2 && purity(rec.S_j) < c2;
    rec.site_premise = rec.S_h >= 1 && rec.S_i >= 1 && rec.S_j >= 1;
    if (rec.all_mixed) ++n_mixed;
    if (rec.site_premise) ++n_premise;
    res.records.push_back(rec);
  }
  res.p_hat = static_cast<double>(n_mixed) / static_cast<double>(n_samples);
  res.site_premise_p = static_cast<double>(n_premise) / static_cast<double>(n_samples);
  double half = 1.96 * std::sqrt(std::max(res.p_hat * (1.0 - res.p_hat), 1e-12) /
                                 static_cast<double>(n_samples));
  res.ci_low = std::max(0.0, res.p_hat - half);
  res.ci_high = std::min(1.0, res.p_hat + half);
  return res;
}

}  // namespace mielab
