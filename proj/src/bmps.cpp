#include "mielab/bmps.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mielab {

bool TensorGrid::consistent() const {
  for (int y = 0; y < Ly; ++y)
    for (int x = 0; x < Lx; ++x) {
      const Tensor4& c = at(x, y);
      if (x == 0 && c.dl != 1) return false;
      if (y == 0 && c.du != 1) return false;
      if (x == Lx - 1 && c.dr != 1) return false;
      if (y == Ly - 1 && c.dd != 1) return false;
      if (x + 1 < Lx && c.dr != at(x + 1, y).dl) return false;
      if (y + 1 < Ly && c.dd != at(x, y + 1).du) return false;
    }
  return true;
}

TensorGrid sample_gaussian_tn(int Lx, int Ly, int chi, std::mt19937_64& rng) {
  if (Lx < 1 || Ly < 1 || chi < 1) throw std::invalid_argument("sample_gaussian_tn: bad shape");
  std::normal_distribution<double> g(0.0, 1.0);
  TensorGrid grid;
  grid.Lx = Lx;
  grid.Ly = Ly;
  for (int y = 0; y < Ly; ++y)
    for (int x = 0; x < Lx; ++x) {
      Tensor4 t = Tensor4::zero(x > 0 ? chi : 1, y > 0 ? chi : 1, x + 1 < Lx ? chi : 1,
                                y + 1 < Ly ? chi : 1);
      for (auto& e : t.v) e = cd(g(rng), g(rng));
      grid.t.push_back(std::move(t));
    }
  return grid;
}

void apply_bond_weights(TensorGrid& grid, const std::vector<double>& w) {
  for (int y = 0; y < grid.Ly; ++y)
    for (int x = 0; x < grid.Lx; ++x) {
      Tensor4& t = grid.at(x, y);
      for (int l = 0; l < t.dl; ++l)
        for (int u = 0; u < t.du; ++u)
          for (int r = 0; r < t.dr; ++r)
            for (int d = 0; d < t.dd; ++d) {
              double f = 1.0;
              if (x + 1 < grid.Lx) f *= w.at(r);
              if (y + 1 < grid.Ly) f *= w.at(d);
              t.at(l, u, r, d) *= f;
            }
    }
}

cd contract_exact(const TensorGrid& grid) {
  if (!grid.consistent()) throw std::invalid_argument("contract_exact: inconsistent grid");
  const int Lx = grid.Lx, Ly = grid.Ly;
  struct Bond {
    int dim;
  };
  // internal bonds: horizontal h(x,y) for x<Lx-1, vertical v(x,y) for y<Ly-1
  std::vector<int> dims;
  auto hid = [&](int x, int y) { return y * (Lx - 1) + x; };
  for (int y = 0; y < Ly; ++y)
    for (int x = 0; x + 1 < Lx; ++x) dims.push_back(grid.at(x, y).dr);
  const int nh = static_cast<int>(dims.size());
  auto vid = [&](int x, int y) { return nh + y * Lx + x; };
  for (int y = 0; y + 1 < Ly; ++y)
    for (int x = 0; x < Lx; ++x) dims.push_back(grid.at(x, y).dd);
  double total = 1.0;
  for (int d : dims) total *= d;
  if (total > (1 << 22)) throw std::invalid_argument("contract_exact: too many assignments");
  std::vector<int> a(dims.size(), 0);
  cd sum(0, 0);
  for (;;) {
    cd prod(1, 0);
    for (int y = 0; y < Ly && prod != cd(0, 0); ++y)
      for (int x = 0; x < Lx; ++x) {
        int l = x > 0 ? a[hid(x - 1, y)] : 0;
        int r = x + 1 < Lx ? a[hid(x, y)] : 0;
        int u = y > 0 ? a[vid(x, y - 1)] : 0;
        int d = y + 1 < Ly ? a[vid(x, y)] : 0;
        prod *= grid.at(x, y).at(l, u, r, d);
        if (prod == cd(0, 0)) break;
      }
    sum += prod;
    int k = static_cast<int>(a.size()) - 1;
    while (k >= 0 && ++a[k] == dims[k]) a[k--] = 0;
    if (k < 0) break;
  }
  return sum;
}

// ---- internal boundary-MPS machinery ---------------------------------------

namespace {

using Mat = Eigen::Matrix<cd, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

struct Tensor3 {
  int dl = 1, dp = 1, dr = 1;
  std::vector<cd> v;

  cd& at(int l, int p, int r) {
    return v[(static_cast<long long>(l) * dp + p) * dr + r];
  }
  cd at(int l, int p, int r) const {
    return v[(static_cast<long long>(l) * dp + p) * dr + r];
  }
  static Tensor3 zero(int dl, int dp, int dr) {
    Tensor3 t;
    t.dl = dl;
    t.dp = dp;
    t.dr = dr;
    t.v.assign(static_cast<std::size_t>(dl) * dp * dr, cd(0, 0));
    return t;
  }
  Eigen::Map<Mat> as_lp_r() { return {v.data(), static_cast<long long>(dl) * dp, dr}; }
  Eigen::Map<Mat> as_l_pr() { return {v.data(), dl, static_cast<long long>(dp) * dr}; }
};

struct Mps {
  std::vector<Tensor3> a;

  int n() const { return static_cast<int>(a.size()); }

  static Mps trivial(int n) {
    Mps m;
    for (int i = 0; i < n; ++i) {
      Tensor3 t = Tensor3::zero(1, 1, 1);
      t.v[0] = cd(1, 0);
      m.a.push_back(t);
    }
    return m;
  }

  double norm() const {
    Eigen::MatrixXcd E = Eigen::MatrixXcd::Identity(1, 1);
    for (const auto& t : a) {
      Eigen::MatrixXcd F = Eigen::MatrixXcd::Zero(t.dr, t.dr);
      for (int p = 0; p < t.dp; ++p) {
        Eigen::MatrixXcd Ap(t.dl, t.dr);
        for (int l = 0; l < t.dl; ++l)
          for (int r = 0; r < t.dr; ++r) Ap(l, r) = t.at(l, p, r);
        F += Ap.adjoint() * E * Ap;
      }
      E = F;
    }
    double n2 = E.trace().real();
    return std::sqrt(std::max(0.0, n2));
  }

  // amplitude of a chain whose physical dimensions are all 1
  cd scalar() const {
    Eigen::MatrixXcd E = Eigen::MatrixXcd::Identity(1, 1);
    for (const auto& t : a) {
      Eigen::MatrixXcd Ap(t.dl, t.dr);
      for (int l = 0; l < t.dl; ++l)
        for (int r = 0; r < t.dr; ++r) Ap(l, r) = t.at(l, 0, r);
      E = E * Ap;
    }
    return E(0, 0);
  }

  struct CompressStats {
    int chi_demanded = 1;
    int chi_used = 1;
    double discarded = 0.0;
    std::vector<std::vector<double>> bond_svals;  // normalized, per internal bond
  };

  // Left-to-right QR, then right-to-left SVD truncation; ends right-canonical
  // with the norm carried by site 0. Preserves the represented amplitude up to
  // the discarded weight.
  CompressStats compress(const TruncationPolicy& policy) {
    CompressStats st;
    st.bond_svals.assign(std::max(0, n() - 1), {});
    // QR sweep
    for (int y = 0; y + 1 < n(); ++y) {
      Tensor3& t = a[y];
      Eigen::Map<Mat> M = t.as_lp_r();
      Eigen::MatrixXcd Mcopy(M);
      Eigen::HouseholderQR<Eigen::MatrixXcd> qr(Mcopy);
      long long k = std::min<long long>(M.rows(), M.cols());
      Eigen::MatrixXcd Q = Eigen::MatrixXcd(qr.householderQ()).leftCols(k);
      Eigen::MatrixXcd R =
          qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();
      Tensor3 nt = Tensor3::zero(t.dl, t.dp, static_cast<int>(k));
      for (int l = 0; l < t.dl; ++l)
        for (int p = 0; p < t.dp; ++p)
          for (int r = 0; r < k; ++r) nt.at(l, p, r) = Q(static_cast<long long>(l) * t.dp + p, r);
      // absorb R into the next site
      Tensor3& nx = a[y + 1];
      Tensor3 nn = Tensor3::zero(static_cast<int>(k), nx.dp, nx.dr);
      for (int l = 0; l < k; ++l)
        for (int p = 0; p < nx.dp; ++p)
          for (int r = 0; r < nx.dr; ++r) {
            cd s(0, 0);
            for (int m = 0; m < nx.dl; ++m) s += R(l, m) * nx.at(m, p, r);
            nn.at(l, p, r) = s;
          }
      a[y] = std::move(nt);
      a[y + 1] = std::move(nn);
    }
    // SVD sweep
    for (int y = n() - 1; y >= 1; --y) {
      Tensor3& t = a[y];
      Eigen::Map<Mat> M = t.as_l_pr();
      Eigen::JacobiSVD<Eigen::MatrixXcd> svd(Eigen::MatrixXcd(M),
                                             Eigen::ComputeThinU | Eigen::ComputeThinV);
      const auto& s = svd.singularValues();
      double s2tot = s.squaredNorm();
      if (s2tot <= 0) s2tot = 1.0;
      int demanded = 0;
      for (long long i = 0; i < s.size(); ++i)
        if (s(i) > std::max(policy.cutoff * s(0), 1e-14 * s(0))) ++demanded;
      demanded = std::max(demanded, 1);
      int keep = std::min(demanded, policy.chi_max);
      double disc = 0.0;
      for (long long i = keep; i < s.size(); ++i) disc += s(i) * s(i);
      st.discarded += disc / s2tot;
      st.chi_demanded = std::max(st.chi_demanded, demanded);
      st.chi_used = std::max(st.chi_used, keep);
      std::vector<double> lam;
      for (long long i = 0; i < s.size(); ++i) lam.push_back(s(i) / std::sqrt(s2tot));
      st.bond_svals[y - 1] = lam;
      Eigen::MatrixXcd Vh = svd.matrixV().adjoint().topRows(keep);
      Tensor3 nt = Tensor3::zero(keep, t.dp, t.dr);
      for (int l = 0; l < keep; ++l)
        for (int p = 0; p < t.dp; ++p)
          for (int r = 0; r < t.dr; ++r) nt.at(l, p, r) = Vh(l, static_cast<long long>(p) * t.dr + r);
      Eigen::MatrixXcd US = svd.matrixU().leftCols(keep) * s.head(keep).asDiagonal();
      Tensor3& pv = a[y - 1];
      Tensor3 np = Tensor3::zero(pv.dl, pv.dp, keep);
      for (int l = 0; l < pv.dl; ++l)
        for (int p = 0; p < pv.dp; ++p)
          for (int r = 0; r < keep; ++r) {
            cd sacc(0, 0);
            for (int m = 0; m < pv.dr; ++m) sacc += pv.at(l, p, m) * US(m, r);
            np.at(l, p, r) = sacc;
          }
      a[y] = std::move(nt);
      a[y - 1] = std::move(np);
    }
    return st;
  }
};

double entropy_from_svals(const std::vector<double>& lam) {
  double s = 0.0;
  for (double l : lam) {
    double p = l * l;
    if (p > 1e-15) s -= p * std::log(p);
  }
  return s;
}

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * (1.0 / 9007199254740992.0);
}

}  // namespace

BmpsResult contract_bmps(const TensorGrid& grid, const TruncationPolicy& policy) {
  if (!grid.consistent()) throw std::invalid_argument("contract_bmps: inconsistent grid");
  BmpsResult res;
  Mps psi = Mps::trivial(grid.Ly);
  for (int x = 0; x < grid.Lx; ++x) {
    // absorb column x: new physical = right leg of the column's tensors
    for (int y = 0; y < grid.Ly; ++y) {
      const Tensor4& T = grid.at(x, y);
      Tensor3& A = psi.a[y];
      if (A.dp != T.dl) throw std::runtime_error("contract_bmps: leg mismatch");
      Tensor3 C = Tensor3::zero(A.dl * T.du, T.dr, A.dr * T.dd);
      for (int l = 0; l < A.dl; ++l)
        for (int u = 0; u < T.du; ++u)
          for (int e = 0; e < T.dr; ++e)
            for (int r = 0; r < A.dr; ++r)
              for (int d = 0; d < T.dd; ++d) {
                cd s(0, 0);
                for (int w = 0; w < T.dl; ++w) s += A.at(l, w, r) * T.at(w, u, e, d);
                C.at(l * T.du + u, e, r * T.dd + d) = s;
              }
      psi.a[y] = std::move(C);
    }
    Mps::CompressStats st = psi.compress(policy);
    ColumnStats cs;
    cs.t = x;
    cs.chi_used = st.chi_used;
    cs.chi_demanded = st.chi_demanded;
    cs.discarded = st.discarded;
    if (grid.Ly > 1 && !st.bond_svals[grid.Ly / 2 - 1].empty())
      cs.half_chain_entropy = entropy_from_svals(st.bond_svals[grid.Ly / 2 - 1]);
    res.columns.push_back(cs);
    if (st.chi_demanded > policy.chi_max && st.discarded > policy.abort_tol) {
      res.aborted = true;
      res.abort_column = x;
      return res;
    }
  }
  res.amplitude = psi.scalar();
  return res;
}

// ---- circuit-derived networks ----------------------------------------------

namespace {

// directions of a square-lattice site's incident edges, ascending edge id
enum class Dir { W, N, E, S };

std::vector<std::pair<int, Dir>> site_edge_dirs(const SiteLattice& lat, int site) {
  auto [x, y] = lat.coords(site);
  std::vector<std::pair<int, Dir>> out;
  for (std::size_t e = 0; e < lat.edges.size(); ++e) {
    auto [u, v] = lat.edges[e];
    int other = -1;
    if (u == site) other = v;
    else if (v == site) other = u;
    else continue;
    auto [ox, oy] = lat.coords(other);
    Dir d;
    if (ox == x - 1) d = Dir::W;
    else if (ox == x + 1) d = Dir::E;
    else if (oy == y - 1) d = Dir::N;
    else if (oy == y + 1) d = Dir::S;
    else throw std::invalid_argument("site_edge_dirs: not a nearest-neighbour edge");
    out.emplace_back(static_cast<int>(e), d);
  }
  return out;  // ascending edge id by construction
}

std::vector<Eigen::VectorXcd> resolved_bonds(const HolographicSpec& spec) {
  if (!spec.bond_states.empty()) return spec.bond_states;
  return std::vector<Eigen::VectorXcd>(spec.lat.edges.size(),
                                       maximally_entangled_bond(spec.chi));
}

}  // namespace

ExactTnSample sample_exact_tn(const HolographicSpec& spec, std::mt19937_64& rng) {
  const SiteLattice& lat = spec.lat;
  if (lat.kind != LatticeKind::square)
    throw std::invalid_argument("sample_exact_tn: square lattice required");
  const int chi = spec.chi;
  std::vector<Eigen::MatrixXcd> U(lat.sites());
  for (int i = 0; i < lat.sites(); ++i) U[i] = haar_unitary(site_dim(lat, i, chi), rng);

  PureState st = prepare_bond_product(spec);
  for (int i = 0; i < lat.sites(); ++i)
    if (st.site_dims[i] > 1) apply_gate(st, {i}, U[i]);
  std::vector<int> all(lat.sites());
  for (int i = 0; i < lat.sites(); ++i) all[i] = i;
  EnsembleSample samp = measure_sampled(st, all, rng);

  auto bonds = resolved_bonds(spec);
  ExactTnSample out;
  out.outcome = samp.outcome;
  out.p = samp.p;
  out.grid.Lx = lat.Lx;
  out.grid.Ly = lat.Ly;
  out.grid.t.resize(lat.sites());
  for (int y = 0; y < lat.Ly; ++y)
    for (int x = 0; x < lat.Lx; ++x) {
      int i = lat.index(x, y);
      auto dirs = site_edge_dirs(lat, i);
      const int k = static_cast<int>(dirs.size());
      Tensor4 T = Tensor4::zero(x > 0 ? chi : 1, y > 0 ? chi : 1, x + 1 < lat.Lx ? chi : 1,
                                y + 1 < lat.Ly ? chi : 1);
      for (int l = 0; l < T.dl; ++l)
        for (int u = 0; u < T.du; ++u)
          for (int r = 0; r < T.dr; ++r)
            for (int d = 0; d < T.dd; ++d) {
              long long local = 0;
              for (int j = 0; j < k; ++j) {
                int digit = 0;
                switch (dirs[j].second) {
                  case Dir::W: digit = l; break;
                  case Dir::N: digit = u; break;
                  case Dir::E: digit = r; break;
                  case Dir::S: digit = d; break;
                }
                local = local * chi + digit;
              }
              T.at(l, u, r, d) = U[i](samp.outcome[i], local);
            }
      out.grid.t[static_cast<std::size_t>(y) * lat.Lx + x] = std::move(T);
    }
  // absorb each bond state at its lower-indexed endpoint (E leg of the left
  // site for horizontal edges, S leg of the upper site for vertical edges)
  for (std::size_t e = 0; e < lat.edges.size(); ++e) {
    auto [u, v] = lat.edges[e];
    auto [ux, uy] = lat.coords(std::min(u, v));
    auto [vx, vy] = lat.coords(std::max(u, v));
    Tensor4& T = out.grid.at(ux, uy);
    Tensor4 nt = T;
    if (vx == ux + 1) {
      for (int l = 0; l < T.dl; ++l)
        for (int uu = 0; uu < T.du; ++uu)
          for (int b = 0; b < chi; ++b)
            for (int d = 0; d < T.dd; ++d) {
              cd s(0, 0);
              for (int a = 0; a < chi; ++a)
                s += T.at(l, uu, a, d) * bonds[e](static_cast<long long>(a) * chi + b);
              nt.at(l, uu, b, d) = s;
            }
    } else {
      for (int l = 0; l < T.dl; ++l)
        for (int uu = 0; uu < T.du; ++uu)
          for (int r = 0; r < T.dr; ++r)
            for (int b = 0; b < chi; ++b) {
              cd s(0, 0);
              for (int a = 0; a < chi; ++a)
                s += T.at(l, uu, r, a) * bonds[e](static_cast<long long>(a) * chi + b);
              nt.at(l, uu, r, b) = s;
            }
    }
    T = std::move(nt);
  }
  return out;
}

SebdResult sebd_sample(const HolographicSpec& spec, const TruncationPolicy& policy,
                       std::mt19937_64& rng) {
  const SiteLattice& lat = spec.lat;
  if (lat.kind != LatticeKind::square)
    throw std::invalid_argument("sebd_sample: square lattice required");
  const int chi = spec.chi;
  auto bonds = resolved_bonds(spec);
  SebdResult res;
  res.outcomes.assign(lat.sites(), -1);

  Mps psi = Mps::trivial(lat.Ly);
  for (int x = 0; x < lat.Lx; ++x) {
    // absorb column x with the outcome legs kept open in the physical index
    std::vector<long long> odims(lat.Ly), wdims(lat.Ly);
    for (int y = 0; y < lat.Ly; ++y) {
      int i = lat.index(x, y);
      long long d_site = site_dim(lat, i, chi);
      auto site_rng = task_rng(spec.seed, i);
      Eigen::MatrixXcd U = haar_unitary(d_site, site_rng);
      auto dirs = site_edge_dirs(lat, i);
      const int k = static_cast<int>(dirs.size());
      const int dvin = y > 0 ? chi : 1;
      const int dvout = y + 1 < lat.Ly ? chi : 1;
      const int dw = x > 0 ? chi : 1;
      const int dw2 = x + 1 < lat.Lx ? chi : 1;
      // bond states feeding this site
      const Eigen::VectorXcd* omega_v = nullptr;  // edge (x,y)-(x,y+1)
      const Eigen::VectorXcd* omega_h = nullptr;  // edge (x,y)-(x+1,y)
      for (auto [e, d] : dirs) {
        if (d == Dir::S) omega_v = &bonds[e];
        if (d == Dir::E) omega_h = &bonds[e];
      }
      // M[vin][vout][w][o][w2]
      std::vector<cd> M(static_cast<std::size_t>(dvin) * dvout * dw * d_site * dw2, cd(0, 0));
      auto mat = [&](int vin, int vout, int w, long long o, int w2) -> cd& {
        return M[(((static_cast<std::size_t>(vin) * dvout + vout) * dw + w) * d_site + o) * dw2 +
                 w2];
      };
      const int na = y + 1 < lat.Ly ? chi : 1;  // own S leg
      const int ne = x + 1 < lat.Lx ? chi : 1;  // own E leg
      for (int vin = 0; vin < dvin; ++vin)
        for (int w = 0; w < dw; ++w)
          for (long long o = 0; o < d_site; ++o)
            for (int a = 0; a < na; ++a)
              for (int e = 0; e < ne; ++e) {
                long long local = 0;
                for (int j = 0; j < k; ++j) {
                  int digit = 0;
                  switch (dirs[j].second) {
                    case Dir::W: digit = w; break;
                    case Dir::N: digit = vin; break;
                    case Dir::E: digit = e; break;
                    case Dir::S: digit = a; break;
                  }
                  local = local * chi + digit;
                }
                cd amp = U(o, local);
                if (amp == cd(0, 0)) continue;
                for (int vout = 0; vout < dvout; ++vout)
                  for (int w2 = 0; w2 < dw2; ++w2) {
                    cd f = amp;
                    if (omega_v) f *= (*omega_v)(static_cast<long long>(a) * chi + vout);
                    if (omega_h) f *= (*omega_h)(static_cast<long long>(e) * chi + w2);
                    if (f != cd(0, 0)) mat(vin, vout, w, o, w2) += f;
                  }
              }
      odims[y] = d_site;
      wdims[y] = dw2;
      Tensor3& A = psi.a[y];
      Tensor3 C = Tensor3::zero(A.dl * dvin, static_cast<int>(d_site) * dw2, A.dr * dvout);
      for (int l = 0; l < A.dl; ++l)
        for (int vin = 0; vin < dvin; ++vin)
          for (long long o = 0; o < d_site; ++o)
            for (int w2 = 0; w2 < dw2; ++w2)
              for (int r = 0; r < A.dr; ++r)
                for (int vout = 0; vout < dvout; ++vout) {
                  cd s(0, 0);
                  for (int w = 0; w < dw; ++w) s += A.at(l, w, r) * mat(vin, vout, w, o, w2);
                  C.at(l * dvin + vin, static_cast<int>(o) * dw2 + w2, r * dvout + vout) = s;
                }
      psi.a[y] = std::move(C);
    }
    Mps::CompressStats st = psi.compress(policy);
    ColumnStats cs;
    cs.t = x;
    cs.chi_used = st.chi_used;
    cs.chi_demanded = st.chi_demanded;
    cs.discarded = st.discarded;
    if (lat.Ly > 1 && !st.bond_svals[lat.Ly / 2 - 1].empty())
      cs.half_chain_entropy = entropy_from_svals(st.bond_svals[lat.Ly / 2 - 1]);
    res.columns.push_back(cs);
    if (st.chi_demanded > policy.chi_max && st.discarded > policy.abort_tol) {
      res.aborted = true;
      res.abort_column = x;
      return res;
    }
    // Born-sample the column's outcomes left (top) to bottom, using the
    // right-canonical form for the conditional marginals
    Eigen::MatrixXcd L = Eigen::MatrixXcd::Identity(1, 1);
    for (int y = 0; y < lat.Ly; ++y) {
      Tensor3& A = psi.a[y];
      const long long d_site = odims[y];
      const int dw2 = static_cast<int>(wdims[y]);
      std::vector<double> probs(d_site, 0.0);
      std::vector<Eigen::MatrixXcd> Ms(d_site);
      for (long long o = 0; o < d_site; ++o) {
        Eigen::MatrixXcd Mo = Eigen::MatrixXcd::Zero(A.dr, A.dr);
        for (int w2 = 0; w2 < dw2; ++w2) {
          Eigen::MatrixXcd Ap(A.dl, A.dr);
          for (int l = 0; l < A.dl; ++l)
            for (int r = 0; r < A.dr; ++r)
              Ap(l, r) = A.at(l, static_cast<int>(o) * dw2 + w2, r);
          Mo += Ap.adjoint() * L * Ap;
        }
        Ms[o] = Mo;
        probs[o] = std::max(0.0, Mo.trace().real());
      }
      double tot = 0.0;
      for (double p : probs) tot += p;
      if (tot <= 0) throw std::runtime_error("sebd_sample: vanishing column norm");
      double u = uniform01(rng) * tot;
      long long pick = 0;
      double acc = 0.0;
      for (long long o = 0; o < d_site; ++o) {
        acc += probs[o];
        if (u <= acc || o == d_site - 1) {
          pick = o;
          break;
        }
      }
      res.outcomes[lat.index(x, y)] = pick;
      L = Ms[pick] / std::max(probs[pick], 1e-300);
      // project the site onto the sampled outcome
      Tensor3 P = Tensor3::zero(A.dl, dw2, A.dr);
      for (int l = 0; l < A.dl; ++l)
        for (int w2 = 0; w2 < dw2; ++w2)
          for (int r = 0; r < A.dr; ++r)
            P.at(l, w2, r) = A.at(l, static_cast<int>(pick) * dw2 + w2, r);
      psi.a[y] = std::move(P);
    }
    double nrm = psi.norm();
    if (nrm <= 0) throw std::runtime_error("sebd_sample: zero post-projection norm");
    for (auto& e : psi.a[0].v) e /= nrm;
  }
  return res;
}

}  // namespace mielab
