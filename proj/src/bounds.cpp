#include "mielab/bounds.hpp"

#include <cmath>
#include <stdexcept>

#include "mielab/util.hpp"

namespace mielab {

double lemma1_bound(double eps, long long d_prime) {
  if (eps < 0.0 || eps > 2.0) throw std::invalid_argument("lemma1_bound: eps outside [0,2]");
  if (d_prime < 1) throw std::invalid_argument("lemma1_bound: d_prime < 1");
  return (1.0 - eps / 2.0) * std::log(static_cast<double>(d_prime)) - h2(eps / 2.0);
}

double markov_concentration(double eps_bar, long long d_prime, double delta) {
  if (delta <= std::log(2.0))
    throw std::invalid_argument("markov_concentration: delta must exceed ln 2");
  double b = 0.5 * eps_bar * std::log(static_cast<double>(d_prime)) / (delta - std::log(2.0));
  return std::min(1.0, b);
}

double f_of(double x) {
  if (x == 0.0) return 1.0;
  return std::expm1(x) / x;
}

double lemma2_eps_bound(double Z_upper, long long d_prime) {
  if (Z_upper <= 0.0) throw std::invalid_argument("lemma2_eps_bound: Z must be positive");
  return std::sqrt(static_cast<double>(d_prime)) * Z_upper * f_of(Z_upper);
}

BoundReport theorem3_bound(double Z_upper) {
  if (Z_upper <= 0.0) throw std::invalid_argument("theorem3_bound: Z must be positive");
  BoundReport r;
  r.Z_upper = Z_upper;
  r.F = -std::log(Z_upper);
  if (r.F < 2.0) {
    r.valid = false;
    r.d_prime = 1;
    r.mie_lower_nats = 0.0;
    r.eps_upper = 0.0;
    return r;
  }
  r.valid = true;
  r.d_prime = static_cast<long long>(std::ceil(std::exp(2.0 * r.F) / (r.F * r.F)));
  r.eps_upper = lemma2_eps_bound(Z_upper, r.d_prime);
  r.mie_lower_nats = 2.0 * r.F - 2.0 * std::log(std::exp(1.0) * r.F);
  return r;
}

ThresholdSet holographic_threshold(double mu_log_upper) {
  if (mu_log_upper < 0.0) throw std::invalid_argument("holographic_threshold: negative log mu");
  ThresholdSet t;
  t.S_crit_nats = 2.0 * mu_log_upper;
  t.S_crit_bits = nats_to_bits(t.S_crit_nats);
  int chi = 2;
  while (std::log(static_cast<double>(chi)) <= t.S_crit_nats) ++chi;
  t.chi_crit = chi;
  return t;
}

CellFactorTable fourlocal_constants(long long q) {
  if (q < 2) throw std::invalid_argument("fourlocal_constants: q must be >= 2");
  CellFactorTable t;
  t.architecture = CellFactorTable::Architecture::fourlocal_d2;
  t.q = q;
  double qd = static_cast<double>(q);
  t.c1 = std::sqrt(qd * (qd * qd + 1.0) / (qd * qd * qd * qd + 1.0));
  t.c2 = std::sqrt(2.0 * qd * qd / (qd * qd * qd * qd + 1.0));
  t.per_cell_factor = 255.0 * t.c2;
  t.threshold_met = t.per_cell_factor < std::exp(-kMuHexLog);
  return t;
}

CellFactorTable brickwork_constants(long long q) {
  if (q < 2) throw std::invalid_argument("brickwork_constants: q must be >= 2");
  CellFactorTable t;
  t.architecture = CellFactorTable::Architecture::brickwork_d4;
  t.q = q;
  double qd = static_cast<double>(q);
  double q2 = qd * qd;
  t.c1 = std::sqrt(qd * (q2 * q2 + 6.0 * q2 + 1.0) / std::pow(q2 + 1.0, 3));
  t.c2 = 2.0 * qd / (q2 + 1.0);
  t.per_cell_factor = std::sqrt(3.0) * 65535.0 * t.c2;
  t.threshold_met = t.per_cell_factor < std::exp(-kMuHexLog);
  return t;
}

long long crude_threshold_q(CellFactorTable::Architecture arch) {
  // The crude factors are strictly decreasing in q for q >= 2, so a doubling
  // search followed by bisection finds the exact threshold.
  auto met = [&](long long q) {
    return arch == CellFactorTable::Architecture::fourlocal_d2 ? fourlocal_constants(q).threshold_met
                                                               : brickwork_constants(q).threshold_met;
  };
  long long hi = 2;
  while (!met(hi)) {
    hi *= 2;
    if (hi > (1LL << 40)) throw std::runtime_error("crude_threshold_q: no threshold found");
  }
  long long lo = hi / 2;
  while (lo + 1 < hi) {
    long long mid = lo + (hi - lo) / 2;
    (met(mid) ? hi : lo) = mid;
  }
  return hi;
}

double contractivity_lambda(const std::vector<Eigen::MatrixXcd>& povm) {
  if (povm.empty()) throw std::invalid_argument("contractivity_lambda: empty POVM");
  const long d = povm.front().rows();
  Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(d, d);
  for (const auto& F : povm) {
    if (F.rows() != d || F.cols() != d)
      throw std::invalid_argument("contractivity_lambda: inconsistent operator dimensions");
    sum += F;
  }
  if ((sum - Eigen::MatrixXcd::Identity(d, d)).cwiseAbs().maxCoeff() > 1e-10)
    throw std::invalid_argument("contractivity_lambda: POVM does not sum to identity");

  Eigen::MatrixXcd Phi = Eigen::MatrixXcd::Zero(d * d, d * d);
  for (const auto& F : povm) {
    double tr = F.trace().real();
    if (tr <= 0) continue;
    Eigen::MatrixXcd w = F / tr;
    Eigen::Map<const Eigen::VectorXcd> wv(w.data(), d * d);
    Phi += (static_cast<double>(d) * tr) * (wv * wv.adjoint());
  }
  Eigen::VectorXcd idv = Eigen::VectorXcd::Zero(d * d);
  Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(d, d);
  idv = Eigen::Map<const Eigen::VectorXcd>(id.data(), d * d);
  Eigen::MatrixXcd P0 =
      Eigen::MatrixXcd::Identity(d * d, d * d) - idv * idv.adjoint() / static_cast<double>(d);
  Eigen::MatrixXcd M = P0 * Phi * P0;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(M);
  return std::sqrt(svd.singularValues()(0));
}

double vacuous_bound(double d_prime, double ising_Z_minus_plus) {
  if (d_prime <= 0.0 || ising_Z_minus_plus <= 0.0)
    throw std::invalid_argument("vacuous_bound: inputs must be positive");
  return std::sqrt(d_prime * ising_Z_minus_plus);
}

AdvantageCheck advantage_premise_check(int m, double mu_log_upper) {
  if (m < 1) throw std::invalid_argument("advantage_premise_check: m must be >= 1");
  AdvantageCheck a;
  a.beta = 0.5 * m * std::log(2.0);
  a.nu = std::exp(mu_log_upper - a.beta);
  a.lhs = a.beta;
  a.rhs = std::log(3.0) + mu_log_upper;
  a.pass = a.lhs >= a.rhs && a.nu <= 1.0 / 3.0;
  return a;
}

}  // namespace mielab
