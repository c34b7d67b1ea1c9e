#pragma once

#include <Eigen/Dense>
#include <vector>

namespace mielab {

struct BoundReport {
  double Z_upper = 0.0;        // certified upper bound on the wall partition sum
  double F = 0.0;              // -ln(Z_upper)
  long long d_prime = 1;       // optimal distillation dimension
  double mie_lower_nats = 0.0; // certified lower bound on mean post-measurement entanglement
  double eps_upper = 0.0;      // bound on the average distillation error
  bool valid = false;          // F >= 2 gate
};

struct CellFactorTable {
  enum class Architecture { fourlocal_d2, brickwork_d4 };
  Architecture architecture = Architecture::fourlocal_d2;
  long long q = 2;
  double c1 = 0.0, c2 = 0.0;
  double per_cell_factor = 0.0;
  bool threshold_met = false;  // per_cell_factor < 1/mu_hex
};

struct ThresholdSet {
  double S_crit_nats = 0.0;
  double S_crit_bits = 0.0;
  int chi_crit = 2;
};

struct AdvantageCheck {
  double beta = 0.0;
  double nu = 0.0;
  double lhs = 0.0;  // (m/2) ln 2
  double rhs = 0.0;  // ln 3 + log mu
  bool pass = false; // lhs >= rhs and nu <= 1/3
};

// Entropy floor after near-perfect distillation of a d'-dimensional pair with
// average error eps (continuity bound); nats.
double lemma1_bound(double eps, long long d_prime);

// Pr(S < ln d' - delta) <= eps_bar * ln d' / (2 (delta - ln 2)), clamped to 1.
double markov_concentration(double eps_bar, long long d_prime, double delta);

// Average-error bound sqrt(d') * Z * f(Z), f(x) = (e^x - 1)/x.
double lemma2_eps_bound(double Z_upper, long long d_prime);
double f_of(double x);

// Full chain: F = -ln Z, d' = ceil(F^-2 e^{2F}), bound = 2F - 2 ln(eF),
// valid only when F >= 2.
BoundReport theorem3_bound(double Z_upper);

// S_crit = 2 * mu_log nats; chi_crit = smallest integer chi with ln chi > S_crit.
ThresholdSet holographic_threshold(double mu_log_upper);

constexpr double kMuHexLog = 0.6139735886497578;  // ln sqrt(2 + sqrt 2)

// Per-cell transfer factors for the depth-2 plaquette architecture:
// c1^2 = q(q^2+1)/(q^4+1), c2^2 = 2q^2/(q^4+1); crude factor 255*c2.
CellFactorTable fourlocal_constants(long long q);
// Depth-4 brickwork: c1'^2 = q(q^4+6q^2+1)/(q^2+1)^3, c2' = 2q/(q^2+1);
// crude factor sqrt(3)*(2^16-1)*c2'.
CellFactorTable brickwork_constants(long long q);

// Smallest q whose crude per-cell factor beats 1/mu_hex.
long long crude_threshold_q(CellFactorTable::Architecture arch);

// Spectral contractivity constant of a POVM: lambda <= ||P0 Phi P0||^(1/2)
// with Phi = d^2 sum_s q_s |w_s>><<w_s|, q_s = Tr[F_s]/d, acting on vectorized
// operators; P0 projects onto the traceless subspace.
double contractivity_lambda(const std::vector<Eigen::MatrixXcd>& povm);

// Triangle-inequality route: sqrt(d' * Z_mp); vacuous (exceeds 1) at scale.
double vacuous_bound(double d_prime, double ising_Z_minus_plus);

// Ordered-phase premise check at bond-dimension exponent m (q = 2^m):
// beta = m ln2 / 2; pass iff beta >= ln(3 mu) and nu = e^{log mu - beta} <= 1/3.
AdvantageCheck advantage_premise_check(int m, double mu_log_upper);

}  // namespace mielab
