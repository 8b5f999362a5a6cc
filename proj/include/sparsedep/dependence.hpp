#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace sparsedep {

// Score variables W_i^{(j)}, one row per observation, one column per coordinate.
struct ScoreMatrix {
  Eigen::MatrixXd W;
};

// Regression scores W_i^{(j)} = X_ij * eps_i.
ScoreMatrix scores_regression(const Eigen::MatrixXd& X, const Eigen::VectorXd& eps);

// Density scores W_i^{(j)} = E[phi_j(Z_1)] - phi_j(Z_i). The population means
// are supplied by the caller (known in simulation, never estimated here).
ScoreMatrix scores_density(const Eigen::VectorXd& samples,
                           const std::function<double(int, double)>& dictionary_eval,
                           int p, const Eigen::VectorXd& true_means);

// d_m = (1/m) * (2m-2)! / ((m-1)!)^2, the (m-1)-th Catalan number; exact,
// throws on overflow of 64-bit arithmetic.
std::uint64_t catalan_d(int m);

// a_2 = 1, a_3 = 2, a_m = m - 1 + sum_{k=2}^{m-2} a_k a_{m-k}. Returns a vector
// with a[m] valid for 2 <= m <= m_max; a[0], a[1] are zero. Checks a_m <= d_m.
std::vector<std::uint64_t> a_sequence(int m_max);

// Moment-bound constants: c_{V,2q}(r) <= C (r+1)^{-q} with C >= 1.
struct MZParams {
  double C = 1.0;
  int q = 1;
};

// E (V_1 + ... + V_n)^{2q} <= C^q d_{2q} (2q)! n^q; +inf on floating overflow.
double mz_moment_bound(const MZParams& params, long n);

// Valid C for the clipped AR(1) process clip(eps, +-clip_bound) with
// parameter vartheta, derived from c_{V,2q}(r) <= 2q M^{2q} |vartheta|^r
// and maximizing 2q M^{2q} |vartheta|^r (r+1)^q over r. Result is >= 1.
double mz_constant_clipped_ar1(double vartheta, int q, double clip_bound);

// The pair (alpha, psi) of the deviation condition
//   P(| (1/n) sum_i W_i | >= n^{-1/2+alpha} t) <= psi(t),
// with psi decreasing, clipped at 1, and an explicit inverse on (0, 1).
class DeviationProfile {
 public:
  enum class Family { gaussian, bounded_hoeffding, polynomial, exponential };

  // psi(t) = exp(-t^2 / (2 sigma^2)); subGaussian scores.
  static DeviationProfile gaussian(double sigma, double alpha = 0.0);
  // psi(t) = 2 exp(-t^2 / (2 B^2)); bounded scores via Hoeffding.
  static DeviationProfile bounded_hoeffding(double B);
  // psi(t) = amplitude / t^{2q}; Markov on a 2q-th moment bound.
  static DeviationProfile polynomial(double amplitude, int two_q);
  // psi(t) = 2 exp(-t^2 / C_cal); the exponential-inequality corollaries.
  static DeviationProfile exponential(double C_cal);

  double alpha() const { return alpha_; }
  Family family() const { return family_; }
  double psi(double t) const;          // decreasing, in (0, 1]
  double psi_inverse(double y) const;  // y in (0, 1)
  std::string describe() const;

 private:
  DeviationProfile(Family f, double alpha, double a, double b)
      : family_(f), alpha_(alpha), a_(a), b_(b) {}
  Family family_;
  double alpha_;
  double a_, b_;  // family-specific parameters
};

// Markov's inequality applied to the moment bound for S_n / sqrt(n):
// psi(t) = C^q d_{2q} (2q)! / t^{2q}, alpha = 0.
DeviationProfile mz_tail_psi(const MZParams& params);

// Constants of the Doukhan-Neumann exponential inequality.
struct ExpIneqParams {
  enum class PsiKind { two_v, u_plus_v, u_times_v, mixed };

  double K = 1.0;
  double M_bound = 1.0;
  double L1 = 1.0;
  double L2 = 1.0;
  double mu = 0.0;
  PsiKind psi_kind = PsiKind::u_plus_v;
  double mixed_alpha = 0.5;  // only for PsiKind::mixed
  double A_n = 0.0;          // any upper bound on Var(S_n); must be set before use
  double B_n = 0.0;          // derived unless explicitly overridden

  double psi11() const;

  // B_n = 2 (K v M) L2 ((2^{4+mu} n K^2 L1 / A_n) v 1).
  double derive_B_n(long n) const;

  // A_n = 2 n K^2 Psi(1,1) L1 (the crude variance bound), B_n per formula.
  ExpIneqParams with_crude_variance_bound(long n) const;
};

// P(S_n >= t) <= exp(-(t^2/2) / (A_n + B_n^{1/(mu+2)} t^{(2mu+3)/(mu+2)})).
double dn_tail_bound(const ExpIneqParams& params, double t, long n);

// eta-dependence implies the covariance condition with Psi(u,v) = u + v,
// K^2 = M and rho(r) = eta(r); summability constants are passed through.
ExpIneqParams eta_to_dn_params(double L1, double L2, double mu, double sup_bound_M);

// Summability constants for geometric eta(r) = a^r, |a| < 1:
// sum (s+1)^k a^s <= L1 L2^k (k!)^mu with L1 = L2 = 1/(1-a), mu = 1.
ExpIneqParams geometric_eta_params(double a, double sup_bound_M);

struct DeviationCheckRow {
  int j = 0;
  double t = 0.0;
  double frequency = 0.0;
  double psi_t = 0.0;
  bool violation = false;
};

struct DeviationCheckReport {
  std::vector<DeviationCheckRow> rows;
  int n = 0;
  int p = 0;
  int reps = 0;
  bool any_violation() const;
  std::string summary() const;
};

// Monte Carlo check of the deviation condition: for each coordinate j and
// each t, the frequency of {| (1/n) sum_i W_i^{(j)} | >= n^{-1/2+alpha} t}
// against psi(t); flagged when frequency > psi(t) + 3 binomial SE.
DeviationCheckReport check_deviation_condition(
    const std::function<Eigen::MatrixXd(std::uint64_t)>& sample_scores,
    const DeviationProfile& profile, const std::vector<double>& t_grid, int n,
    int reps);

}  // namespace sparsedep
