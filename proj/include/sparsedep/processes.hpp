#pragma once

#include <Eigen/Dense>
#include <cstdint>

#include "sparsedep/rng.hpp"

namespace sparsedep {

enum class ProcessKind {
  iid_gaussian,
  ar1,
  long_memory_gaussian,
  hermite2_of_long_memory,
};

struct ProcessSpec {
  ProcessKind kind = ProcessKind::iid_gaussian;
  int n = 0;
  std::uint64_t seed = 0;
  double sigma = 1.0;     // iid_gaussian
  double vartheta = 0.0;  // ar1, in (-1, 1)
  double beta = 0.5;      // long memory, in (0, 1)
};

// eps_1 ~ N(0,1), eps_i = vartheta * eps_{i-1} + eta_i with
// eta_i ~ N(0, 1 - vartheta^2), so every marginal has unit variance.
// vartheta = 0 reproduces the iid standard normal stream exactly.
Eigen::VectorXd generate_ar1(const ProcessSpec& spec);

Eigen::VectorXd generate_iid_gaussian(const ProcessSpec& spec);

// Stationary unit-variance Gaussian with autocovariance ~ const * i^{-beta}:
// fractional Gaussian noise with Hurst H = 1 - beta/2, exact finite-n
// covariance realized through a Cholesky factor.
Eigen::VectorXd generate_long_memory_gaussian(const ProcessSpec& spec);

// V_i = G_i^2 - 1 elementwise (the rank-2 Hermite polynomial).
Eigen::VectorXd hermite2_transform(const Eigen::VectorXd& g);

// Dispatch on spec.kind; hermite2_of_long_memory composes the two above.
Eigen::VectorXd generate(const ProcessSpec& spec);

// Closed-form FGN autocovariance at the given lag (unit variance, H = 1 - beta/2).
double fgn_autocovariance(double beta, int lag);

// Asymptotic constant in cov(G_k, G_{k+i}) ~ B i^{-beta}: H(2H-1) for FGN.
double implied_long_memory_constant(double beta);

// Precomputed Cholesky factor for repeated FGN sampling at fixed (beta, n).
class FgnSampler {
 public:
  FgnSampler(double beta, int n);
  int n() const { return static_cast<int>(chol_.rows()); }
  Eigen::VectorXd sample(Rng& rng) const;

 private:
  Eigen::MatrixXd chol_;
};

struct DesignSpec {
  int n = 0;
  int p = 0;
  double rho = 0.5;  // Sigma_{ij} = rho^{|i-j|}, |rho| < 1
  std::uint64_t seed = 0;
};

// Rows iid N_p(0, Sigma); generated once and treated as a fixed design.
Eigen::MatrixXd generate_design(const DesignSpec& spec);

}  // namespace sparsedep
