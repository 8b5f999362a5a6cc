#pragma once

#include <Eigen/Dense>
#include <functional>

#include "sparsedep/dependence.hpp"
#include "sparsedep/quadform.hpp"
#include "sparsedep/quadrature.hpp"

namespace sparsedep {

// Gaussian-bump dictionary phi_j(x) = exp(-(x - c_j)^2 / (2 w^2)); uniformly
// bounded by B = 1 and Lipschitz with L = exp(-1/2)/w, so it satisfies the
// dependent-density hypotheses. The Gram integral has the closed form
// G_jk = w sqrt(pi) exp(-(c_j - c_k)^2 / (4 w^2)).
class Dictionary {
 public:
  Dictionary() = default;  // empty; populate via gaussian_bumps
  static Dictionary gaussian_bumps(const Eigen::VectorXd& centers, double width);

  int size() const { return static_cast<int>(centers_.size()); }
  double width() const { return width_; }
  const Eigen::VectorXd& centers() const { return centers_; }
  double sup_bound() const { return 1.0; }
  double lipschitz() const;
  const Eigen::MatrixXd& gram() const { return gram_; }

  double evaluate(int j, double x) const;
  Eigen::VectorXd evaluate_all(double x) const;
  double evaluate_combination(const Eigen::VectorXd& theta, double x) const;

  // Evaluation window covering every center plus 8 widths of tail.
  double window_lo() const;
  double window_hi() const;

 private:
  Eigen::VectorXd centers_;
  double width_ = 0.0;
  Eigen::MatrixXd gram_;
};

// SPADES risk: r_n(theta) = int f_theta^2 - (2/n) sum_i f_theta(Z_i),
// Hessian 2G, then normalized to unit diagonal as usual.
QuadraticObjective build_density_objective(const Dictionary& dict,
                                           const Eigen::VectorXd& samples);

// int (f_theta_hat - reference)^2 over the dictionary window, by composite
// quadrature with refinement; error_estimate reports the last change.
QuadratureResult l2_error(const Dictionary& dict, const Eigen::VectorXd& theta_hat,
                          const std::function<double(double)>& reference,
                          double tol = 1e-10);

// Density scores with the dictionary as the evaluator.
ScoreMatrix scores_density(const Eigen::VectorXd& samples, const Dictionary& dict,
                           const Eigen::VectorXd& true_means);

}  // namespace sparsedep
