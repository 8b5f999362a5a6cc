#pragma once

#include <Eigen/Dense>

#include "sparsedep/csv.hpp"

namespace sparsedep {

// Empirical quadratic risk r_n(theta) in canonical form,
//
//   r_n(theta) = constant + linear'u + u' gram u / 2,   u = theta / column_scale,
//
// where gram is the Hessian after per-column scaling to unit diagonal and
// column_scale records the scaling, so callers keep their own coordinates.
// Construction validates symmetry and positive semidefiniteness.
class QuadraticObjective {
 public:
  // hessian: d^2 r_n / dtheta^2 (constant for a quadratic risk);
  // gradient_at_zero: d r_n / dtheta at 0; constant: r_n(0).
  static QuadraticObjective from_canonical(const Eigen::MatrixXd& hessian,
                                           const Eigen::VectorXd& gradient_at_zero,
                                           double constant);

  int dim() const { return static_cast<int>(gram_.rows()); }
  const Eigen::MatrixXd& gram() const { return gram_; }
  const Eigen::VectorXd& linear() const { return linear_; }
  double constant() const { return constant_; }
  const Eigen::VectorXd& column_scale() const { return scale_; }

  Eigen::VectorXd to_scaled(const Eigen::VectorXd& theta) const;
  Eigen::VectorXd to_original(const Eigen::VectorXd& u) const;

  // r_n at theta in the caller's coordinates.
  double value(const Eigen::VectorXd& theta) const;
  // r_n at u in the unit-diagonal coordinates.
  double value_scaled(const Eigen::VectorXd& u) const;
  Eigen::VectorXd gradient_scaled(const Eigen::VectorXd& u) const;

 private:
  QuadraticObjective() = default;
  Eigen::MatrixXd gram_;
  Eigen::VectorXd linear_;
  Eigen::VectorXd scale_;
  double constant_ = 0.0;
};

// LASSO risk: r_n(theta) = (1/n) sum_i (Y_i - X_i'theta)^2, Hessian (2/n)X'X.
// Rejects designs with an identically zero column (normalization undefined).
QuadraticObjective build_regression_objective(const RegressionData& data);

// v'(M/2)v with v = theta_hat - theta_bar; equals the population risk gap
// R(theta_hat) - R(theta_bar). Invariant under the internal rescaling.
double evaluate_risk_gap(const QuadraticObjective& obj,
                         const Eigen::VectorXd& theta_hat,
                         const Eigen::VectorXd& theta_bar);

}  // namespace sparsedep
