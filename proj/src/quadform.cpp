#include "sparsedep/quadform.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace sparsedep {

QuadraticObjective QuadraticObjective::from_canonical(
    const Eigen::MatrixXd& hessian, const Eigen::VectorXd& gradient_at_zero,
    double constant) {
  const auto p = hessian.rows();
  if (p == 0 || hessian.cols() != p)
    throw std::invalid_argument("objective: hessian must be square and non-empty");
  if (gradient_at_zero.size() != p)
    throw std::invalid_argument("objective: gradient dimension mismatch");

  const double scale_ref = std::max(1.0, hessian.cwiseAbs().maxCoeff());
  if ((hessian - hessian.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale_ref)
    throw std::invalid_argument("objective: hessian is not symmetric");

  Eigen::MatrixXd H = 0.5 * (hessian + hessian.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(H, Eigen::EigenvaluesOnly);
  const double max_ev = eig.eigenvalues().maxCoeff();
  if (eig.eigenvalues().minCoeff() < -1e-9 * std::max(max_ev, 0.0))
    throw std::invalid_argument("objective: hessian is not positive semidefinite");

  QuadraticObjective obj;
  obj.scale_.resize(p);
  for (Eigen::Index j = 0; j < p; ++j) {
    const double d = H(j, j);
    if (!(d > 0.0))
      throw std::invalid_argument("objective: nonpositive Hessian diagonal at column " +
                                  std::to_string(j));
    obj.scale_(j) = 1.0 / std::sqrt(d);
  }
  obj.gram_ = obj.scale_.asDiagonal() * H * obj.scale_.asDiagonal();
  obj.gram_ = 0.5 * (obj.gram_ + obj.gram_.transpose().eval());
  obj.gram_.diagonal().setOnes();
  obj.linear_ = obj.scale_.cwiseProduct(gradient_at_zero);
  obj.constant_ = constant;
  return obj;
}

Eigen::VectorXd QuadraticObjective::to_scaled(const Eigen::VectorXd& theta) const {
  return theta.cwiseQuotient(scale_);
}

Eigen::VectorXd QuadraticObjective::to_original(const Eigen::VectorXd& u) const {
  return u.cwiseProduct(scale_);
}

double QuadraticObjective::value(const Eigen::VectorXd& theta) const {
  return value_scaled(to_scaled(theta));
}

double QuadraticObjective::value_scaled(const Eigen::VectorXd& u) const {
  if (u.size() != gram_.rows())
    throw std::invalid_argument("objective: dimension mismatch");
  return constant_ + linear_.dot(u) + 0.5 * u.dot(gram_ * u);
}

Eigen::VectorXd QuadraticObjective::gradient_scaled(const Eigen::VectorXd& u) const {
  if (u.size() != gram_.rows())
    throw std::invalid_argument("objective: dimension mismatch");
  return linear_ + gram_ * u;
}

QuadraticObjective build_regression_objective(const RegressionData& data) {
  const auto n = data.X.rows();
  const auto p = data.X.cols();
  if (n < 1 || p < 1) throw std::invalid_argument("regression: empty design");
  if (data.Y.size() != n) throw std::invalid_argument("regression: Y length mismatch");
  for (Eigen::Index j = 0; j < p; ++j) {
    if (data.X.col(j).cwiseAbs().maxCoeff() == 0.0)
      throw std::invalid_argument("regression: column " + std::to_string(j) +
                                  " of the design is identically zero");
  }
  const double inv_n = 1.0 / static_cast<double>(n);
  Eigen::MatrixXd hessian = 2.0 * inv_n * (data.X.transpose() * data.X);
  Eigen::VectorXd gradient = -2.0 * inv_n * (data.X.transpose() * data.Y);
  const double constant = inv_n * data.Y.squaredNorm();
  return QuadraticObjective::from_canonical(hessian, gradient, constant);
}

double evaluate_risk_gap(const QuadraticObjective& obj,
                         const Eigen::VectorXd& theta_hat,
                         const Eigen::VectorXd& theta_bar) {
  if (theta_hat.size() != obj.dim() || theta_bar.size() != obj.dim())
    throw std::invalid_argument("risk gap: dimension mismatch");
  const Eigen::VectorXd v = obj.to_scaled(theta_hat) - obj.to_scaled(theta_bar);
  return 0.5 * v.dot(obj.gram() * v);
}

}  // namespace sparsedep
