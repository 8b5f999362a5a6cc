#include "sparsedep/density.hpp"

#include <cmath>
#include <stdexcept>

namespace sparsedep {

Dictionary Dictionary::gaussian_bumps(const Eigen::VectorXd& centers, double width) {
  if (centers.size() < 1) throw std::invalid_argument("dictionary: need at least one center");
  if (!(width > 0.0)) throw std::invalid_argument("dictionary: width must be positive");
  Dictionary d;
  d.centers_ = centers;
  d.width_ = width;
  const int p = static_cast<int>(centers.size());
  d.gram_.resize(p, p);
  const double sqrt_pi = std::sqrt(M_PI);
  for (int j = 0; j < p; ++j)
    for (int k = 0; k <= j; ++k) {
      const double diff = centers(j) - centers(k);
      d.gram_(j, k) = d.gram_(k, j) =
          width * sqrt_pi * std::exp(-diff * diff / (4.0 * width * width));
    }
  return d;
}

double Dictionary::lipschitz() const { return std::exp(-0.5) / width_; }

double Dictionary::evaluate(int j, double x) const {
  const double z = (x - centers_(j)) / width_;
  return std::exp(-0.5 * z * z);
}

Eigen::VectorXd Dictionary::evaluate_all(double x) const {
  Eigen::VectorXd out(size());
  for (int j = 0; j < size(); ++j) out(j) = evaluate(j, x);
  return out;
}

double Dictionary::evaluate_combination(const Eigen::VectorXd& theta, double x) const {
  if (theta.size() != size())
    throw std::invalid_argument("dictionary: coefficient length mismatch");
  return theta.dot(evaluate_all(x));
}

double Dictionary::window_lo() const { return centers_.minCoeff() - 8.0 * width_; }
double Dictionary::window_hi() const { return centers_.maxCoeff() + 8.0 * width_; }

QuadraticObjective build_density_objective(const Dictionary& dict,
                                           const Eigen::VectorXd& samples) {
  if (samples.size() < 1)
    throw std::invalid_argument("density objective: need at least one sample");
  const int p = dict.size();
  Eigen::VectorXd phi_sum = Eigen::VectorXd::Zero(p);
  for (Eigen::Index i = 0; i < samples.size(); ++i)
    phi_sum += dict.evaluate_all(samples(i));
  const Eigen::VectorXd gradient = -2.0 / static_cast<double>(samples.size()) * phi_sum;
  return QuadraticObjective::from_canonical(2.0 * dict.gram(), gradient, 0.0);
}

QuadratureResult l2_error(const Dictionary& dict, const Eigen::VectorXd& theta_hat,
                          const std::function<double(double)>& reference,
                          double tol) {
  if (theta_hat.size() != dict.size())
    throw std::invalid_argument("l2_error: coefficient length mismatch");
  auto integrand = [&](double x) {
    const double diff = dict.evaluate_combination(theta_hat, x) - reference(x);
    if (!std::isfinite(diff))
      throw std::invalid_argument("l2_error: non-finite value on the window");
    return diff * diff;
  };
  return integrate(integrand, dict.window_lo(), dict.window_hi(), tol);
}

ScoreMatrix scores_density(const Eigen::VectorXd& samples, const Dictionary& dict,
                           const Eigen::VectorXd& true_means) {
  return scores_density(
      samples, [&dict](int j, double z) { return dict.evaluate(j, z); }, dict.size(),
      true_means);
}

}  // namespace sparsedep
