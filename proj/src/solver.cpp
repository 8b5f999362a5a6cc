#include "sparsedep/solver.hpp"

#include <cmath>
#include <stdexcept>

namespace sparsedep {

int LassoSolution::support_size(double tol) const {
  int count = 0;
  for (Eigen::Index j = 0; j < theta_scaled.size(); ++j)
    if (std::abs(theta_scaled(j)) > tol) ++count;
  return count;
}

double soft_threshold(double x, double t) {
  if (x > t) return x - t;
  if (x < -t) return x + t;
  return 0.0;
}

double kkt_residual(const QuadraticObjective& obj, const Eigen::VectorXd& u,
                    double lambda, const Eigen::VectorXd* weights) {
  const Eigen::VectorXd g = obj.gradient_scaled(u);
  double worst = 0.0;
  for (Eigen::Index j = 0; j < u.size(); ++j) {
    const double lj = lambda * (weights ? (*weights)(j) : 1.0);
    double viol;
    if (u(j) > 0.0)
      viol = std::abs(g(j) + lj);
    else if (u(j) < 0.0)
      viol = std::abs(g(j) - lj);
    else
      viol = std::max(0.0, std::abs(g(j)) - lj);
    worst = std::max(worst, viol);
  }
  return worst;
}

namespace {

LassoSolution run_descent(const QuadraticObjective& obj, double lambda,
                          const Eigen::VectorXd* weights,
                          const SolverOptions& opts,
                          const Eigen::VectorXd* warm_start) {
  const int p = obj.dim();
  if (!(lambda >= 0.0)) throw std::invalid_argument("solve: lambda must be >= 0");
  if (!obj.linear().allFinite() || !obj.gram().allFinite())
    throw std::invalid_argument("solve: objective contains non-finite values");
  if (weights && (weights->size() != p || weights->minCoeff() < 0.0))
    throw std::invalid_argument("solve: bad penalty weights");

  const int max_sweeps = opts.max_sweeps > 0 ? opts.max_sweeps : 100 * p;
  const Eigen::MatrixXd& G = obj.gram();

  Eigen::VectorXd u = warm_start ? *warm_start : Eigen::VectorXd::Zero(p);
  if (warm_start && !warm_start->allFinite())
    throw std::invalid_argument("solve: non-finite warm start");
  // Running gradient of the smooth part; diag(G) == 1 so the coordinate
  // minimizer is soft_threshold(u_j - g_j, lambda_j).
  Eigen::VectorXd g = obj.gradient_scaled(u);

  LassoSolution sol;
  sol.lambda = lambda;
  int sweep = 0;
  for (; sweep < max_sweeps; ++sweep) {
    double max_change = 0.0;
    for (int j = 0; j < p; ++j) {
      const double lj = lambda * (weights ? (*weights)(j) : 1.0);
      const double updated = soft_threshold(u(j) - g(j), lj);
      const double delta = updated - u(j);
      if (delta != 0.0) {
        u(j) = updated;
        g += delta * G.col(j);
        max_change = std::max(max_change, std::abs(delta));
      }
    }
    if (opts.record_objective_trace) {
      double l1 = weights ? u.cwiseAbs().dot(*weights) : u.lpNorm<1>();
      sol.objective_trace.push_back(obj.value_scaled(u) + lambda * l1);
    }
    if (max_change < opts.coord_tol &&
        kkt_residual(obj, u, lambda, weights) <= opts.kkt_tol) {
      ++sweep;
      sol.converged = true;
      break;
    }
  }

  sol.theta_scaled = u;
  sol.theta = obj.to_original(u);
  sol.iterations = sweep;
  sol.kkt_residual = kkt_residual(obj, u, lambda, weights);
  const double l1 = weights ? u.cwiseAbs().dot(*weights) : u.lpNorm<1>();
  sol.objective_value = obj.value_scaled(u) + lambda * l1;
  return sol;
}

}  // namespace

LassoSolution solve(const QuadraticObjective& obj, double lambda,
                    const SolverOptions& opts) {
  return run_descent(obj, lambda, nullptr, opts, nullptr);
}

LassoSolution solve_weighted(const QuadraticObjective& obj, double lambda,
                             const Eigen::VectorXd& weights,
                             const SolverOptions& opts) {
  return run_descent(obj, lambda, &weights, opts, nullptr);
}

std::vector<LassoSolution> solve_path(const QuadraticObjective& obj,
                                      const std::vector<double>& lambdas,
                                      const SolverOptions& opts,
                                      const Eigen::VectorXd* weights) {
  for (std::size_t k = 0; k + 1 < lambdas.size(); ++k)
    if (!(lambdas[k] > lambdas[k + 1]))
      throw std::invalid_argument("solve_path: lambdas must be strictly decreasing");
  std::vector<LassoSolution> path;
  path.reserve(lambdas.size());
  Eigen::VectorXd warm = Eigen::VectorXd::Zero(obj.dim());
  for (double lambda : lambdas) {
    path.push_back(run_descent(obj, lambda, weights, opts, &warm));
    warm = path.back().theta_scaled;
  }
  return path;
}

}  // namespace sparsedep
