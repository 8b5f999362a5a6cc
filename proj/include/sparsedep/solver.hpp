#pragma once

#include <Eigen/Dense>
#include <vector>

#include "sparsedep/quadform.hpp"

namespace sparsedep {

struct SolverOptions {
  int max_sweeps = 0;        // 0 means 100 * p
  double coord_tol = 1e-9;   // stop when the largest coordinate update is below this
  double kkt_tol = 1e-7;
  bool record_objective_trace = false;
};

struct LassoSolution {
  Eigen::VectorXd theta;         // caller coordinates
  Eigen::VectorXd theta_scaled;  // unit-diagonal coordinates the solver works in
  double lambda = 0.0;
  double objective_value = 0.0;  // r_n + lambda * (weighted) l1, scaled coordinates
  double kkt_residual = 0.0;
  int iterations = 0;  // full sweeps
  bool converged = false;
  std::vector<double> objective_trace;  // filled when requested, one entry per sweep

  int support_size(double tol = 0.0) const;
};

// sign(x) * max(|x| - t, 0), the coordinate minimizer of a unit quadratic plus l1.
double soft_threshold(double x, double t);

// Max subgradient violation of min value_scaled(u) + lambda * sum_j w_j |u_j|,
// recomputing the gradient from scratch; independent of the descent loop.
double kkt_residual(const QuadraticObjective& obj, const Eigen::VectorXd& u,
                    double lambda, const Eigen::VectorXd* weights = nullptr);

// Cyclic coordinate descent with soft-thresholding. Coordinates are visited
// in index order, so results are deterministic. Non-convergence within the
// sweep budget returns converged = false with the best iterate.
LassoSolution solve(const QuadraticObjective& obj, double lambda,
                    const SolverOptions& opts = {});

// Same, with per-coordinate penalty lambda * w_j |u_j| (weights in scaled
// coordinates). Used to express a penalty in the caller's coordinates.
LassoSolution solve_weighted(const QuadraticObjective& obj, double lambda,
                             const Eigen::VectorXd& weights,
                             const SolverOptions& opts = {});

// Warm-started path over strictly decreasing lambdas.
std::vector<LassoSolution> solve_path(const QuadraticObjective& obj,
                                      const std::vector<double>& lambdas,
                                      const SolverOptions& opts = {},
                                      const Eigen::VectorXd* weights = nullptr);

}  // namespace sparsedep
