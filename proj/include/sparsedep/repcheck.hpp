#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

namespace sparsedep {

struct RepOptions {
  // false: enumerate |J| < s, reading the assumption literally (s = 1 is then
  // rejected); true: |J| <= s, the variant the oracle-inequality proof uses
  // with J = support of the target.
  bool inclusive = false;
  int starts_per_subset = 6;
  int outer_iterations = 120;
  int inner_iterations = 1500;
  // Ratio evaluations spent refining each random probe; every probe gets the
  // same budget, so a larger probe budget is a minimum over a superset.
  int refine_eval_budget = 150;
  double tol = 1e-11;
};

struct RepEstimate {
  double kappa = 0.0;
  int sparsity = 0;
  enum class Method { exact, randomized } method = Method::exact;
  std::vector<int> certificate_J;
  Eigen::VectorXd certificate_v;
};

// v'Mv / sum_{j in J} v_j^2 at a certificate; independent re-evaluation.
double cone_ratio(const Eigen::MatrixXd& M, const std::vector<int>& J,
                  const Eigen::VectorXd& v);

// sum_{j not in J} |v_j| <= 3 sum_{j in J} |v_j| within slack.
bool cone_feasible(const std::vector<int>& J, const Eigen::VectorXd& v,
                   double slack = 1e-9);

// Restricted-eigenvalue constant over all admissible subsets J, by subset
// enumeration with an interior (Schur-complement) candidate plus multistart
// sphere/cone minimization per subset. Exact up to the search; requires
// p <= 12.
RepEstimate rep_exact(const Eigen::MatrixXd& M, int s, const RepOptions& opts = {});

// Randomized upper bound: minimum ratio over `budget` random cone-feasible
// directions, each improved by projected gradient descent in the cone.
RepEstimate rep_randomized(const Eigen::MatrixXd& M, int s, int budget,
                           std::uint64_t seed, const RepOptions& opts = {});

}  // namespace sparsedep
