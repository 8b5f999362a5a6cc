#pragma once

// Test-only oracles, independent of the library's solve paths.

#include <Eigen/Dense>
#include <vector>

#include "sparsedep/quadform.hpp"
#include "sparsedep/rng.hpp"

namespace sparsedep::testing {

inline QuadraticObjective random_regression_objective(int p, std::uint64_t seed,
                                                      int n = 0) {
  if (n == 0) n = 4 * p;
  Rng rng(seed);
  RegressionData data;
  data.X.resize(n, p);
  data.Y.resize(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < p; ++j) data.X(i, j) = rng.normal();
    data.Y(i) = rng.normal();
  }
  return build_regression_objective(data);
}

// Exhaustive minimization of l'u + u'Gu/2 + lambda |u|_1 over all 3^p sign
// patterns: fix the zero set, solve the smooth restricted problem with the
// sign-resolved penalty, keep pattern-consistent stationary points. Every
// KKT point of the convex objective appears among these.
inline double orthant_enumeration_minimum(const QuadraticObjective& obj, double lambda) {
  const int p = obj.dim();
  const Eigen::MatrixXd& G = obj.gram();
  const Eigen::VectorXd& l = obj.linear();
  double best = obj.value_scaled(Eigen::VectorXd::Zero(p));

  std::vector<int> pattern(static_cast<std::size_t>(p), 0);
  long total = 1;
  for (int j = 0; j < p; ++j) total *= 3;
  for (long code = 0; code < total; ++code) {
    long c = code;
    std::vector<int> free_idx;
    for (int j = 0; j < p; ++j) {
      pattern[static_cast<std::size_t>(j)] = static_cast<int>(c % 3) - 1;  // -1, 0, +1
      c /= 3;
      if (pattern[static_cast<std::size_t>(j)] != 0) free_idx.push_back(j);
    }
    if (free_idx.empty()) continue;  // the origin is covered by `best`
    const int k = static_cast<int>(free_idx.size());
    Eigen::MatrixXd Gs(k, k);
    Eigen::VectorXd rhs(k);
    for (int a = 0; a < k; ++a) {
      for (int b = 0; b < k; ++b) Gs(a, b) = G(free_idx[a], free_idx[b]);
      rhs(a) =
          -(l(free_idx[a]) + lambda * pattern[static_cast<std::size_t>(free_idx[a])]);
    }
    const Eigen::VectorXd v = Gs.ldlt().solve(rhs);
    if ((Gs * v - rhs).cwiseAbs().maxCoeff() > 1e-8) continue;  // singular block
    bool consistent = true;
    for (int a = 0; a < k; ++a)
      if (v(a) * pattern[static_cast<std::size_t>(free_idx[a])] < 0.0) consistent = false;
    if (!consistent) continue;
    Eigen::VectorXd u = Eigen::VectorXd::Zero(p);
    for (int a = 0; a < k; ++a) u(free_idx[a]) = v(a);
    best = std::min(best, obj.value_scaled(u) + lambda * u.lpNorm<1>());
  }
  return best;
}

}  // namespace sparsedep::testing
