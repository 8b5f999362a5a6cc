#include <doctest.h>

#include <cmath>
#include <set>

#include "oracles.hpp"
#include "sparsedep/processes.hpp"
#include "sparsedep/quadform.hpp"
#include "sparsedep/rng.hpp"
#include "sparsedep/solver.hpp"

using namespace sparsedep;
using testing::orthant_enumeration_minimum;
using testing::random_regression_objective;

namespace {

QuadraticObjective random_objective(int p, std::uint64_t seed, int n = 0) {
  return random_regression_objective(p, seed, n);
}

}  // namespace

TEST_CASE("soft threshold") {
  CHECK(soft_threshold(0.0, 1.0) == 0.0);
  CHECK(soft_threshold(3.0, 1.0) == 2.0);
  CHECK(soft_threshold(-0.5, 1.0) == 0.0);
  CHECK(soft_threshold(-3.0, 1.0) == -2.0);
}

TEST_CASE("lambda above the gradient at zero gives the zero vector exactly") {
  auto obj = random_objective(6, 21);
  const double lambda = obj.linear().cwiseAbs().maxCoeff();
  auto sol = solve(obj, lambda * 1.000001);
  CHECK(sol.converged);
  CHECK(sol.theta_scaled.cwiseAbs().maxCoeff() == 0.0);
  CHECK(sol.iterations <= 2);
}

TEST_CASE("lambda zero reproduces the least-squares solution") {
  auto obj = random_objective(7, 22);
  auto sol = solve(obj, 0.0);
  CHECK(sol.converged);
  const Eigen::VectorXd ls = obj.gram().llt().solve(-obj.linear());
  CHECK((sol.theta_scaled - ls).cwiseAbs().maxCoeff() < 1e-6);
}

TEST_CASE("objective matches the orthant-enumeration oracle at p = 6") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    auto obj = random_objective(6, seed * 13);
    auto sol = solve(obj, 0.3);
    REQUIRE(sol.converged);
    const double oracle = orthant_enumeration_minimum(obj, 0.3);
    CHECK(sol.objective_value == doctest::Approx(oracle).epsilon(1e-6));
    CHECK(sol.objective_value >= oracle - 1e-9);
  }
}

TEST_CASE("KKT conditions hold coordinate-wise at the solution") {
  auto obj = random_objective(9, 77);
  const double lambda = 0.25;
  auto sol = solve(obj, lambda);
  REQUIRE(sol.converged);
  CHECK(sol.kkt_residual <= 1e-7);
  const Eigen::VectorXd g = obj.gradient_scaled(sol.theta_scaled);
  for (int j = 0; j < 9; ++j) {
    if (sol.theta_scaled(j) != 0.0) {
      CHECK(std::abs(g(j) + lambda * (sol.theta_scaled(j) > 0 ? 1.0 : -1.0)) <= 1e-7);
    } else {
      CHECK(std::abs(g(j)) <= lambda + 1e-7);
    }
  }
}

TEST_CASE("objective value field re-evaluates") {
  auto obj = random_objective(5, 3);
  auto sol = solve(obj, 0.15);
  const double recomputed =
      obj.value_scaled(sol.theta_scaled) + 0.15 * sol.theta_scaled.lpNorm<1>();
  CHECK(sol.objective_value == doctest::Approx(recomputed).epsilon(1e-9));
  // also consistent through the caller-coordinate evaluation
  CHECK(obj.value(sol.theta) == doctest::Approx(obj.value_scaled(sol.theta_scaled))
                                    .epsilon(1e-9));
}

TEST_CASE("descent: objective never increases across sweeps") {
  auto obj = random_objective(12, 5, 8);  // p > n, singular gram
  SolverOptions opts;
  opts.record_objective_trace = true;
  auto sol = solve(obj, 0.05, opts);
  for (std::size_t k = 1; k < sol.objective_trace.size(); ++k)
    CHECK(sol.objective_trace[k] <= sol.objective_trace[k - 1] + 1e-12);
}

TEST_CASE("NaN input is rejected") {
  auto obj = random_objective(4, 9);
  Eigen::MatrixXd H = Eigen::MatrixXd::Identity(3, 3);
  Eigen::VectorXd bad(3);
  bad << 1.0, std::nan(""), 0.0;
  auto nan_obj = QuadraticObjective::from_canonical(H, bad, 0.0);
  CHECK_THROWS_AS(solve(nan_obj, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(solve(obj, -1.0), std::invalid_argument);
}

TEST_CASE("non-convergence returns a flag, not an exception") {
  auto obj = random_objective(10, 44, 6);
  SolverOptions opts;
  opts.max_sweeps = 1;
  opts.coord_tol = 0.0;
  auto sol = solve(obj, 1e-8, opts);
  CHECK_FALSE(sol.converged);
  CHECK(sol.iterations == 1);
  CHECK(sol.theta.allFinite());
}

TEST_CASE("path: degenerate single element equals a plain solve") {
  auto obj = random_objective(6, 61);
  auto path = solve_path(obj, {0.2});
  auto direct = solve(obj, 0.2);
  CHECK(path.size() == 1);
  CHECK((path[0].theta_scaled - direct.theta_scaled).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("path: warm-started values match cold starts") {
  auto obj = random_objective(8, 62);
  std::vector<double> lambdas{0.8, 0.4, 0.2, 0.1, 0.05};
  auto path = solve_path(obj, lambdas);
  for (std::size_t k = 0; k < lambdas.size(); ++k) {
    auto cold = solve(obj, lambdas[k]);
    CHECK(path[k].objective_value == doctest::Approx(cold.objective_value).epsilon(1e-8));
    CHECK(path[k].kkt_residual <= 1e-7);
  }
}

TEST_CASE("path: first lambda above the max gradient yields zero") {
  auto obj = random_objective(6, 63);
  const double lmax = obj.linear().cwiseAbs().maxCoeff();
  auto path = solve_path(obj, {lmax * 1.01, lmax * 0.5});
  CHECK(path[0].theta_scaled.cwiseAbs().maxCoeff() == 0.0);
  CHECK(path[1].theta_scaled.cwiseAbs().maxCoeff() > 0.0);
}

TEST_CASE("path rejects non-decreasing lambdas") {
  auto obj = random_objective(4, 64);
  CHECK_THROWS_AS(solve_path(obj, {0.1, 0.2}), std::invalid_argument);
}

TEST_CASE("support recovery on the toy instance with iid noise") {
  // true coordinates {0, 1, 4}; lambda in the empirically good range
  Eigen::VectorXd theta = Eigen::VectorXd::Zero(50);
  theta(0) = 3.0;
  theta(1) = 1.5;
  theta(4) = 2.0;
  const double lambda = 0.25 * std::sqrt(std::log(50.0) / 30.0);
  int hits = 0;
  for (int rep = 0; rep < 100; ++rep) {
    DesignSpec dspec{30, 50, 0.5, 1000 + static_cast<std::uint64_t>(rep)};
    Eigen::MatrixXd X = generate_design(dspec);
    Rng rng = Rng::split(2000, static_cast<std::uint64_t>(rep));
    Eigen::VectorXd eps(30);
    for (int i = 0; i < 30; ++i) eps(i) = rng.normal();
    RegressionData data{X, X * theta + eps};
    auto obj = build_regression_objective(data);
    auto sol = solve_weighted(obj, lambda, obj.column_scale());
    std::set<int> support;
    for (int j = 0; j < 50; ++j)
      if (sol.theta_scaled(j) != 0.0) support.insert(j);
    if (support.count(0) && support.count(1) && support.count(4)) ++hits;
  }
  CHECK(hits >= 90);
}
