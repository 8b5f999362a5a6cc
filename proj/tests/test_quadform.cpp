#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "sparsedep/csv.hpp"
#include "sparsedep/processes.hpp"
#include "sparsedep/quadform.hpp"
#include "sparsedep/rng.hpp"
#include "sparsedep/solver.hpp"

using namespace sparsedep;

namespace {

RegressionData random_data(int n, int p, std::uint64_t seed) {
  Rng rng(seed);
  RegressionData data;
  data.X.resize(n, p);
  data.Y.resize(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < p; ++j) data.X(i, j) = rng.normal();
    data.Y(i) = rng.normal();
  }
  return data;
}

// Direct (1/n) sum_i (Y_i - X_i'theta)^2, no canonical form involved.
double direct_regression_risk(const RegressionData& data, const Eigen::VectorXd& theta) {
  double acc = 0.0;
  for (Eigen::Index i = 0; i < data.X.rows(); ++i) {
    double pred = 0.0;
    for (Eigen::Index j = 0; j < data.X.cols(); ++j) pred += data.X(i, j) * theta(j);
    acc += (data.Y(i) - pred) * (data.Y(i) - pred);
  }
  return acc / static_cast<double>(data.X.rows());
}

}  // namespace

TEST_CASE("objective at zero equals mean squared response") {
  RegressionData data;
  data.X = Eigen::MatrixXd::Identity(2, 2);
  data.Y.resize(2);
  data.Y << 1.0, 0.0;
  auto obj = build_regression_objective(data);
  CHECK(obj.value(Eigen::VectorXd::Zero(2)) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("gram diagonal is exactly one after build") {
  auto data = random_data(20, 7, 11);
  auto obj = build_regression_objective(data);
  for (int j = 0; j < 7; ++j) CHECK(obj.gram()(j, j) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("gram matches brute-force (2/n) X'X before scaling") {
  // the n=30, p=50 simulation design
  DesignSpec dspec{30, 50, 0.5, 42};
  RegressionData data;
  data.X = generate_design(dspec);
  data.Y = Eigen::VectorXd::Ones(30);
  auto obj = build_regression_objective(data);

  const int n = 30, p = 50;
  for (int a = 0; a < p; ++a) {
    for (int b = 0; b < p; ++b) {
      double brute = 0.0;
      for (int i = 0; i < n; ++i) brute += data.X(i, a) * data.X(i, b);
      brute *= 2.0 / n;
      const double rebuilt =
          obj.gram()(a, b) / (obj.column_scale()(a) * obj.column_scale()(b));
      CHECK(rebuilt == doctest::Approx(brute).epsilon(1e-12));
    }
  }
}

TEST_CASE("zero column is rejected with its index") {
  auto data = random_data(10, 4, 3);
  data.X.col(2).setZero();
  CHECK_THROWS_WITH_AS(build_regression_objective(data),
                       doctest::Contains("column 2"), std::invalid_argument);
}

TEST_CASE("canonical evaluation equals direct evaluation") {
  auto data = random_data(25, 6, 17);
  auto obj = build_regression_objective(data);
  Rng rng(99);
  for (int trial = 0; trial < 20; ++trial) {
    Eigen::VectorXd theta(6);
    for (int j = 0; j < 6; ++j) theta(j) = 3.0 * rng.normal();
    const double direct = direct_regression_risk(data, theta);
    CHECK(obj.value(theta) == doctest::Approx(direct).epsilon(1e-9));
  }
}

TEST_CASE("risk gap identities") {
  auto data = random_data(40, 5, 7);
  auto obj = build_regression_objective(data);
  Eigen::VectorXd v = Eigen::VectorXd::Constant(5, 0.7);
  CHECK(evaluate_risk_gap(obj, v, v) == doctest::Approx(0.0));

  // M = identity: v'(M/2)v = |v|^2/2 exactly
  auto ident = QuadraticObjective::from_canonical(Eigen::MatrixXd::Identity(3, 3),
                                                  Eigen::VectorXd::Zero(3), 0.0);
  Eigen::VectorXd w(3);
  w << 1.0, 1.0, 0.0;
  CHECK(evaluate_risk_gap(ident, w, Eigen::VectorXd::Zero(3)) == doctest::Approx(1.0));

  CHECK_THROWS_AS(evaluate_risk_gap(obj, Eigen::VectorXd::Zero(4), Eigen::VectorXd::Zero(5)),
                  std::invalid_argument);
}

TEST_CASE("risk gap matches the brute-force double loop") {
  Rng rng(5);
  Eigen::MatrixXd A(6, 4);
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 4; ++j) A(i, j) = rng.normal();
  Eigen::MatrixXd M = A.transpose() * A + 0.1 * Eigen::MatrixXd::Identity(4, 4);
  auto obj = QuadraticObjective::from_canonical(M, Eigen::VectorXd::Zero(4), 0.0);

  for (int trial = 0; trial < 10; ++trial) {
    Eigen::VectorXd hat(4), bar(4);
    for (int j = 0; j < 4; ++j) {
      hat(j) = rng.normal();
      bar(j) = rng.normal();
    }
    // brute force in the scaled coordinates the gap is defined over
    Eigen::VectorXd v = obj.to_scaled(hat) - obj.to_scaled(bar);
    double brute = 0.0;
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) brute += v(a) * obj.gram()(a, b) * v(b);
    brute /= 2.0;
    CHECK(evaluate_risk_gap(obj, hat, bar) == doctest::Approx(brute).epsilon(1e-12));
    CHECK(evaluate_risk_gap(obj, hat, bar) >= -1e-9);
  }
}

TEST_CASE("quadratic exactness: no higher-order terms") {
  auto data = random_data(15, 5, 23);
  auto obj = build_regression_objective(data);
  Rng rng(31);
  for (int trial = 0; trial < 25; ++trial) {
    Eigen::VectorXd u(5), ubar(5);
    for (int j = 0; j < 5; ++j) {
      u(j) = 2.0 * rng.normal();
      ubar(j) = 2.0 * rng.normal();
    }
    const Eigen::VectorXd d = u - ubar;
    const double lhs = obj.value_scaled(u) - obj.value_scaled(ubar);
    const double rhs = obj.gradient_scaled(ubar).dot(d) + 0.5 * d.dot(obj.gram() * d);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-9));
  }
}

TEST_CASE("rescaling round trip: column scaling does not change the problem") {
  auto data = random_data(30, 8, 57);
  auto obj = build_regression_objective(data);
  const double lambda = 0.3;
  auto sol = solve(obj, lambda);

  // Rescale the design columns arbitrarily; normalization absorbs it, so the
  // residuals (and the scaled solution) must be unchanged.
  RegressionData scaled = data;
  Eigen::VectorXd d(8);
  Rng rng(7);
  for (int j = 0; j < 8; ++j) d(j) = std::exp(rng.normal());
  scaled.X = data.X * d.asDiagonal();
  auto obj2 = build_regression_objective(scaled);
  auto sol2 = solve(obj2, lambda);

  const Eigen::VectorXd res1 = data.Y - data.X * sol.theta;
  const Eigen::VectorXd res2 = scaled.Y - scaled.X * sol2.theta;
  CHECK((res1 - res2).cwiseAbs().maxCoeff() < 1e-10);
  CHECK((sol.theta_scaled - sol2.theta_scaled).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("weighted penalty equals solving the rescaled problem") {
  auto data = random_data(30, 6, 77);
  auto obj = build_regression_objective(data);
  Eigen::VectorXd w(6);
  Rng rng(8);
  for (int j = 0; j < 6; ++j) w(j) = 0.5 + rng.uniform();
  const double lambda = 0.4;
  auto weighted = solve_weighted(obj, lambda, w);

  // Substituting z = W u turns the weighted problem into a plain-l1 problem
  // in z. Its objective re-normalizes to unit diagonal with column scale w,
  // so penalizing z's caller coordinates needs weights equal to that scale.
  Eigen::MatrixXd Winv = w.cwiseInverse().asDiagonal();
  Eigen::MatrixXd G2 = Winv * obj.gram() * Winv;
  auto obj2 = QuadraticObjective::from_canonical(G2, Winv * obj.linear(), obj.constant());
  auto plain = solve_weighted(obj2, lambda, obj2.column_scale());
  const Eigen::VectorXd z = plain.theta;  // caller coordinates of obj2 are z = W u
  CHECK((weighted.theta_scaled - z.cwiseQuotient(w)).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("regression CSV reader handles headers and rejects garbage") {
  const char* path = "quadform_test_data.csv";
  {
    std::ofstream out(path);
    out << "y,x1,x2\n1.5,2.0,3.0\n-0.5,0.25,1e-3\n";
  }
  auto data = read_regression_csv(path);
  CHECK(data.Y.size() == 2);
  CHECK(data.X.rows() == 2);
  CHECK(data.X.cols() == 2);
  CHECK(data.Y(0) == doctest::Approx(1.5));
  CHECK(data.X(1, 1) == doctest::Approx(1e-3));
  std::remove(path);

  {
    std::ofstream out(path);
    out << "1.0,2.0\nbad,3.0\n";
  }
  CHECK_THROWS_AS(read_regression_csv(path), std::runtime_error);
  std::remove(path);
}
