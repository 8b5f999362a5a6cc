#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "sparsedep/csv.hpp"
#include "sparsedep/harness.hpp"
#include "sparsedep/processes.hpp"
#include "sparsedep/solver.hpp"

using namespace sparsedep;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ExperimentConfig small_config() {
  ExperimentConfig config;
  config.vartheta_grid = {0.0, 0.5};
  config.g_grid = {0.1, 0.2, 0.4, 0.8};
  config.replications = 3;
  config.seed = 777;
  return config;
}

}  // namespace

TEST_CASE("lambda grid mapping matches the quoted scalar") {
  ExperimentConfig config;
  CHECK(config.lambda_of_g(0.2) == doctest::Approx(0.0722).epsilon(0.0005 / 0.0722));
  CHECK(config.effective_g_grid().size() == 30);
  CHECK(config.effective_g_grid().front() == doctest::Approx(0.02));
  CHECK(config.effective_g_grid().back() == doctest::Approx(1.5));
}

TEST_CASE("config files parse, apply and reject unknown keys") {
  const char* path = "harness_test_config.txt";
  {
    std::ofstream out(path);
    out << "# comment\n";
    out << "n = 12\n";
    out << "p=9\n";
    out << "vartheta = 0.1, -0.2\n";
    out << "theta_true = 1, 0, 2\n";
    out << "penalty = normalized\n";
    out << "shared_design = true\n";
  }
  ExperimentConfig config;
  apply_config(config, parse_config_file(path));
  CHECK(config.n == 12);
  CHECK(config.p == 9);
  CHECK(config.vartheta_grid == std::vector<double>{0.1, -0.2});
  CHECK(config.theta_true == std::vector<double>{1.0, 0.0, 2.0});
  CHECK_FALSE(config.penalty_original_coords);
  CHECK(config.shared_design);
  std::remove(path);

  {
    std::ofstream out(path);
    out << "bogus_key = 3\n";
  }
  ExperimentConfig other;
  CHECK_THROWS_AS(apply_config(other, parse_config_file(path)), std::runtime_error);
  std::remove(path);
}

TEST_CASE("figure1 runs are reproducible byte for byte") {
  const auto config = small_config();
  const auto r1 = run_figure1(config);
  const auto r2 = run_figure1(config);
  write_figure1_csv(r1, "fig_a.csv");
  write_figure1_csv(r2, "fig_b.csv");
  CHECK(slurp("fig_a.csv") == slurp("fig_b.csv"));
  emit_svg(figure1_svg_curves(r1), "g", "reconstruction error", "fig_a.svg");
  emit_svg(figure1_svg_curves(r2), "g", "reconstruction error", "fig_b.svg");
  CHECK(slurp("fig_a.svg") == slurp("fig_b.svg"));
  std::remove("fig_a.csv");
  std::remove("fig_b.csv");
  std::remove("fig_a.svg");
  std::remove("fig_b.svg");
}

TEST_CASE("figure1 aggregates recompute from the raw rows") {
  const auto config = small_config();
  const auto result = run_figure1(config);
  for (const auto& curve : result.curves) {
    for (std::size_t k = 0; k < curve.g.size(); ++k) {
      double mean = 0.0;
      int count = 0;
      for (const auto& row : result.rows) {
        if (row.vartheta == curve.vartheta && row.g == curve.g[k]) {
          mean += row.error;
          ++count;
        }
      }
      REQUIRE(count == config.replications);
      mean /= count;
      CHECK(curve.mean_error[k] == doctest::Approx(mean).epsilon(1e-12));
    }
  }
}

TEST_CASE("vartheta zero column equals an iid run with the same seeds") {
  // AR(1) with vartheta = 0 feeds the identical noise stream, so the rows
  // for vartheta 0 do not depend on the other grid entries.
  ExperimentConfig a = small_config();
  a.vartheta_grid = {0.0};
  ExperimentConfig b = small_config();
  b.vartheta_grid = {0.0, 0.9};
  const auto ra = run_figure1(a);
  const auto rb = run_figure1(b);
  for (std::size_t i = 0; i < ra.rows.size(); ++i) {
    CHECK(ra.rows[i].error == rb.rows[i].error);
    CHECK(ra.rows[i].g == rb.rows[i].g);
  }
}

TEST_CASE("shared design reuses one design across replications") {
  ExperimentConfig config = small_config();
  config.shared_design = true;
  config.vartheta_grid = {0.3};
  config.g_grid = {0.5};
  config.replications = 2;
  const auto result = run_figure1(config);
  // same design, same g: only the noise differs; errors must differ while a
  // re-run with fresh designs (shared_design=false) must change the values
  CHECK(result.rows[0].error != result.rows[1].error);
  ExperimentConfig fresh = config;
  fresh.shared_design = false;
  const auto result2 = run_figure1(fresh);
  CHECK(result.rows[0].error != result2.rows[0].error);
}

TEST_CASE("svg output is well-formed and handles flat curves") {
  SvgCurve flat;
  flat.label = "flat";
  for (int i = 0; i <= 10; ++i) flat.points.emplace_back(0.1 * i, 1.0);
  emit_svg({flat}, "x", "y", "flat.svg");
  const std::string svg = slurp("flat.svg");
  CHECK(svg.rfind("<?xml", 0) == 0);
  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(svg.find("</svg>") != std::string::npos);
  // constant y pixel coordinate on the polyline
  const auto pos = svg.find("points=\"");
  REQUIRE(pos != std::string::npos);
  const auto end = svg.find('"', pos + 8);
  std::string pts = svg.substr(pos + 8, end - pos - 8);
  std::set<std::string> ys;
  std::stringstream ss(pts);
  std::string pair;
  while (std::getline(ss, pair, ' ')) ys.insert(pair.substr(pair.find(',') + 1));
  CHECK(ys.size() == 1);
  std::remove("flat.svg");

  CHECK_THROWS_AS(emit_svg({}, "x", "y", "none.svg"), std::invalid_argument);
  SvgCurve bad;
  bad.label = "bad";
  bad.points.emplace_back(0.0, std::nan(""));
  CHECK_THROWS_AS(emit_svg({bad}, "x", "y", "none.svg"), std::invalid_argument);
}

TEST_CASE("negative control: shuffling Y destroys support recovery") {
  const int n = 30, p = 50;
  Eigen::VectorXd theta = Eigen::VectorXd::Zero(p);
  theta(0) = 3.0;
  theta(1) = 1.5;
  theta(4) = 2.0;
  const std::set<int> truth = {0, 1, 4};
  double jaccard_sum = 0.0;
  int runs = 0;
  for (int rep = 0; rep < 20; ++rep) {
    DesignSpec dspec{n, p, 0.5, 8000 + static_cast<std::uint64_t>(rep)};
    const Eigen::MatrixXd X = generate_design(dspec);
    Rng rng = Rng::split(9000, static_cast<std::uint64_t>(rep));
    Eigen::VectorXd eps(n);
    for (int i = 0; i < n; ++i) eps(i) = rng.normal();
    Eigen::VectorXd Y = X * theta + eps;
    // Fisher-Yates shuffle of Y breaks the X-Y coupling
    for (int i = n - 1; i > 0; --i) {
      const int j = static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(i + 1));
      std::swap(Y(i), Y(j));
    }
    const auto obj = build_regression_objective({X, Y});
    const double lambda = 0.25 * std::sqrt(std::log(50.0) / 30.0);
    const auto sol = solve_weighted(obj, lambda, obj.column_scale());
    std::set<int> support;
    for (int j = 0; j < p; ++j)
      if (sol.theta_scaled(j) != 0.0) support.insert(j);
    std::set<int> inter, uni = truth;
    for (int j : support) {
      if (truth.count(j)) inter.insert(j);
      uni.insert(j);
    }
    jaccard_sum += uni.empty() ? 0.0 : static_cast<double>(inter.size()) / uni.size();
    ++runs;
  }
  CHECK(jaccard_sum / runs < 0.2);
}

TEST_CASE("oracle check negative control at lambda zero") {
  OracleCheckConfig config;
  config.replications = 20;
  config.rule = OracleLambdaRule::fixed;
  config.fixed_lambda = 0.0;
  config.epsilon = 0.5;
  config.seed = 31;
  const auto report = run_oracle_check(config);
  CHECK(report.included > 0);
  CHECK(report.frequency < 1.0 - config.epsilon);
  CHECK_FALSE(report.pass);
}

TEST_CASE("deviation csv round trip") {
  DeviationCheckReport report;
  report.n = 8;
  report.p = 1;
  report.reps = 1000;
  report.rows.push_back({0, 1.0, 0.25, 0.5, false});
  report.rows.push_back({0, 2.0, 0.75, 0.1, true});
  write_deviation_csv(report, "dev_test.csv");
  const std::string body = slurp("dev_test.csv");
  CHECK(body == "j,t,frequency,psi_t,violation\n0,1,0.25,0.5,0\n0,2,0.75,0.1,1\n");
  CHECK(report.any_violation());
  std::remove("dev_test.csv");
}

TEST_CASE("manifest echoes the resolved config deterministically") {
  ExperimentConfig config = small_config();
  write_manifest(config_manifest(config), "manifest_test.txt");
  const std::string body = slurp("manifest_test.txt");
  CHECK(body.find("n=30") != std::string::npos);
  CHECK(body.find("penalty=original") != std::string::npos);
  CHECK(body.find("seed=777") != std::string::npos);
  std::remove("manifest_test.txt");
}
