#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sparsedep/calibration.hpp"
#include "sparsedep/density.hpp"
#include "sparsedep/dependence.hpp"
#include "sparsedep/quadform.hpp"
#include "sparsedep/repcheck.hpp"
#include "sparsedep/rng.hpp"
#include "sparsedep/solver.hpp"

namespace sparsedep {

// Configuration of the regression simulation sweep. Defaults reproduce the
// n=30, p=50 toy study with AR(1) noise levels {-0.95,-0.5,0,0.5,0.95} and
// lambda = g sqrt(log(p)/n) over a 30-point g grid.
struct ExperimentConfig {
  int n = 30;
  int p = 50;
  std::vector<double> theta_true = {3.0, 1.5, 0.0, 0.0, 2.0};  // zero-padded to p
  double rho = 0.5;
  std::vector<double> vartheta_grid = {-0.95, -0.5, 0.0, 0.5, 0.95};
  std::vector<double> g_grid;  // empty means the default grid
  int replications = 25;
  std::uint64_t seed = 20110211;
  double epsilon = 0.1;
  // One design shared by all replications instead of a fresh draw per
  // replication (both readings of "treated as fixed design" are available).
  bool shared_design = false;
  // Penalize the caller coordinates (plain LASSO on the data, the simulation
  // recipe) rather than the normalized unit-diagonal coordinates.
  bool penalty_original_coords = true;

  std::vector<double> effective_g_grid() const;
  Eigen::VectorXd padded_theta() const;
  double lambda_of_g(double g) const;  // g * sqrt(log(p)/n)
  int sparsity() const;
};

// Flat key=value config file; unknown keys are an error. Lists are
// comma-separated. Returns the parsed pairs for manifest echoing.
std::map<std::string, std::string> parse_config_file(const std::string& path);
void apply_config(ExperimentConfig& config,
                  const std::map<std::string, std::string>& kv);

struct Figure1Row {
  double vartheta = 0.0;
  double g = 0.0;
  int replication = 0;
  double error = 0.0;
  double lambda = 0.0;
  int support_size = 0;
  bool converged = true;
};

struct Figure1Curve {
  double vartheta = 0.0;
  std::vector<double> g;
  std::vector<double> mean_error;
  std::vector<double> sd_error;
};

struct ExperimentResult {
  ExperimentConfig config;
  std::vector<Figure1Row> rows;
  std::vector<Figure1Curve> curves;
  int nonconverged = 0;
};

ExperimentResult run_figure1(const ExperimentConfig& config);
void write_figure1_csv(const ExperimentResult& result, const std::string& path);

struct SvgCurve {
  std::string label;
  std::string dasharray;  // empty for a solid line
  std::vector<std::pair<double, double>> points;
};

// Standalone 800x500 SVG line chart; byte-deterministic for fixed inputs.
void emit_svg(const std::vector<SvgCurve>& curves, const std::string& x_label,
              const std::string& y_label, const std::string& path);

// Mean-error curve per vartheta with the line coding used in the study
// (solid, short dash, dotted, dot/dash, long dash).
std::vector<SvgCurve> figure1_svg_curves(const ExperimentResult& result);

enum class NoiseKind { iid_gaussian, ar1 };
enum class OracleLambdaRule { iid_theoretical, exponential_corollary, fixed };

struct OracleCheckConfig {
  int n = 30;
  int p = 50;
  std::vector<double> theta_true = {3.0, 1.5, 0.0, 0.0, 2.0};
  double rho = 0.5;
  NoiseKind noise = NoiseKind::iid_gaussian;
  double vartheta = 0.5;  // for NoiseKind::ar1
  double sigma = 1.0;
  OracleLambdaRule rule = OracleLambdaRule::iid_theoretical;
  double fixed_lambda = 0.0;
  double c_free = 1.0;  // free constant of the exponential corollary
  int replications = 200;
  double epsilon = 0.1;
  std::uint64_t seed = 20110211;
  int kappa_budget = 1000;
  bool shared_design = false;
};

struct OracleCheckRow {
  int replication = 0;
  double kappa = 0.0;
  double lambda = 0.0;
  double risk_gap = 0.0;
  double risk_bound = 0.0;
  double l1_error = 0.0;
  double l1_bound = 0.0;
  bool joint_ok = false;
  bool excluded = false;
};

struct OracleCheckReport {
  std::vector<OracleCheckRow> rows;
  int included = 0;
  int excluded_count = 0;
  double frequency = 0.0;  // of the joint oracle event among included rows
  double threshold = 0.0;  // 1 - eps - 3 SE
  double epsilon = 0.0;
  bool pass = false;
  bool lambda_validity_ok = true;  // side conditions of the corollary, when any
};

// Empirical check of the oracle-inequality conclusion: frequency of
// {risk gap <= 4 lambda^2 s / kappa and scaled l1 error <= 2 lambda s / kappa}
// with kappa measured on each realized design (inclusive subset rule, the
// variant the proof applies with J = support). Replications whose kappa is
// not positive are flagged and excluded.
OracleCheckReport run_oracle_check(const OracleCheckConfig& config);
void write_oracle_csv(const OracleCheckReport& report, const std::string& path);

void write_deviation_csv(const DeviationCheckReport& report, const std::string& path);

// Sparse-mixture density experiment (the artifact's own design: a 3-bump
// mixture whose means sit near, not on, dictionary centers, sampled iid or
// through a Gaussian-copula AR(1) chain).
struct DensityExperimentConfig {
  int n = 500;
  double center_lo = -4.0;
  double center_hi = 4.0;
  int center_count = 17;
  double width = 0.25;
  std::vector<double> mixture_means = {-2.62, 0.12, 2.38};
  std::vector<double> mixture_weights = {0.35, 0.30, 0.35};
  double mixture_sd = 0.25;
  double lambda = 0.16;
  double dependent_vartheta = 0.0;  // 0 = iid sampling
  std::uint64_t seed = 20110211;
};

struct DensityExperimentResult {
  Dictionary dict;
  Eigen::VectorXd theta_hat;   // caller coordinates
  Eigen::VectorXd theta_best;  // best-in-dictionary coefficients
  std::vector<int> support;
  std::vector<int> true_bump_indices;  // nearest center per mixture component
  bool support_contains_true_bumps = false;
  double l2_err = 0.0;
  double best_in_dict_error = 0.0;
  bool converged = true;
};

double mixture_pdf(const DensityExperimentConfig& config, double x);
Eigen::VectorXd sample_mixture(const DensityExperimentConfig& config, Rng& rng);
// Closed-form E phi_j(Z) under the mixture.
Eigen::VectorXd mixture_dictionary_means(const DensityExperimentConfig& config,
                                         const Dictionary& dict);

DensityExperimentResult run_density_experiment(const DensityExperimentConfig& config);
// Two-column (x, f(x)) CSVs for the estimate and the sampling truth.
void write_density_csvs(const DensityExperimentConfig& config,
                        const DensityExperimentResult& result,
                        const std::string& estimate_path,
                        const std::string& truth_path, int grid_points = 512);

// Resolved-configuration manifest, one key=value per line.
void write_manifest(const std::vector<std::pair<std::string, std::string>>& entries,
                    const std::string& path);
std::vector<std::pair<std::string, std::string>> config_manifest(
    const ExperimentConfig& config);

}  // namespace sparsedep
