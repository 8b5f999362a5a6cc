#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>

#include "sparsedep/calibration.hpp"
#include "sparsedep/csv.hpp"
#include "sparsedep/harness.hpp"
#include "sparsedep/processes.hpp"

namespace fs = std::filesystem;
using namespace sparsedep;

namespace {

std::vector<double> parse_list(const std::string& raw, const std::string& what) {
  std::vector<double> out;
  for (const auto& field : split_csv_line(raw)) {
    double v;
    if (!parse_double(field, v))
      throw CLI::ValidationError(what, "expected a comma-separated list of numbers");
    out.push_back(v);
  }
  return out;
}

std::string out_path(const std::string& dir, const std::string& name) {
  fs::create_directories(dir);
  return (fs::path(dir) / name).string();
}

void print_kv(const std::string& key, const std::string& value) {
  std::cout << key << ": " << value << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"l1-penalized estimation for dependent observations"};
  app.require_subcommand(1);

  std::uint64_t seed = 20110211;
  std::string out_dir = ".";
  std::string config_path;
  app.add_option("--seed", seed, "RNG seed shared by all replication streams");
  app.add_option("--out", out_dir, "output directory");
  app.add_option("--config", config_path, "key=value config file (flags override)");

  // ---- reproduce-figure1
  auto* fig = app.add_subcommand("reproduce-figure1",
                                 "regression sweep over the g grid with AR(1) noise");
  fig->fallthrough();
  int fig_n = 0, fig_p = 0, fig_reps = 0;
  double fig_rho = 0.0, fig_eps = 0.0;
  std::string fig_vartheta, fig_g, fig_theta, fig_penalty;
  bool fig_shared = false;
  fig->add_option("--n", fig_n, "observations");
  fig->add_option("--p", fig_p, "parameter dimension");
  fig->add_option("--rho", fig_rho, "design Toeplitz correlation");
  fig->add_option("--replications", fig_reps, "replications per vartheta");
  fig->add_option("--epsilon", fig_eps, "confidence level");
  fig->add_option("--vartheta", fig_vartheta, "comma list of AR(1) parameters");
  fig->add_option("--g-grid", fig_g, "comma list of g values");
  fig->add_option("--theta-true", fig_theta, "comma list, zero-padded to p");
  fig->add_flag("--shared-design", fig_shared, "one design shared by all replications");
  fig->add_option("--penalty", fig_penalty, "original|normalized coordinates");

  // ---- oracle-check
  auto* ora = app.add_subcommand("oracle-check",
                                 "empirical frequency of the oracle-inequality event");
  ora->fallthrough();
  std::string ora_noise = "iid", ora_rule = "iid";
  double ora_vartheta = 0.5, ora_sigma = 1.0, ora_eps = 0.1, ora_lambda = 0.0, ora_c = 1.0;
  int ora_reps = 200, ora_budget = 1000, ora_n = 0, ora_p = 0;
  ora->add_option("--noise", ora_noise, "iid|ar1");
  ora->add_option("--vartheta", ora_vartheta, "AR(1) parameter");
  ora->add_option("--sigma", ora_sigma, "iid noise level");
  ora->add_option("--rule", ora_rule, "lambda rule: iid|exp|fixed");
  ora->add_option("--lambda", ora_lambda, "lambda for rule=fixed");
  ora->add_option("--c", ora_c, "free constant of the exponential corollary");
  ora->add_option("--replications", ora_reps, "replications");
  ora->add_option("--epsilon", ora_eps, "confidence level");
  ora->add_option("--kappa-budget", ora_budget, "random directions for the REP search");
  ora->add_option("--n", ora_n, "observations");
  ora->add_option("--p", ora_p, "parameter dimension");

  // ---- deviation-check
  auto* dev = app.add_subcommand("deviation-check",
                                 "Monte Carlo check of the deviation condition");
  dev->fallthrough();
  std::string dev_process = "iid", dev_profile = "gaussian", dev_t = "1,2,3";
  double dev_vartheta = 0.5, dev_beta = 0.4, dev_sigma = 1.0, dev_psigma = 1.0,
         dev_pB = 1.0, dev_alpha = 0.0;
  int dev_n = 256, dev_reps = 2000;
  dev->add_option("--process", dev_process, "iid|ar1|longmem|hermite");
  dev->add_option("--vartheta", dev_vartheta, "AR(1) parameter");
  dev->add_option("--beta", dev_beta, "long-memory decay exponent");
  dev->add_option("--sigma", dev_sigma, "iid scale");
  dev->add_option("--profile", dev_profile, "gaussian|hoeffding");
  dev->add_option("--profile-sigma", dev_psigma, "gaussian profile sigma");
  dev->add_option("--profile-B", dev_pB, "hoeffding profile bound");
  dev->add_option("--alpha", dev_alpha, "deviation exponent alpha in [0,1/2]");
  dev->add_option("--n", dev_n, "series length");
  dev->add_option("--reps", dev_reps, "Monte Carlo replications (>= 1000)");
  dev->add_option("--t", dev_t, "comma list of t values");

  // ---- calibrate
  auto* cal = app.add_subcommand("calibrate", "theoretical lambda of a corollary");
  cal->fallthrough();
  std::string cal_which = "iid-regression", cal_csv;
  double cal_sigma = 1.0, cal_C = 1.0, cal_maxX = 1.0, cal_K = 1.0, cal_M = 1.0,
         cal_L1 = 1.0, cal_L2 = 1.0, cal_mu = 0.0, cal_psi11 = 2.0, cal_c = 1.0,
         cal_B = 1.0, cal_L = 1.0, cal_eps = 0.1, cal_kappa = 0.0;
  int cal_q = 1, cal_n = 30, cal_p = 50, cal_s = 0;
  cal->add_option("--corollary", cal_which,
                  "iid-regression|mz-regression|exp-regression|density-iid|density-dep");
  cal->add_option("--sigma", cal_sigma, "noise level (iid regression)");
  cal->add_option("--C", cal_C, "moment-bound constant");
  cal->add_option("--q", cal_q, "moment order parameter (even moment 2q)");
  cal->add_option("--maxX", cal_maxX, "max absolute design entry");
  cal->add_option("--K", cal_K, "covariance constant K");
  cal->add_option("--M", cal_M, "sup bound M");
  cal->add_option("--L1", cal_L1, "summability constant L1");
  cal->add_option("--L2", cal_L2, "summability constant L2");
  cal->add_option("--mu", cal_mu, "summability exponent mu");
  cal->add_option("--psi11", cal_psi11, "Psi(1,1) of the covariance shape");
  cal->add_option("--c", cal_c, "free range constant");
  cal->add_option("--B", cal_B, "dictionary sup bound");
  cal->add_option("--L", cal_L, "dictionary Lipschitz constant");
  cal->add_option("--n", cal_n, "observations");
  cal->add_option("--p", cal_p, "dimension");
  cal->add_option("--epsilon", cal_eps, "confidence level");
  cal->add_option("--s", cal_s, "sparsity for oracle bounds");
  cal->add_option("--kappa", cal_kappa, "restricted eigenvalue for oracle bounds");
  cal->add_option("--csv", cal_csv, "append a CSV row to this file");

  // ---- rep-check
  auto* rep = app.add_subcommand("rep-check", "restricted-eigenvalue constant of a Gram CSV");
  rep->fallthrough();
  std::string rep_gram, rep_method = "auto";
  int rep_s = 2, rep_budget = 2000;
  bool rep_inclusive = false;
  rep->add_option("--gram", rep_gram, "CSV file with the Gram matrix")->required();
  rep->add_option("--s", rep_s, "sparsity bound");
  rep->add_flag("--inclusive", rep_inclusive, "use |J| <= s instead of |J| < s");
  rep->add_option("--method", rep_method, "auto|exact|randomized");
  rep->add_option("--budget", rep_budget, "random directions (randomized method)");

  // ---- simulate-density
  auto* den = app.add_subcommand("simulate-density",
                                 "sparse mixture estimation with the bump dictionary");
  den->fallthrough();
  int den_n = 500;
  double den_lambda = 0.0, den_vartheta = 0.0;
  den->add_option("--n", den_n, "sample size");
  den->add_option("--lambda", den_lambda, "penalty level (0 = experiment default)");
  den->add_option("--vartheta", den_vartheta,
                  "Gaussian-copula AR(1) parameter (0 = iid sampling)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (fig->parsed()) {
      ExperimentConfig config;
      config.seed = seed;
      if (!config_path.empty()) apply_config(config, parse_config_file(config_path));
      if (fig->count("--n")) config.n = fig_n;
      if (fig->count("--p")) config.p = fig_p;
      if (fig->count("--rho")) config.rho = fig_rho;
      if (fig->count("--replications")) config.replications = fig_reps;
      if (fig->count("--epsilon")) config.epsilon = fig_eps;
      if (fig->count("--vartheta")) config.vartheta_grid = parse_list(fig_vartheta, "--vartheta");
      if (fig->count("--g-grid")) config.g_grid = parse_list(fig_g, "--g-grid");
      if (fig->count("--theta-true")) config.theta_true = parse_list(fig_theta, "--theta-true");
      if (fig->count("--shared-design")) config.shared_design = fig_shared;
      if (fig->count("--penalty")) config.penalty_original_coords = fig_penalty == "original";
      if (app.count("--seed")) config.seed = seed;

      ExperimentResult result = run_figure1(config);
      write_figure1_csv(result, out_path(out_dir, "figure1.csv"));
      emit_svg(figure1_svg_curves(result), "g", "reconstruction error",
               out_path(out_dir, "figure1.svg"));
      write_manifest(config_manifest(config), out_path(out_dir, "manifest.txt"));
      for (const auto& curve : result.curves) {
        std::size_t arg = 0;
        for (std::size_t k = 1; k < curve.mean_error.size(); ++k)
          if (curve.mean_error[k] < curve.mean_error[arg]) arg = k;
        std::cout << "vartheta=" << curve.vartheta << ": min mean error "
                  << curve.mean_error[arg] << " at g=" << curve.g[arg]
                  << " (lambda=" << config.lambda_of_g(curve.g[arg]) << ")\n";
      }
      if (result.nonconverged > 0)
        std::cout << "warning: " << result.nonconverged << " non-converged solves\n";
      std::cout << "wrote figure1.csv, figure1.svg, manifest.txt in " << out_dir << "\n";
    } else if (ora->parsed()) {
      OracleCheckConfig config;
      config.seed = seed;
      if (!config_path.empty()) {
        ExperimentConfig base;
        apply_config(base, parse_config_file(config_path));
        config.n = base.n;
        config.p = base.p;
        config.rho = base.rho;
        config.theta_true = base.theta_true;
        config.epsilon = base.epsilon;
        config.seed = base.seed;
      }
      if (ora->count("--n")) config.n = ora_n;
      if (ora->count("--p")) config.p = ora_p;
      if (app.count("--seed")) config.seed = seed;
      config.noise = ora_noise == "ar1" ? NoiseKind::ar1 : NoiseKind::iid_gaussian;
      config.vartheta = ora_vartheta;
      config.sigma = ora_sigma;
      config.replications = ora_reps;
      config.epsilon = ora_eps;
      config.kappa_budget = ora_budget;
      config.c_free = ora_c;
      if (ora_rule == "iid")
        config.rule = OracleLambdaRule::iid_theoretical;
      else if (ora_rule == "exp")
        config.rule = OracleLambdaRule::exponential_corollary;
      else if (ora_rule == "fixed") {
        config.rule = OracleLambdaRule::fixed;
        config.fixed_lambda = ora_lambda;
      } else {
        throw CLI::ValidationError("--rule", "must be iid, exp or fixed");
      }

      OracleCheckReport report = run_oracle_check(config);
      write_oracle_csv(report, out_path(out_dir, "oracle_check.csv"));
      write_manifest({{"noise", ora_noise},
                      {"vartheta", format_double(config.vartheta)},
                      {"sigma", format_double(config.sigma)},
                      {"rule", ora_rule},
                      {"replications", std::to_string(config.replications)},
                      {"epsilon", format_double(config.epsilon)},
                      {"kappa_budget", std::to_string(config.kappa_budget)},
                      {"n", std::to_string(config.n)},
                      {"p", std::to_string(config.p)},
                      {"seed", std::to_string(config.seed)}},
                     out_path(out_dir, "manifest.txt"));
      print_kv("joint event frequency", format_double(report.frequency));
      print_kv("pass threshold (1-eps-3SE)", format_double(report.threshold));
      print_kv("excluded replications", std::to_string(report.excluded_count));
      if (!report.lambda_validity_ok)
        std::cout << "note: corollary side condition fails at this (n, p, epsilon)\n";
      print_kv("result", report.pass ? "PASS" : "FAIL");
    } else if (dev->parsed()) {
      const auto t_grid = parse_list(dev_t, "--t");
      DeviationProfile profile =
          dev_profile == "hoeffding"
              ? DeviationProfile::bounded_hoeffding(dev_pB)
              : DeviationProfile::gaussian(dev_psigma, dev_alpha);

      std::function<Eigen::MatrixXd(std::uint64_t)> sampler;
      if (dev_process == "iid") {
        sampler = [=](std::uint64_t rep) {
          Rng rng = Rng::split(seed, rep);
          Eigen::MatrixXd W(dev_n, 1);
          for (int i = 0; i < dev_n; ++i) W(i, 0) = dev_sigma * rng.normal();
          return W;
        };
      } else if (dev_process == "ar1") {
        sampler = [=](std::uint64_t rep) {
          Rng rng = Rng::split(seed, rep);
          const double t = dev_vartheta;
          const double innovation_sd = std::sqrt(1.0 - t * t);
          Eigen::MatrixXd W(dev_n, 1);
          W(0, 0) = rng.normal();
          for (int i = 1; i < dev_n; ++i)
            W(i, 0) = t * W(i - 1, 0) + innovation_sd * rng.normal();
          return W;
        };
      } else if (dev_process == "longmem" || dev_process == "hermite") {
        auto fgn = std::make_shared<FgnSampler>(dev_beta, dev_n);
        const bool hermite = dev_process == "hermite";
        sampler = [=](std::uint64_t rep) {
          Rng rng = Rng::split(seed, rep);
          Eigen::VectorXd g = fgn->sample(rng);
          if (hermite) g = hermite2_transform(g);
          return Eigen::MatrixXd(g);
        };
      } else {
        throw CLI::ValidationError("--process", "must be iid, ar1, longmem or hermite");
      }

      DeviationCheckReport report =
          check_deviation_condition(sampler, profile, t_grid, dev_n, dev_reps);
      write_deviation_csv(report, out_path(out_dir, "deviation_check.csv"));
      std::cout << report.summary() << "\n";
      for (const auto& row : report.rows)
        std::cout << "  j=" << row.j << " t=" << row.t << " freq=" << row.frequency
                  << " psi=" << row.psi_t << (row.violation ? "  VIOLATION" : "") << "\n";
    } else if (cal->parsed()) {
      std::optional<int> s_opt;
      std::optional<double> kappa_opt;
      if (cal->count("--s")) s_opt = cal_s;
      if (cal->count("--kappa")) kappa_opt = cal_kappa;
      CalibrationResult result;
      if (cal_which == "iid-regression") {
        result.lambda = lambda_iid_regression(cal_sigma, cal_n, cal_p, cal_eps);
      } else if (cal_which == "mz-regression") {
        result.lambda = lambda_mz_regression(cal_C, cal_q, cal_maxX, cal_n, cal_p, cal_eps);
      } else if (cal_which == "exp-regression") {
        result = lambda_exp_regression(cal_K, cal_M, cal_L1, cal_L2, cal_mu, cal_maxX,
                                       cal_psi11, cal_c, cal_n, cal_p, cal_eps, s_opt,
                                       kappa_opt);
      } else if (cal_which == "density-iid") {
        result.lambda = lambda_iid_density(cal_B, cal_n, cal_p, cal_eps);
      } else if (cal_which == "density-dep") {
        result = lambda_density(cal_B, cal_L, cal_L1, cal_L2, cal_mu, cal_c, cal_n, cal_p,
                                cal_eps, s_opt, kappa_opt);
      } else {
        throw CLI::ValidationError("--corollary", "unknown corollary " + cal_which);
      }
      if (s_opt && kappa_opt && !result.risk_bound) {
        auto [risk, l1] = oracle_bounds(result.lambda, *s_opt, *kappa_opt);
        result.risk_bound = risk;
        result.l1_bound = l1;
      }
      print_kv("corollary", cal_which);
      print_kv("lambda", format_double(result.lambda));
      if (result.C_cal > 0.0) print_kv("C", format_double(result.C_cal));
      for (const auto& cond : result.validity) {
        print_kv("restriction", cond.name);
        print_kv("restriction_lhs", format_double(cond.lhs));
        print_kv("restriction_rhs", format_double(cond.rhs));
        print_kv("restriction_pass", cond.pass ? "true" : "false");
      }
      if (result.risk_bound) print_kv("risk_bound", format_double(*result.risk_bound));
      if (result.l1_bound) print_kv("l1_bound", format_double(*result.l1_bound));
      if (!cal_csv.empty()) {
        std::ofstream csv(cal_csv, std::ios::app);
        csv << join_csv({cal_which, format_double(result.lambda),
                         format_double(result.C_cal),
                         result.valid() ? "1" : "0"})
            << "\n";
      }
    } else if (rep->parsed()) {
      const Eigen::MatrixXd M = read_matrix_csv(rep_gram);
      RepOptions opts;
      opts.inclusive = rep_inclusive;
      RepEstimate estimate;
      const bool small = M.rows() <= 12;
      if (rep_method == "exact" || (rep_method == "auto" && small))
        estimate = rep_exact(M, rep_s, opts);
      else
        estimate = rep_randomized(M, rep_s, rep_budget, seed, opts);
      print_kv("kappa", format_double(estimate.kappa));
      print_kv("method",
               estimate.method == RepEstimate::Method::exact ? "exact" : "randomized");
      std::string J;
      for (std::size_t i = 0; i < estimate.certificate_J.size(); ++i)
        J += (i ? "," : "") + std::to_string(estimate.certificate_J[i]);
      print_kv("certificate_J", J);
      std::string v;
      for (Eigen::Index i = 0; i < estimate.certificate_v.size(); ++i)
        v += (i ? "," : "") + format_double(estimate.certificate_v(i));
      print_kv("certificate_v", v);
    } else if (den->parsed()) {
      DensityExperimentConfig config;
      config.seed = seed;
      config.n = den_n;
      config.dependent_vartheta = den_vartheta;
      if (den->count("--lambda")) config.lambda = den_lambda;
      DensityExperimentResult result = run_density_experiment(config);
      write_density_csvs(config, result, out_path(out_dir, "density_estimate.csv"),
                         out_path(out_dir, "density_truth.csv"));
      write_manifest({{"n", std::to_string(config.n)},
                      {"lambda", format_double(config.lambda)},
                      {"dependent_vartheta", format_double(config.dependent_vartheta)},
                      {"centers", std::to_string(config.center_count)},
                      {"width", format_double(config.width)},
                      {"mixture_sd", format_double(config.mixture_sd)},
                      {"seed", std::to_string(config.seed)},
                      {"note", "simulation design is an artifact choice"}},
                     out_path(out_dir, "manifest.txt"));
      std::string support;
      for (std::size_t i = 0; i < result.support.size(); ++i)
        support += (i ? "," : "") + std::to_string(result.support[i]);
      print_kv("support", support.empty() ? "(empty)" : support);
      print_kv("support_size", std::to_string(result.support.size()));
      print_kv("contains_true_bumps", result.support_contains_true_bumps ? "true" : "false");
      print_kv("l2_error", format_double(result.l2_err));
      print_kv("best_in_dictionary_error", format_double(result.best_in_dict_error));
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
