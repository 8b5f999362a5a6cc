#include "sparsedep/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "sparsedep/csv.hpp"
#include "sparsedep/processes.hpp"

namespace sparsedep {

namespace {

std::string fixed2(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string tick_label(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.4g", v);
  return buf;
}

std::uint64_t figure1_design_stream(const ExperimentConfig& config, int ti, int rep) {
  if (config.shared_design) return 0xD0000000000000FEULL;
  return (static_cast<std::uint64_t>(ti) << 32) | (static_cast<std::uint64_t>(rep) << 1);
}

std::uint64_t figure1_noise_stream(int ti, int rep) {
  return (static_cast<std::uint64_t>(ti) << 32) | (static_cast<std::uint64_t>(rep) << 1) | 1u;
}

Eigen::VectorXd ar1_noise(int n, double vartheta, std::uint64_t seed, std::uint64_t stream) {
  ProcessSpec spec;
  spec.kind = ProcessKind::ar1;
  spec.n = n;
  spec.vartheta = vartheta;
  // generate_ar1 derives its own substream from the seed it receives
  spec.seed = seed ^ (0x5851F42D4C957F2DULL * (stream + 1));
  return generate_ar1(spec);
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

}  // namespace

std::vector<double> ExperimentConfig::effective_g_grid() const {
  if (!g_grid.empty()) return g_grid;
  std::vector<double> grid(30);
  for (int i = 0; i < 30; ++i) grid[static_cast<std::size_t>(i)] = 0.02 + i * (1.5 - 0.02) / 29.0;
  return grid;
}

Eigen::VectorXd ExperimentConfig::padded_theta() const {
  if (static_cast<int>(theta_true.size()) > p)
    throw std::invalid_argument("config: theta_true longer than p");
  Eigen::VectorXd theta = Eigen::VectorXd::Zero(p);
  for (std::size_t j = 0; j < theta_true.size(); ++j)
    theta(static_cast<Eigen::Index>(j)) = theta_true[j];
  return theta;
}

double ExperimentConfig::lambda_of_g(double g) const {
  return g * std::sqrt(std::log(static_cast<double>(p)) / static_cast<double>(n));
}

int ExperimentConfig::sparsity() const {
  int s = 0;
  for (double v : theta_true) s += v != 0.0 ? 1 : 0;
  return s;
}

std::map<std::string, std::string> parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  std::map<std::string, std::string> kv;
  std::string line;
  while (std::getline(in, line)) {
    std::size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::size_t a = line.find_first_not_of(" \t\r");
    if (a == std::string::npos) continue;
    std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("config line is not key=value: " + line);
    auto trim = [](std::string s) {
      std::size_t x = s.find_first_not_of(" \t\r");
      std::size_t y = s.find_last_not_of(" \t\r");
      return x == std::string::npos ? std::string() : s.substr(x, y - x + 1);
    };
    kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return kv;
}

namespace {

std::vector<double> parse_double_list(const std::string& value, const std::string& key) {
  std::vector<double> out;
  for (const auto& field : split_csv_line(value)) {
    double v;
    if (!parse_double(field, v))
      throw std::runtime_error("config: bad number in " + key + ": " + field);
    out.push_back(v);
  }
  return out;
}

}  // namespace

void apply_config(ExperimentConfig& config, const std::map<std::string, std::string>& kv) {
  for (const auto& [key, value] : kv) {
    double num = 0.0;
    if (key == "n" || key == "p" || key == "replications" || key == "seed") {
      if (!parse_double(value, num) || num < 0)
        throw std::runtime_error("config: bad value for " + key);
      if (key == "n") config.n = static_cast<int>(num);
      if (key == "p") config.p = static_cast<int>(num);
      if (key == "replications") config.replications = static_cast<int>(num);
      if (key == "seed") config.seed = static_cast<std::uint64_t>(num);
    } else if (key == "rho" || key == "epsilon") {
      if (!parse_double(value, num)) throw std::runtime_error("config: bad value for " + key);
      (key == "rho" ? config.rho : config.epsilon) = num;
    } else if (key == "theta_true") {
      config.theta_true = parse_double_list(value, key);
    } else if (key == "vartheta") {
      config.vartheta_grid = parse_double_list(value, key);
    } else if (key == "g_grid") {
      config.g_grid = parse_double_list(value, key);
    } else if (key == "shared_design") {
      config.shared_design = value == "1" || value == "true";
    } else if (key == "penalty") {
      if (value == "original")
        config.penalty_original_coords = true;
      else if (value == "normalized")
        config.penalty_original_coords = false;
      else
        throw std::runtime_error("config: penalty must be original or normalized");
    } else {
      throw std::runtime_error("config: unknown key " + key);
    }
  }
}

ExperimentResult run_figure1(const ExperimentConfig& config) {
  const auto g_values = config.effective_g_grid();
  for (double g : g_values)
    if (!(g > 0.0)) throw std::invalid_argument("figure1: g grid must be positive");
  if (config.replications < 1)
    throw std::invalid_argument("figure1: replications must be >= 1");
  const Eigen::VectorXd theta = config.padded_theta();

  // Path over strictly decreasing lambda (largest g first), warm-started.
  std::vector<std::size_t> order(g_values.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return g_values[a] > g_values[b]; });
  std::vector<double> lambdas;
  for (std::size_t idx : order) lambdas.push_back(config.lambda_of_g(g_values[idx]));

  ExperimentResult result;
  result.config = config;

  for (std::size_t ti = 0; ti < config.vartheta_grid.size(); ++ti) {
    const double vartheta = config.vartheta_grid[ti];
    std::vector<std::vector<double>> errors(g_values.size());
    for (int rep = 0; rep < config.replications; ++rep) {
      DesignSpec dspec;
      dspec.n = config.n;
      dspec.p = config.p;
      dspec.rho = config.rho;
      dspec.seed = config.seed ^
                   (0x9E3779B97F4A7C15ULL *
                    (figure1_design_stream(config, static_cast<int>(ti), rep) + 1));
      const Eigen::MatrixXd X = generate_design(dspec);
      const Eigen::VectorXd eps =
          ar1_noise(config.n, vartheta, config.seed,
                    figure1_noise_stream(static_cast<int>(ti), rep));
      const Eigen::VectorXd Y = X * theta + eps;

      const QuadraticObjective obj = build_regression_objective({X, Y});
      const Eigen::VectorXd weights = config.penalty_original_coords
                                          ? obj.column_scale()
                                          : Eigen::VectorXd::Ones(config.p);
      const auto path = solve_path(obj, lambdas, {}, &weights);

      for (std::size_t k = 0; k < order.size(); ++k) {
        const auto& sol = path[k];
        Figure1Row row;
        row.vartheta = vartheta;
        row.g = g_values[order[k]];
        row.replication = rep;
        row.lambda = sol.lambda;
        row.error = (X * (sol.theta - theta)).squaredNorm();
        row.support_size = sol.support_size();
        row.converged = sol.converged;
        if (!sol.converged) ++result.nonconverged;
        result.rows.push_back(row);
        errors[order[k]].push_back(row.error);
      }
    }

    Figure1Curve curve;
    curve.vartheta = vartheta;
    for (std::size_t gi = 0; gi < g_values.size(); ++gi) {
      const auto& cell = errors[gi];
      double mean = 0.0;
      for (double e : cell) mean += e;
      mean /= static_cast<double>(cell.size());
      double var = 0.0;
      for (double e : cell) var += (e - mean) * (e - mean);
      var = cell.size() > 1 ? var / static_cast<double>(cell.size() - 1) : 0.0;
      curve.g.push_back(g_values[gi]);
      curve.mean_error.push_back(mean);
      curve.sd_error.push_back(std::sqrt(var));
    }
    result.curves.push_back(std::move(curve));
  }

  // Rows were appended path-major; order them (vartheta, g, replication).
  std::stable_sort(result.rows.begin(), result.rows.end(),
                   [](const Figure1Row& a, const Figure1Row& b) {
                     if (a.vartheta != b.vartheta) return a.vartheta < b.vartheta;
                     if (a.g != b.g) return a.g < b.g;
                     return a.replication < b.replication;
                   });
  return result;
}

void write_figure1_csv(const ExperimentResult& result, const std::string& path) {
  std::vector<std::string> lines;
  lines.push_back("vartheta,g,replication,error,lambda,support_size");
  for (const auto& row : result.rows) {
    lines.push_back(join_csv({format_double(row.vartheta), format_double(row.g),
                              std::to_string(row.replication), format_double(row.error),
                              format_double(row.lambda),
                              std::to_string(row.support_size)}));
  }
  write_lines(path, lines);
}

void emit_svg(const std::vector<SvgCurve>& curves, const std::string& x_label,
              const std::string& y_label, const std::string& path) {
  if (curves.empty()) throw std::invalid_argument("emit_svg: no curves");
  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
  double ymin = xmin, ymax = -xmin;
  for (const auto& c : curves) {
    if (c.points.empty()) throw std::invalid_argument("emit_svg: empty curve");
    for (const auto& [x, y] : c.points) {
      if (!std::isfinite(x) || !std::isfinite(y))
        throw std::invalid_argument("emit_svg: non-finite point");
      xmin = std::min(xmin, x);
      xmax = std::max(xmax, x);
      ymin = std::min(ymin, y);
      ymax = std::max(ymax, y);
    }
  }
  if (xmax == xmin) {
    xmin -= 1.0;
    xmax += 1.0;
  }
  if (ymax == ymin) {
    ymin -= 1.0;
    ymax += 1.0;
  }
  const double pad = 0.05 * (ymax - ymin);
  ymin = std::min(ymin, 0.0);
  ymax += pad;

  const double W = 800, H = 500, L = 70, R = 780, T = 20, B = 445;
  auto px = [&](double x) { return L + (x - xmin) / (xmax - xmin) * (R - L); };
  auto py = [&](double y) { return B - (y - ymin) / (ymax - ymin) * (B - T); };

  std::vector<std::string> out;
  out.push_back("<?xml version=\"1.0\" encoding=\"UTF-8\"?>");
  out.push_back("<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fixed2(W) +
                "\" height=\"" + fixed2(H) + "\" viewBox=\"0 0 800 500\">");
  out.push_back("<rect x=\"0\" y=\"0\" width=\"800\" height=\"500\" fill=\"white\"/>");
  out.push_back("<line x1=\"" + fixed2(L) + "\" y1=\"" + fixed2(B) + "\" x2=\"" + fixed2(R) +
                "\" y2=\"" + fixed2(B) + "\" stroke=\"black\" stroke-width=\"1\"/>");
  out.push_back("<line x1=\"" + fixed2(L) + "\" y1=\"" + fixed2(T) + "\" x2=\"" + fixed2(L) +
                "\" y2=\"" + fixed2(B) + "\" stroke=\"black\" stroke-width=\"1\"/>");

  for (int i = 0; i <= 4; ++i) {
    const double xv = xmin + i * (xmax - xmin) / 4.0;
    const double yv = ymin + i * (ymax - ymin) / 4.0;
    out.push_back("<line x1=\"" + fixed2(px(xv)) + "\" y1=\"" + fixed2(B) + "\" x2=\"" +
                  fixed2(px(xv)) + "\" y2=\"" + fixed2(B + 5) +
                  "\" stroke=\"black\" stroke-width=\"1\"/>");
    out.push_back("<text x=\"" + fixed2(px(xv)) + "\" y=\"" + fixed2(B + 20) +
                  "\" font-size=\"12\" text-anchor=\"middle\">" + tick_label(xv) + "</text>");
    out.push_back("<line x1=\"" + fixed2(L - 5) + "\" y1=\"" + fixed2(py(yv)) + "\" x2=\"" +
                  fixed2(L) + "\" y2=\"" + fixed2(py(yv)) +
                  "\" stroke=\"black\" stroke-width=\"1\"/>");
    out.push_back("<text x=\"" + fixed2(L - 8) + "\" y=\"" + fixed2(py(yv) + 4) +
                  "\" font-size=\"12\" text-anchor=\"end\">" + tick_label(yv) + "</text>");
  }
  out.push_back("<text x=\"" + fixed2((L + R) / 2) + "\" y=\"" + fixed2(B + 40) +
                "\" font-size=\"14\" text-anchor=\"middle\">" + x_label + "</text>");
  out.push_back("<text x=\"18\" y=\"" + fixed2((T + B) / 2) +
                "\" font-size=\"14\" text-anchor=\"middle\" transform=\"rotate(-90 18 " +
                fixed2((T + B) / 2) + ")\">" + y_label + "</text>");

  for (const auto& c : curves) {
    std::string poly = "<polyline fill=\"none\" stroke=\"black\" stroke-width=\"1.5\"";
    if (!c.dasharray.empty()) poly += " stroke-dasharray=\"" + c.dasharray + "\"";
    poly += " points=\"";
    for (std::size_t i = 0; i < c.points.size(); ++i) {
      if (i) poly += ' ';
      poly += fixed2(px(c.points[i].first)) + "," + fixed2(py(c.points[i].second));
    }
    poly += "\"/>";
    out.push_back(poly);
  }

  double ly = T + 14;
  for (const auto& c : curves) {
    std::string sample = "<line x1=\"" + fixed2(R - 170) + "\" y1=\"" + fixed2(ly - 4) +
                         "\" x2=\"" + fixed2(R - 130) + "\" y2=\"" + fixed2(ly - 4) +
                         "\" stroke=\"black\" stroke-width=\"1.5\"";
    if (!c.dasharray.empty()) sample += " stroke-dasharray=\"" + c.dasharray + "\"";
    sample += "/>";
    out.push_back(sample);
    out.push_back("<text x=\"" + fixed2(R - 124) + "\" y=\"" + fixed2(ly) +
                  "\" font-size=\"12\">" + c.label + "</text>");
    ly += 16;
  }
  out.push_back("</svg>");
  write_lines(path, out);
}

std::vector<SvgCurve> figure1_svg_curves(const ExperimentResult& result) {
  // Line coding of the study: solid, short dash, dotted, dot/dash, long dash.
  const std::vector<std::pair<std::string, std::string>> coding = {
      {"solid", ""},          {"short dash", "6,4"}, {"dotted", "2,4"},
      {"dot/dash", "2,4,8,4"}, {"long dash", "12,6"},
  };
  std::vector<SvgCurve> curves;
  for (std::size_t i = 0; i < result.curves.size(); ++i) {
    const auto& c = result.curves[i];
    SvgCurve sc;
    const auto& code = coding[i % coding.size()];
    sc.label = "vartheta=" + format_double(c.vartheta) + " (" + code.first + ")";
    sc.dasharray = code.second;
    for (std::size_t k = 0; k < c.g.size(); ++k) sc.points.emplace_back(c.g[k], c.mean_error[k]);
    curves.push_back(std::move(sc));
  }
  return curves;
}

OracleCheckReport run_oracle_check(const OracleCheckConfig& config) {
  if (config.replications < 1)
    throw std::invalid_argument("oracle check: replications must be >= 1");
  ExperimentConfig base;
  base.n = config.n;
  base.p = config.p;
  base.theta_true = config.theta_true;
  base.p = config.p;
  const Eigen::VectorXd theta = base.padded_theta();
  const int s = base.sparsity();
  if (s < 1) throw std::invalid_argument("oracle check: theta_true must not be all zero");

  OracleCheckReport report;
  report.epsilon = config.epsilon;

  RepOptions rep_opts;
  rep_opts.inclusive = true;  // the proof applies the assumption with J = support

  for (int rep = 0; rep < config.replications; ++rep) {
    DesignSpec dspec;
    dspec.n = config.n;
    dspec.p = config.p;
    dspec.rho = config.rho;
    dspec.seed = config.seed ^ (0x9E3779B97F4A7C15ULL *
                                (config.shared_design ? 0xFEEDull : 2ull * rep + 2ull));
    const Eigen::MatrixXd X = generate_design(dspec);

    Eigen::VectorXd eps;
    if (config.noise == NoiseKind::iid_gaussian) {
      ProcessSpec nspec;
      nspec.kind = ProcessKind::iid_gaussian;
      nspec.n = config.n;
      nspec.sigma = config.sigma;
      nspec.seed = config.seed ^ (0xA5A5A5A5ULL + 2ull * rep + 1ull);
      eps = generate_iid_gaussian(nspec);
    } else {
      ProcessSpec nspec;
      nspec.kind = ProcessKind::ar1;
      nspec.n = config.n;
      nspec.vartheta = config.vartheta;
      nspec.seed = config.seed ^ (0xA5A5A5A5ULL + 2ull * rep + 1ull);
      eps = generate_ar1(nspec);
    }
    const Eigen::VectorXd Y = X * theta + eps;
    const QuadraticObjective obj = build_regression_objective({X, Y});

    double lambda = 0.0;
    switch (config.rule) {
      case OracleLambdaRule::iid_theoretical:
        lambda = lambda_iid_regression(config.sigma, config.n, config.p, config.epsilon);
        break;
      case OracleLambdaRule::exponential_corollary: {
        const double a = std::abs(config.vartheta);
        const ExpIneqParams eta = geometric_eta_params(a, 1.0);
        const double maxX = X.cwiseAbs().maxCoeff();
        CalibrationResult cal = lambda_exp_regression(
            eta.K, eta.M_bound, eta.L1, eta.L2, eta.mu, maxX, eta.psi11(),
            config.c_free, config.n, config.p, config.epsilon);
        lambda = cal.lambda;
        report.lambda_validity_ok = report.lambda_validity_ok && cal.valid();
        break;
      }
      case OracleLambdaRule::fixed:
        lambda = config.fixed_lambda;
        break;
    }

    const LassoSolution sol = solve(obj, lambda);

    OracleCheckRow row;
    row.replication = rep;
    row.lambda = lambda;
    const RepEstimate rep_est = rep_randomized(obj.gram(), s, config.kappa_budget,
                                               config.seed + 0xABCDull + rep, rep_opts);
    row.kappa = rep_est.kappa;
    row.risk_gap = evaluate_risk_gap(obj, sol.theta, theta);
    row.l1_error = (sol.theta_scaled - obj.to_scaled(theta)).lpNorm<1>();
    if (!(row.kappa > 1e-10)) {
      row.excluded = true;
    } else if (lambda > 0.0) {
      auto [risk_bound, l1_bound] = oracle_bounds(lambda, s, row.kappa);
      row.risk_bound = risk_bound;
      row.l1_bound = l1_bound;
    }
    if (!row.excluded)
      row.joint_ok = row.risk_gap <= row.risk_bound + 1e-12 &&
                     row.l1_error <= row.l1_bound + 1e-12;
    report.rows.push_back(row);
  }

  int ok = 0;
  for (const auto& row : report.rows) {
    if (row.excluded) {
      ++report.excluded_count;
      continue;
    }
    ++report.included;
    ok += row.joint_ok ? 1 : 0;
  }
  if (report.included > 0) {
    report.frequency = static_cast<double>(ok) / report.included;
    const double se =
        std::sqrt(config.epsilon * (1.0 - config.epsilon) / report.included);
    report.threshold = 1.0 - config.epsilon - 3.0 * se;
    report.pass = report.frequency >= report.threshold;
  }
  return report;
}

void write_oracle_csv(const OracleCheckReport& report, const std::string& path) {
  std::vector<std::string> lines;
  lines.push_back(
      "replication,kappa,lambda,risk_gap,risk_bound,l1_error,l1_bound,joint_ok,excluded");
  for (const auto& r : report.rows) {
    lines.push_back(join_csv({std::to_string(r.replication), format_double(r.kappa),
                              format_double(r.lambda), format_double(r.risk_gap),
                              format_double(r.risk_bound), format_double(r.l1_error),
                              format_double(r.l1_bound), r.joint_ok ? "1" : "0",
                              r.excluded ? "1" : "0"}));
  }
  write_lines(path, lines);
}

void write_deviation_csv(const DeviationCheckReport& report, const std::string& path) {
  std::vector<std::string> lines;
  lines.push_back("j,t,frequency,psi_t,violation");
  for (const auto& r : report.rows) {
    lines.push_back(join_csv({std::to_string(r.j), format_double(r.t),
                              format_double(r.frequency), format_double(r.psi_t),
                              r.violation ? "1" : "0"}));
  }
  write_lines(path, lines);
}

double mixture_pdf(const DensityExperimentConfig& config, double x) {
  double f = 0.0;
  const double sd = config.mixture_sd;
  for (std::size_t k = 0; k < config.mixture_means.size(); ++k) {
    const double z = (x - config.mixture_means[k]) / sd;
    f += config.mixture_weights[k] * std::exp(-0.5 * z * z) / (sd * std::sqrt(2.0 * M_PI));
  }
  return f;
}

namespace {

double mixture_cdf(const DensityExperimentConfig& config, double x) {
  double c = 0.0;
  for (std::size_t k = 0; k < config.mixture_means.size(); ++k)
    c += config.mixture_weights[k] *
         normal_cdf((x - config.mixture_means[k]) / config.mixture_sd);
  return c;
}

double mixture_quantile(const DensityExperimentConfig& config, double u) {
  double lo = *std::min_element(config.mixture_means.begin(), config.mixture_means.end()) -
              12.0 * config.mixture_sd;
  double hi = *std::max_element(config.mixture_means.begin(), config.mixture_means.end()) +
              12.0 * config.mixture_sd;
  for (int it = 0; it < 80; ++it) {
    const double mid = 0.5 * (lo + hi);
    (mixture_cdf(config, mid) < u ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

void validate_mixture(const DensityExperimentConfig& config) {
  if (config.mixture_means.size() != config.mixture_weights.size() ||
      config.mixture_means.empty())
    throw std::invalid_argument("density experiment: means/weights mismatch");
  double total = 0.0;
  for (double w : config.mixture_weights) {
    if (!(w > 0.0)) throw std::invalid_argument("density experiment: weights must be positive");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-9)
    throw std::invalid_argument("density experiment: weights must sum to 1");
  if (!(config.mixture_sd > 0.0))
    throw std::invalid_argument("density experiment: mixture_sd must be positive");
}

}  // namespace

Eigen::VectorXd sample_mixture(const DensityExperimentConfig& config, Rng& rng) {
  validate_mixture(config);
  Eigen::VectorXd z(config.n);
  if (config.dependent_vartheta == 0.0) {
    for (int i = 0; i < config.n; ++i) {
      const double u = rng.uniform();
      double acc = 0.0;
      std::size_t pick = config.mixture_weights.size() - 1;
      for (std::size_t k = 0; k < config.mixture_weights.size(); ++k) {
        acc += config.mixture_weights[k];
        if (u < acc) {
          pick = k;
          break;
        }
      }
      z(i) = config.mixture_means[pick] + config.mixture_sd * rng.normal();
    }
    return z;
  }
  // Gaussian-copula chain: AR(1) with unit marginals pushed through the
  // mixture quantile, so each Z_i keeps the mixture law but the chain mixes
  // at rate vartheta.
  const double t = config.dependent_vartheta;
  if (!(std::abs(t) < 1.0))
    throw std::invalid_argument("density experiment: |dependent_vartheta| must be < 1");
  const double innovation_sd = std::sqrt(1.0 - t * t);
  double eps = rng.normal();
  for (int i = 0; i < config.n; ++i) {
    if (i > 0) eps = t * eps + innovation_sd * rng.normal();
    z(i) = mixture_quantile(config, normal_cdf(eps));
  }
  return z;
}

Eigen::VectorXd mixture_dictionary_means(const DensityExperimentConfig& config,
                                         const Dictionary& dict) {
  // E phi_j(Z) = sum_k pi_k * w/sqrt(w^2+sd^2) * exp(-(c_j-m_k)^2/(2(w^2+sd^2))).
  const double w = dict.width();
  const double v = w * w + config.mixture_sd * config.mixture_sd;
  Eigen::VectorXd means = Eigen::VectorXd::Zero(dict.size());
  for (int j = 0; j < dict.size(); ++j)
    for (std::size_t k = 0; k < config.mixture_means.size(); ++k) {
      const double diff = dict.centers()(j) - config.mixture_means[k];
      means(j) += config.mixture_weights[k] * w / std::sqrt(v) *
                  std::exp(-diff * diff / (2.0 * v));
    }
  return means;
}

DensityExperimentResult run_density_experiment(const DensityExperimentConfig& config) {
  validate_mixture(config);
  if (config.n < 1 || config.center_count < 1)
    throw std::invalid_argument("density experiment: bad sizes");

  Eigen::VectorXd centers(config.center_count);
  for (int j = 0; j < config.center_count; ++j)
    centers(j) = config.center_lo +
                 j * (config.center_hi - config.center_lo) /
                     std::max(config.center_count - 1, 1);

  DensityExperimentResult result;
  result.dict = Dictionary::gaussian_bumps(centers, config.width);

  Rng rng = Rng::split(config.seed, 0xDE25u);
  const Eigen::VectorXd samples = sample_mixture(config, rng);

  const QuadraticObjective obj = build_density_objective(result.dict, samples);
  const LassoSolution sol = solve(obj, config.lambda);
  result.theta_hat = sol.theta;
  result.converged = sol.converged;
  for (int j = 0; j < config.center_count; ++j)
    if (sol.theta_scaled(j) != 0.0) result.support.push_back(j);

  for (double m : config.mixture_means) {
    int best = 0;
    for (int j = 1; j < config.center_count; ++j)
      if (std::abs(centers(j) - m) < std::abs(centers(best) - m)) best = j;
    result.true_bump_indices.push_back(best);
  }
  result.support_contains_true_bumps = true;
  for (int idx : result.true_bump_indices)
    if (std::find(result.support.begin(), result.support.end(), idx) ==
        result.support.end())
      result.support_contains_true_bumps = false;

  auto reference = [&config](double x) { return mixture_pdf(config, x); };
  result.l2_err = l2_error(result.dict, result.theta_hat, reference).value;

  // Best approximation in the dictionary span: theta* = G^{-1} b with
  // b_j = int phi_j f (closed form), and int (f_theta* - f)^2 = int f^2 - b'theta*.
  const Eigen::VectorXd b = mixture_dictionary_means(config, result.dict);
  result.theta_best = result.dict.gram().ldlt().solve(b);
  double f2 = 0.0;
  const double sd = config.mixture_sd;
  for (std::size_t k = 0; k < config.mixture_means.size(); ++k)
    for (std::size_t l = 0; l < config.mixture_means.size(); ++l) {
      const double diff = config.mixture_means[k] - config.mixture_means[l];
      f2 += config.mixture_weights[k] * config.mixture_weights[l] *
            std::exp(-diff * diff / (4.0 * sd * sd)) / (2.0 * sd * std::sqrt(M_PI));
    }
  result.best_in_dict_error = std::max(f2 - b.dot(result.theta_best), 0.0);
  return result;
}

void write_density_csvs(const DensityExperimentConfig& config,
                        const DensityExperimentResult& result,
                        const std::string& estimate_path,
                        const std::string& truth_path, int grid_points) {
  const double lo = result.dict.window_lo();
  const double hi = result.dict.window_hi();
  std::vector<std::string> est_lines{"x,f_hat"};
  std::vector<std::string> truth_lines{"x,f"};
  for (int i = 0; i < grid_points; ++i) {
    const double x = lo + i * (hi - lo) / (grid_points - 1);
    est_lines.push_back(join_csv(
        {format_double(x),
         format_double(result.dict.evaluate_combination(result.theta_hat, x))}));
    truth_lines.push_back(
        join_csv({format_double(x), format_double(mixture_pdf(config, x))}));
  }
  write_lines(estimate_path, est_lines);
  write_lines(truth_path, truth_lines);
}

void write_manifest(const std::vector<std::pair<std::string, std::string>>& entries,
                    const std::string& path) {
  std::vector<std::string> lines;
  for (const auto& [key, value] : entries) lines.push_back(key + "=" + value);
  write_lines(path, lines);
}

std::vector<std::pair<std::string, std::string>> config_manifest(
    const ExperimentConfig& config) {
  auto join_list = [](const std::vector<double>& values) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (i) out += ',';
      out += format_double(values[i]);
    }
    return out;
  };
  return {
      {"n", std::to_string(config.n)},
      {"p", std::to_string(config.p)},
      {"theta_true", join_list(config.theta_true)},
      {"rho", format_double(config.rho)},
      {"vartheta", join_list(config.vartheta_grid)},
      {"g_grid", join_list(config.effective_g_grid())},
      {"replications", std::to_string(config.replications)},
      {"seed", std::to_string(config.seed)},
      {"epsilon", format_double(config.epsilon)},
      {"shared_design", config.shared_design ? "true" : "false"},
      {"penalty", config.penalty_original_coords ? "original" : "normalized"},
  };
}

}  // namespace sparsedep
