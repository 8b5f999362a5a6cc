#include "sparsedep/processes.hpp"

#include <cmath>
#include <stdexcept>

namespace sparsedep {

namespace {

void require_length(const ProcessSpec& spec) {
  if (spec.n < 1) throw std::invalid_argument("process: n must be positive");
}

Eigen::VectorXd standard_normals(int n, Rng& rng) {
  Eigen::VectorXd z(n);
  for (int i = 0; i < n; ++i) z(i) = rng.normal();
  return z;
}

}  // namespace

Eigen::VectorXd generate_iid_gaussian(const ProcessSpec& spec) {
  require_length(spec);
  if (!(spec.sigma > 0.0)) throw std::invalid_argument("process: sigma must be positive");
  Rng rng = Rng::split(spec.seed, 0);
  return spec.sigma * standard_normals(spec.n, rng);
}

Eigen::VectorXd generate_ar1(const ProcessSpec& spec) {
  require_length(spec);
  const double t = spec.vartheta;
  if (!(std::abs(t) < 1.0))
    throw std::invalid_argument("process: ar1 requires |vartheta| < 1");
  Rng rng = Rng::split(spec.seed, 0);
  const double innovation_sd = std::sqrt(1.0 - t * t);
  Eigen::VectorXd eps(spec.n);
  eps(0) = rng.normal();
  for (int i = 1; i < spec.n; ++i) eps(i) = t * eps(i - 1) + innovation_sd * rng.normal();
  return eps;
}

double fgn_autocovariance(double beta, int lag) {
  if (!(beta > 0.0 && beta < 1.0))
    throw std::invalid_argument("process: beta must lie in (0, 1)");
  if (lag == 0) return 1.0;
  const double H2 = 2.0 * (1.0 - beta / 2.0);  // 2H
  const double k = std::abs(static_cast<double>(lag));
  return 0.5 * (std::pow(k + 1.0, H2) - 2.0 * std::pow(k, H2) + std::pow(k - 1.0, H2));
}

double implied_long_memory_constant(double beta) {
  const double H = 1.0 - beta / 2.0;
  return H * (2.0 * H - 1.0);
}

FgnSampler::FgnSampler(double beta, int n) {
  if (n < 1) throw std::invalid_argument("process: n must be positive");
  Eigen::MatrixXd cov(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j) cov(i, j) = cov(j, i) = fgn_autocovariance(beta, i - j);
  Eigen::LLT<Eigen::MatrixXd> llt(cov);
  if (llt.info() != Eigen::Success)
    throw std::runtime_error("process: FGN covariance factorization failed");
  chol_ = llt.matrixL();
}

Eigen::VectorXd FgnSampler::sample(Rng& rng) const {
  return chol_ * standard_normals(n(), rng);
}

Eigen::VectorXd generate_long_memory_gaussian(const ProcessSpec& spec) {
  require_length(spec);
  FgnSampler sampler(spec.beta, spec.n);
  Rng rng = Rng::split(spec.seed, 0);
  return sampler.sample(rng);
}

Eigen::VectorXd hermite2_transform(const Eigen::VectorXd& g) {
  return g.array().square() - 1.0;
}

Eigen::VectorXd generate(const ProcessSpec& spec) {
  switch (spec.kind) {
    case ProcessKind::iid_gaussian:
      return generate_iid_gaussian(spec);
    case ProcessKind::ar1:
      return generate_ar1(spec);
    case ProcessKind::long_memory_gaussian:
      return generate_long_memory_gaussian(spec);
    case ProcessKind::hermite2_of_long_memory:
      return hermite2_transform(generate_long_memory_gaussian(spec));
  }
  throw std::invalid_argument("process: unknown kind");
}

Eigen::MatrixXd generate_design(const DesignSpec& spec) {
  if (spec.n < 1 || spec.p < 1)
    throw std::invalid_argument("design: n and p must be positive");
  if (!(std::abs(spec.rho) < 1.0))
    throw std::invalid_argument("design: |rho| must be < 1");
  Eigen::MatrixXd cov(spec.p, spec.p);
  for (int i = 0; i < spec.p; ++i)
    for (int j = 0; j <= i; ++j)
      cov(i, j) = cov(j, i) = std::pow(spec.rho, std::abs(i - j));
  Eigen::LLT<Eigen::MatrixXd> llt(cov);
  if (llt.info() != Eigen::Success)
    throw std::runtime_error("design: covariance factorization failed");
  const Eigen::MatrixXd L = llt.matrixL();
  Rng rng = Rng::split(spec.seed, 0);
  Eigen::MatrixXd X(spec.n, spec.p);
  for (int i = 0; i < spec.n; ++i)
    X.row(i) = (L * standard_normals(spec.p, rng)).transpose();
  return X;
}

}  // namespace sparsedep
