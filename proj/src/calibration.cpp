#include "sparsedep/calibration.hpp"

#include <cmath>
#include <stdexcept>

namespace sparsedep {

namespace {

void require_basic(long n, long p, double epsilon) {
  if (n < 1 || p < 1) throw std::invalid_argument("calibration: n, p must be >= 1");
  if (!(epsilon > 0.0 && epsilon < 1.0))
    throw std::invalid_argument("calibration: epsilon must lie in (0, 1)");
}

void attach_oracle_bounds(CalibrationResult& result, std::optional<int> s,
                          std::optional<double> kappa) {
  if (s && kappa) {
    auto [risk, l1] = oracle_bounds(result.lambda, *s, *kappa);
    result.risk_bound = risk;
    result.l1_bound = l1;
  }
}

SideCondition p_restriction(double c, double mu, double C_cal, long n, long p,
                            double epsilon) {
  SideCondition cond;
  cond.name = "p <= (eps/2) exp(c^2 n^{1/(mu+2)} / C)";
  cond.lhs = static_cast<double>(p);
  cond.rhs = 0.5 * epsilon *
             std::exp(c * c * std::pow(static_cast<double>(n), 1.0 / (mu + 2.0)) / C_cal);
  cond.pass = cond.lhs <= cond.rhs;
  return cond;
}

}  // namespace

double lambda_star_generic(const DeviationProfile& profile, long n, long p,
                           double epsilon) {
  require_basic(n, p, epsilon);
  const double y = epsilon / static_cast<double>(p);
  return 4.0 * std::pow(static_cast<double>(n), profile.alpha() - 0.5) *
         profile.psi_inverse(y);
}

double lambda_iid_regression(double sigma, long n, long p, double epsilon) {
  require_basic(n, p, epsilon);
  if (!(sigma > 0.0)) throw std::invalid_argument("calibration: sigma must be positive");
  return 4.0 * sigma *
         std::sqrt(2.0 * std::log(static_cast<double>(p) / epsilon) / static_cast<double>(n));
}

double lambda_mz_regression(double C, int q, double maxX, long n, long p,
                            double epsilon) {
  require_basic(n, p, epsilon);
  if (!(C >= 1.0) || q < 1 || !(maxX > 0.0))
    throw std::invalid_argument("calibration: need C >= 1, q >= 1, maxX > 0");
  const double d2q = static_cast<double>(catalan_d(2 * q));
  const double qfac = std::tgamma(static_cast<double>(q) + 1.0);
  return 4.0 * std::sqrt(C) * std::pow(maxX, q) / std::sqrt(static_cast<double>(n)) *
         std::pow(d2q * qfac * static_cast<double>(p) / epsilon, 1.0 / (2.0 * q));
}

DeviationProfile mz_corollary_profile(double C, int q, double maxX) {
  const double amplitude = std::pow(C * maxX * maxX, q) *
                           static_cast<double>(catalan_d(2 * q)) *
                           std::tgamma(static_cast<double>(q) + 1.0);
  return DeviationProfile::polynomial(amplitude, 2 * q);
}

CalibrationResult lambda_exp_regression(double K, double M_bound, double L1,
                                        double L2, double mu, double maxX,
                                        double psi11, double c, long n, long p,
                                        double epsilon, std::optional<int> s,
                                        std::optional<double> kappa) {
  require_basic(n, p, epsilon);
  if (!(K > 0.0 && M_bound > 0.0 && L1 > 0.0 && L2 > 0.0 && maxX > 0.0 &&
        psi11 > 0.0 && c > 0.0) ||
      mu < 0.0)
    throw std::invalid_argument("calibration: exponential corollary needs positive constants");

  const double C1 = 4.0 * K * K * maxX * maxX * psi11 * L1;
  const double C2 = 2.0 * L2 * maxX * std::max(K, M_bound) *
                    std::max(std::pow(2.0, mu + 3.0) / psi11, 1.0);
  CalibrationResult result;
  result.C_cal = C1 + c * C2;
  result.lambda = 4.0 * std::sqrt(result.C_cal *
                                  std::log(2.0 * static_cast<double>(p) / epsilon) /
                                  static_cast<double>(n));
  result.validity.push_back(p_restriction(c, mu, result.C_cal, n, p, epsilon));
  attach_oracle_bounds(result, s, kappa);
  return result;
}

DeviationProfile exp_regression_profile(double K, double M_bound, double L1,
                                        double L2, double mu, double maxX,
                                        double psi11, double c) {
  const double C1 = 4.0 * K * K * maxX * maxX * psi11 * L1;
  const double C2 = 2.0 * L2 * maxX * std::max(K, M_bound) *
                    std::max(std::pow(2.0, mu + 3.0) / psi11, 1.0);
  return DeviationProfile::exponential(C1 + c * C2);
}

CalibrationResult lambda_density(double B, double L, double L1, double L2,
                                 double mu, double c, long n, long p,
                                 double epsilon, std::optional<int> s,
                                 std::optional<double> kappa) {
  require_basic(n, p, epsilon);
  if (!(B >= 1.0 && L > 0.0 && L1 > 0.0 && L2 > 0.0 && c >= 0.0) || mu < 0.0)
    throw std::invalid_argument("calibration: density corollary needs B >= 1 and positive constants");
  (void)L2;  // enters the summability hypothesis, not the printed constant

  CalibrationResult result;
  result.C_cal = 4.0 * B * L * L1 +
                 std::pow(std::pow(2.0, 3.0 + mu) * B * L1, 1.0 / (mu + 2.0)) * c;
  result.lambda = 4.0 * std::sqrt(result.C_cal *
                                  std::log(2.0 * static_cast<double>(p) / epsilon) /
                                  static_cast<double>(n));
  if (c > 0.0)
    result.validity.push_back(p_restriction(c, mu, result.C_cal, n, p, epsilon));
  attach_oracle_bounds(result, s, kappa);
  return result;
}

DeviationProfile density_profile(double B, double L, double L1, double mu, double c) {
  const double C_cal = 4.0 * B * L * L1 +
                       std::pow(std::pow(2.0, 3.0 + mu) * B * L1, 1.0 / (mu + 2.0)) * c;
  return DeviationProfile::exponential(C_cal);
}

double lambda_iid_density(double B, long n, long p, double epsilon) {
  require_basic(n, p, epsilon);
  if (!(B > 0.0)) throw std::invalid_argument("calibration: B must be positive");
  return 4.0 * B *
         std::sqrt(2.0 * std::log(2.0 * static_cast<double>(p) / epsilon) /
                   static_cast<double>(n));
}

std::pair<double, double> oracle_bounds(double lambda, int s, double kappa) {
  if (!(lambda > 0.0) || s < 1 || !(kappa > 0.0))
    throw std::invalid_argument("oracle_bounds: need lambda > 0, s >= 1, kappa > 0");
  return {4.0 * lambda * lambda * s / kappa, 2.0 * lambda * s / kappa};
}

}  // namespace sparsedep
