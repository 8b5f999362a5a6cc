#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sparsedep/dependence.hpp"

namespace sparsedep {

struct SideCondition {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  bool pass = false;
};

struct CalibrationResult {
  double lambda = 0.0;
  double C_cal = 0.0;  // the corollary's composite constant, when one exists
  std::vector<SideCondition> validity;
  std::optional<double> risk_bound;  // 4 lambda^2 s / kappa
  std::optional<double> l1_bound;    // 2 lambda s / kappa

  bool valid() const {
    for (const auto& c : validity)
      if (!c.pass) return false;
    return true;
  }
};

// lambda* = 4 n^{alpha - 1/2} psi^{-1}(epsilon / p).
double lambda_star_generic(const DeviationProfile& profile, long n, long p,
                           double epsilon);

// iid subGaussian regression noise: lambda = 4 sigma sqrt(2 log(p/eps) / n).
double lambda_iid_regression(double sigma, long n, long p, double epsilon);

// Moment-inequality regression corollary:
// lambda = 4 C^{1/2} max(X)^q / sqrt(n) * (d_{2q} q! p / eps)^{1/(2q)}.
double lambda_mz_regression(double C, int q, double maxX, long n, long p,
                            double epsilon);

// The (alpha, psi) pair whose generic lambda* reproduces lambda_mz_regression.
DeviationProfile mz_corollary_profile(double C, int q, double maxX);

// Exponential-inequality regression corollary. psi11 = Psi(1,1) of the chosen
// covariance shape; c is the free range constant. Attaches the validity
// restriction p <= (eps/2) exp(c^2 n^{1/(mu+2)} / C) and, when s and kappa are
// supplied, the oracle bounds.
CalibrationResult lambda_exp_regression(double K, double M_bound, double L1,
                                        double L2, double mu, double maxX,
                                        double psi11, double c, long n, long p,
                                        double epsilon,
                                        std::optional<int> s = std::nullopt,
                                        std::optional<double> kappa = std::nullopt);

DeviationProfile exp_regression_profile(double K, double M_bound, double L1,
                                        double L2, double mu, double maxX,
                                        double psi11, double c);

// Dependent density corollary: C = 4 B L L1 + (2^{3+mu} B L1)^{1/(mu+2)} c.
// L2 participates in the hypothesis but not in the printed constant.
CalibrationResult lambda_density(double B, double L, double L1, double L2,
                                 double mu, double c, long n, long p,
                                 double epsilon,
                                 std::optional<int> s = std::nullopt,
                                 std::optional<double> kappa = std::nullopt);

DeviationProfile density_profile(double B, double L, double L1, double mu, double c);

// iid density via Hoeffding: lambda = 4 B sqrt(2 log(2p/eps) / n).
double lambda_iid_density(double B, long n, long p, double epsilon);

// (4 lambda^2 s / kappa, 2 lambda s / kappa).
std::pair<double, double> oracle_bounds(double lambda, int s, double kappa);

}  // namespace sparsedep
