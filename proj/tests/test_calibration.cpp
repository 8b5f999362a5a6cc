#include <doctest.h>

#include <cmath>

#include "sparsedep/calibration.hpp"

using namespace sparsedep;

TEST_CASE("generic lambda* formula") {
  // alpha = 0, sigma = 1, eps/p = e^{-8}: psi^{-1} = 4, lambda* = 4 * 0.1 * 4
  const auto profile = DeviationProfile::gaussian(1.0);
  const double eps_over_p = std::exp(-8.0);
  CHECK(profile.psi_inverse(eps_over_p) == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(lambda_star_generic(profile, 100, 1, eps_over_p) ==
        doctest::Approx(1.6).epsilon(1e-12));

  SUBCASE("monotone in p") {
    double prev = 0.0;
    for (long p : {10L, 20L, 40L, 80L}) {
      const double cur = lambda_star_generic(profile, 100, p, 0.1);
      CHECK(cur > prev);
      prev = cur;
    }
  }
  SUBCASE("decreasing in n, increasing in 1/eps") {
    CHECK(lambda_star_generic(profile, 200, 50, 0.1) <
          lambda_star_generic(profile, 100, 50, 0.1));
    CHECK(lambda_star_generic(profile, 100, 50, 0.05) >
          lambda_star_generic(profile, 100, 50, 0.1));
  }
}

TEST_CASE("iid regression lambda and the quoted 2.5747") {
  const double lambda = lambda_iid_regression(1.0, 30, 50, 0.1);
  CHECK(lambda == doctest::Approx(2.5747).epsilon(1e-4 / 2.5747));
  // the printed rounded value 2.56 is within 1 percent
  CHECK(std::abs(lambda - 2.56) / lambda < 0.01);

  CHECK(lambda_iid_regression(2.0, 30, 50, 0.1) ==
        doctest::Approx(2.0 * lambda).epsilon(1e-12));

  CHECK(lambda ==
        doctest::Approx(lambda_star_generic(DeviationProfile::gaussian(1.0), 30, 50, 0.1))
            .epsilon(1e-12));
}

TEST_CASE("moment-inequality regression lambda") {
  // C=1, q=1, maxX=1, n=100, p=10, eps=0.1: (4/10) * (d_2 * 1! * 100)^{1/2} = 4
  CHECK(lambda_mz_regression(1.0, 1, 1.0, 100, 10, 0.1) ==
        doctest::Approx(4.0).epsilon(1e-12));

  SUBCASE("p-scaling power law: 2^{2q} more columns double lambda") {
    for (int q : {1, 2, 3}) {
      const long p = 20;
      const long p2 = p << (2 * q);
      const double r = lambda_mz_regression(1.5, q, 2.0, 400, p2, 0.05) /
                       lambda_mz_regression(1.5, q, 2.0, 400, p, 0.05);
      CHECK(r == doctest::Approx(2.0).epsilon(1e-12));
    }
  }

  SUBCASE("log-domain evaluation agrees to 1e-12") {
    const double C = 1.0;
    const int q = 2;
    const long n = 400, p = 20;
    const double eps = 0.05;
    const double direct = lambda_mz_regression(C, q, 1.0, n, p, eps);
    const double logval =
        std::exp(std::log(4.0) + 0.5 * std::log(C) - 0.5 * std::log(static_cast<double>(n)) +
                 (std::log(5.0) + std::log(2.0) + std::log(static_cast<double>(p)) -
                  std::log(eps)) /
                     (2.0 * q));
    CHECK(direct == doctest::Approx(logval).epsilon(1e-12));
  }

  SUBCASE("equals the generic lambda* at the corollary profile") {
    for (int q : {1, 2, 3}) {
      const double direct = lambda_mz_regression(2.0, q, 1.5, 200, 40, 0.05);
      const double generic =
          lambda_star_generic(mz_corollary_profile(2.0, q, 1.5), 200, 40, 0.05);
      CHECK(direct == doctest::Approx(generic).epsilon(1e-12));
    }
  }
}

TEST_CASE("exponential regression corollary") {
  SUBCASE("hand-computed constant: C = 16 at the unit configuration") {
    const auto result =
        lambda_exp_regression(1.0, 1.0, 1.0, 1.0, 0.0, 1.0, 2.0, 1.0, 30, 50, 0.1);
    CHECK(result.C_cal == doctest::Approx(16.0).epsilon(1e-12));
    const double expected = 4.0 * std::sqrt(16.0 * std::log(1000.0) / 30.0);
    CHECK(result.lambda == doctest::Approx(expected).epsilon(1e-12));
  }
  SUBCASE("restriction fails for absurd p") {
    const auto result =
        lambda_exp_regression(1.0, 1.0, 1.0, 1.0, 0.0, 1.0, 2.0, 1.0, 30, 1000000000L, 0.1);
    CHECK_FALSE(result.valid());
  }
  SUBCASE("lambda scales like sqrt(log p)") {
    const auto a = lambda_exp_regression(1.0, 1.0, 1.0, 1.0, 0.5, 1.0, 2.0, 1.0, 100, 50, 0.1);
    const auto b = lambda_exp_regression(1.0, 1.0, 1.0, 1.0, 0.5, 1.0, 2.0, 1.0, 100, 5000, 0.1);
    CHECK(b.lambda / a.lambda ==
          doctest::Approx(std::sqrt(std::log(2.0 * 5000 / 0.1) / std::log(2.0 * 50 / 0.1)))
              .epsilon(1e-12));
  }
  SUBCASE("equals the generic lambda* at the exponential profile") {
    const auto result =
        lambda_exp_regression(1.0, 2.0, 1.5, 0.5, 1.0, 2.0, 2.0, 0.7, 200, 80, 0.05);
    const auto profile = exp_regression_profile(1.0, 2.0, 1.5, 0.5, 1.0, 2.0, 2.0, 0.7);
    CHECK(result.lambda ==
          doctest::Approx(lambda_star_generic(profile, 200, 80, 0.05)).epsilon(1e-12));
  }
  SUBCASE("oracle bounds attached when s and kappa are given") {
    const auto result = lambda_exp_regression(1.0, 1.0, 1.0, 1.0, 0.0, 1.0, 2.0, 1.0, 30,
                                              50, 0.1, 3, 0.5);
    REQUIRE(result.risk_bound);
    CHECK(*result.risk_bound ==
          doctest::Approx(4.0 * result.lambda * result.lambda * 3.0 / 0.5).epsilon(1e-12));
  }
}

TEST_CASE("density corollary") {
  SUBCASE("c = 0 collapses the second term") {
    const auto result = lambda_density(1.0, 1.0, 1.0, 1.0, 0.0, 0.0, 100, 20, 0.1);
    CHECK(result.C_cal == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(result.lambda ==
          doctest::Approx(8.0 * std::sqrt(std::log(2.0 * 20 / 0.1) / 100.0)).epsilon(1e-12));
  }
  SUBCASE("unit constants with c = 1: C = 4 + sqrt(8)") {
    const auto result = lambda_density(1.0, 1.0, 1.0, 1.0, 0.0, 1.0, 100, 20, 0.1);
    CHECK(result.C_cal == doctest::Approx(6.828).epsilon(1e-3 / 6.828));
  }
  SUBCASE("monotone increasing in B") {
    double prev = 0.0;
    for (double B : {1.0, 2.0, 4.0}) {
      const auto result = lambda_density(B, 1.0, 1.0, 1.0, 0.5, 1.0, 100, 20, 0.1);
      CHECK(result.C_cal > prev);
      prev = result.C_cal;
    }
  }
  SUBCASE("equals the generic lambda* at the density profile") {
    const auto result = lambda_density(2.0, 0.8, 1.5, 1.0, 1.0, 0.6, 300, 40, 0.05);
    const auto profile = density_profile(2.0, 0.8, 1.5, 1.0, 0.6);
    CHECK(result.lambda ==
          doctest::Approx(lambda_star_generic(profile, 300, 40, 0.05)).epsilon(1e-12));
  }
}

TEST_CASE("iid density lambda equals the hoeffding profile lambda*") {
  const double direct = lambda_iid_density(1.5, 200, 30, 0.1);
  CHECK(direct == doctest::Approx(4.0 * 1.5 * std::sqrt(2.0 * std::log(600.0) / 200.0))
                      .epsilon(1e-12));
  CHECK(direct ==
        doctest::Approx(lambda_star_generic(DeviationProfile::bounded_hoeffding(1.5), 200,
                                            30, 0.1))
            .epsilon(1e-12));
}

TEST_CASE("oracle bounds") {
  CHECK(oracle_bounds(1.0, 1, 1.0) == std::pair<double, double>{4.0, 2.0});
  CHECK(oracle_bounds(2.0, 3, 0.5).first == doctest::Approx(96.0));
  CHECK(oracle_bounds(2.0, 3, 0.5).second == doctest::Approx(24.0));
  CHECK_THROWS_AS(oracle_bounds(1.0, 1, 0.0), std::invalid_argument);

  SUBCASE("at lambda = lambda* the risk bound is the post-theorem display") {
    const auto profile = DeviationProfile::gaussian(1.0, 0.2);
    const long n = 400, p = 64;
    const double eps = 0.1, kappa = 0.7;
    const int s = 3;
    const double lambda = lambda_star_generic(profile, n, p, eps);
    const double via_bounds = oracle_bounds(lambda, s, kappa).first;
    const double inv = profile.psi_inverse(eps / static_cast<double>(p));
    const double display = 64.0 * s * inv * inv /
                           (kappa * std::pow(static_cast<double>(n), 1.0 - 2.0 * 0.2));
    CHECK(via_bounds == doctest::Approx(display).epsilon(1e-12));
  }
}
