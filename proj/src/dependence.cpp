#include "sparsedep/dependence.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace sparsedep {

ScoreMatrix scores_regression(const Eigen::MatrixXd& X, const Eigen::VectorXd& eps) {
  if (X.rows() != eps.size())
    throw std::invalid_argument("scores: eps length must match design rows");
  ScoreMatrix s;
  s.W = X.array().colwise() * eps.array();
  return s;
}

ScoreMatrix scores_density(const Eigen::VectorXd& samples,
                           const std::function<double(int, double)>& dictionary_eval,
                           int p, const Eigen::VectorXd& true_means) {
  if (true_means.size() != p)
    throw std::invalid_argument("scores: true_means length must equal p");
  const auto n = samples.size();
  ScoreMatrix s;
  s.W.resize(n, p);
  for (Eigen::Index i = 0; i < n; ++i)
    for (int j = 0; j < p; ++j)
      s.W(i, j) = true_means(j) - dictionary_eval(j, samples(i));
  return s;
}

namespace {

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b, const char* what) {
  if (b != 0 && a > std::numeric_limits<std::uint64_t>::max() / b)
    throw std::overflow_error(std::string(what) + ": 64-bit overflow");
  return a * b;
}

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b, const char* what) {
  if (a > std::numeric_limits<std::uint64_t>::max() - b)
    throw std::overflow_error(std::string(what) + ": 64-bit overflow");
  return a + b;
}

}  // namespace

std::uint64_t catalan_d(int m) {
  if (m < 2) throw std::invalid_argument("catalan_d: m must be >= 2");
  // d_m is the (m-1)-th Catalan number; C_k = C_{k-1} * 2(2k-1)/(k+1) exactly.
  std::uint64_t c = 1;  // C_1
  for (int k = 2; k <= m - 1; ++k) {
    c = checked_mul(c, 2 * (2 * static_cast<std::uint64_t>(k) - 1), "catalan_d");
    c /= static_cast<std::uint64_t>(k) + 1;
  }
  return c;
}

std::vector<std::uint64_t> a_sequence(int m_max) {
  if (m_max < 2) throw std::invalid_argument("a_sequence: m_max must be >= 2");
  std::vector<std::uint64_t> a(static_cast<std::size_t>(m_max) + 1, 0);
  a[2] = 1;
  if (m_max >= 3) a[3] = 2;
  for (int m = 4; m <= m_max; ++m) {
    std::uint64_t acc = static_cast<std::uint64_t>(m) - 1;
    for (int k = 2; k <= m - 2; ++k)
      acc = checked_add(acc, checked_mul(a[k], a[m - k], "a_sequence"), "a_sequence");
    a[m] = acc;
  }
  for (int m = 2; m <= m_max; ++m) {
    if (a[m] > catalan_d(m))
      throw std::logic_error("a_sequence: a_m exceeded d_m, recursion is wrong");
  }
  return a;
}

double mz_moment_bound(const MZParams& params, long n) {
  if (n < 1) throw std::invalid_argument("mz_moment_bound: n must be >= 1");
  if (params.q < 1 || !(params.C >= 1.0))
    throw std::invalid_argument("mz_moment_bound: need q >= 1 and C >= 1");
  const double q = params.q;
  double log_bound = q * std::log(params.C) +
                     std::log(static_cast<double>(catalan_d(2 * params.q))) +
                     std::lgamma(2.0 * q + 1.0) + q * std::log(static_cast<double>(n));
  return std::exp(log_bound);  // overflows to +inf in floating point
}

double mz_constant_clipped_ar1(double vartheta, int q, double clip_bound) {
  if (!(std::abs(vartheta) < 1.0) || q < 1 || !(clip_bound > 0.0))
    throw std::invalid_argument("mz_constant_clipped_ar1: bad parameters");
  const double a = std::abs(vartheta);
  const double front = 2.0 * q * std::pow(clip_bound, 2.0 * q);
  double best = front;  // r = 0
  for (int r = 1; r < 100000; ++r) {
    const double term = front * std::pow(a, r) * std::pow(r + 1.0, q);
    best = std::max(best, term);
    if (term < best * 1e-12) break;
  }
  return std::max(best, 1.0);
}

DeviationProfile DeviationProfile::gaussian(double sigma, double alpha) {
  if (!(sigma > 0.0)) throw std::invalid_argument("profile: sigma must be positive");
  if (!(alpha >= 0.0 && alpha <= 0.5))
    throw std::invalid_argument("profile: alpha must lie in [0, 1/2]");
  return DeviationProfile(Family::gaussian, alpha, sigma, 0.0);
}

DeviationProfile DeviationProfile::bounded_hoeffding(double B) {
  if (!(B > 0.0)) throw std::invalid_argument("profile: B must be positive");
  return DeviationProfile(Family::bounded_hoeffding, 0.0, B, 0.0);
}

DeviationProfile DeviationProfile::polynomial(double amplitude, int two_q) {
  if (!(amplitude > 0.0) || two_q < 2 || two_q % 2 != 0)
    throw std::invalid_argument("profile: need amplitude > 0 and even exponent >= 2");
  return DeviationProfile(Family::polynomial, 0.0, amplitude, static_cast<double>(two_q));
}

DeviationProfile DeviationProfile::exponential(double C_cal) {
  if (!(C_cal > 0.0)) throw std::invalid_argument("profile: C must be positive");
  return DeviationProfile(Family::exponential, 0.0, C_cal, 0.0);
}

double DeviationProfile::psi(double t) const {
  if (!(t >= 0.0)) throw std::invalid_argument("psi: t must be >= 0");
  double v = 1.0;
  switch (family_) {
    case Family::gaussian:
      v = std::exp(-t * t / (2.0 * a_ * a_));
      break;
    case Family::bounded_hoeffding:
      v = 2.0 * std::exp(-t * t / (2.0 * a_ * a_));
      break;
    case Family::polynomial:
      v = t > 0.0 ? a_ / std::pow(t, b_) : std::numeric_limits<double>::infinity();
      break;
    case Family::exponential:
      v = 2.0 * std::exp(-t * t / a_);
      break;
  }
  return std::min(v, 1.0);
}

double DeviationProfile::psi_inverse(double y) const {
  if (!(y > 0.0 && y < 1.0))
    throw std::invalid_argument("psi_inverse: y must lie in (0, 1)");
  switch (family_) {
    case Family::gaussian:
      return a_ * std::sqrt(2.0 * std::log(1.0 / y));
    case Family::bounded_hoeffding:
      return a_ * std::sqrt(2.0 * std::log(2.0 / y));
    case Family::polynomial:
      return std::pow(a_ / y, 1.0 / b_);
    case Family::exponential:
      return std::sqrt(a_ * std::log(2.0 / y));
  }
  throw std::logic_error("psi_inverse: unknown family");
}

std::string DeviationProfile::describe() const {
  std::ostringstream os;
  switch (family_) {
    case Family::gaussian:
      os << "gaussian(sigma=" << a_ << ", alpha=" << alpha_ << ")";
      break;
    case Family::bounded_hoeffding:
      os << "bounded_hoeffding(B=" << a_ << ")";
      break;
    case Family::polynomial:
      os << "polynomial(amplitude=" << a_ << ", exponent=" << b_ << ")";
      break;
    case Family::exponential:
      os << "exponential(C=" << a_ << ")";
      break;
  }
  return os.str();
}

DeviationProfile mz_tail_psi(const MZParams& params) {
  if (params.q < 1 || !(params.C >= 1.0))
    throw std::invalid_argument("mz_tail_psi: need q >= 1 and C >= 1");
  const double amplitude = std::pow(params.C, params.q) *
                           static_cast<double>(catalan_d(2 * params.q)) *
                           std::tgamma(2.0 * params.q + 1.0);
  return DeviationProfile::polynomial(amplitude, 2 * params.q);
}

double ExpIneqParams::psi11() const {
  switch (psi_kind) {
    case PsiKind::two_v:
      return 2.0;
    case PsiKind::u_plus_v:
      return 2.0;
    case PsiKind::u_times_v:
      return 1.0;
    case PsiKind::mixed:
      return mixed_alpha * 2.0 + (1.0 - mixed_alpha);
  }
  throw std::logic_error("psi11: unknown kind");
}

double ExpIneqParams::derive_B_n(long n) const {
  if (!(A_n > 0.0)) throw std::invalid_argument("derive_B_n: A_n must be positive");
  const double ratio = std::pow(2.0, 4.0 + mu) * static_cast<double>(n) * K * K * L1 / A_n;
  return 2.0 * std::max(K, M_bound) * L2 * std::max(ratio, 1.0);
}

ExpIneqParams ExpIneqParams::with_crude_variance_bound(long n) const {
  ExpIneqParams out = *this;
  out.A_n = 2.0 * static_cast<double>(n) * K * K * psi11() * L1;
  out.B_n = out.derive_B_n(n);
  return out;
}

double dn_tail_bound(const ExpIneqParams& params, double t, long n) {
  if (!(t >= 0.0)) throw std::invalid_argument("dn_tail_bound: t must be >= 0");
  if (!(params.A_n > 0.0))
    throw std::invalid_argument("dn_tail_bound: A_n must be positive");
  const double B_n = params.B_n > 0.0 ? params.B_n : params.derive_B_n(n);
  const double mu = params.mu;
  const double denom =
      params.A_n + std::pow(B_n, 1.0 / (mu + 2.0)) * std::pow(t, (2.0 * mu + 3.0) / (mu + 2.0));
  return std::exp(-0.5 * t * t / denom);
}

ExpIneqParams eta_to_dn_params(double L1, double L2, double mu, double sup_bound_M) {
  if (!(L1 > 0.0 && L2 > 0.0) || mu < 0.0 || sup_bound_M < 0.0)
    throw std::invalid_argument("eta_to_dn_params: bad parameters");
  ExpIneqParams p;
  p.psi_kind = ExpIneqParams::PsiKind::u_plus_v;
  p.K = std::sqrt(sup_bound_M);
  p.M_bound = sup_bound_M;
  p.L1 = L1;
  p.L2 = L2;
  p.mu = mu;
  return p;
}

ExpIneqParams geometric_eta_params(double a, double sup_bound_M) {
  if (!(a >= 0.0 && a < 1.0))
    throw std::invalid_argument("geometric_eta_params: need 0 <= a < 1");
  const double inv = 1.0 / (1.0 - a);
  return eta_to_dn_params(inv, inv, 1.0, sup_bound_M);
}

bool DeviationCheckReport::any_violation() const {
  for (const auto& r : rows)
    if (r.violation) return true;
  return false;
}

std::string DeviationCheckReport::summary() const {
  int violations = 0;
  for (const auto& r : rows) violations += r.violation ? 1 : 0;
  std::ostringstream os;
  os << "deviation check: n=" << n << " p=" << p << " reps=" << reps << ", "
     << rows.size() << " cells, " << violations << " violation(s)";
  return os.str();
}

DeviationCheckReport check_deviation_condition(
    const std::function<Eigen::MatrixXd(std::uint64_t)>& sample_scores,
    const DeviationProfile& profile, const std::vector<double>& t_grid, int n,
    int reps) {
  if (reps < 1000)
    throw std::invalid_argument("check_deviation_condition: reps must be >= 1000");
  if (t_grid.empty())
    throw std::invalid_argument("check_deviation_condition: empty t grid");

  const double scale = std::pow(static_cast<double>(n), -0.5 + profile.alpha());

  int p = 0;
  Eigen::MatrixXd exceed_counts;  // p x |t_grid|
  for (int rep = 0; rep < reps; ++rep) {
    const Eigen::MatrixXd W = sample_scores(static_cast<std::uint64_t>(rep));
    if (W.rows() != n)
      throw std::invalid_argument("check_deviation_condition: sampler returned wrong n");
    if (rep == 0) {
      p = static_cast<int>(W.cols());
      exceed_counts = Eigen::MatrixXd::Zero(p, static_cast<int>(t_grid.size()));
    }
    const Eigen::VectorXd means = W.colwise().mean();
    for (int j = 0; j < p; ++j)
      for (std::size_t k = 0; k < t_grid.size(); ++k)
        if (std::abs(means(j)) >= scale * t_grid[k]) exceed_counts(j, static_cast<int>(k)) += 1.0;
  }

  DeviationCheckReport report;
  report.n = n;
  report.p = p;
  report.reps = reps;
  for (int j = 0; j < p; ++j) {
    for (std::size_t k = 0; k < t_grid.size(); ++k) {
      DeviationCheckRow row;
      row.j = j;
      row.t = t_grid[k];
      row.frequency = exceed_counts(j, static_cast<int>(k)) / reps;
      row.psi_t = profile.psi(t_grid[k]);
      const double se = std::sqrt(row.psi_t * (1.0 - row.psi_t) / reps);
      row.violation = row.frequency > row.psi_t + 3.0 * se;
      report.rows.push_back(row);
    }
  }
  return report;
}

}  // namespace sparsedep
