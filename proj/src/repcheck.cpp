#include "sparsedep/repcheck.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "sparsedep/rng.hpp"

namespace sparsedep {

double cone_ratio(const Eigen::MatrixXd& M, const std::vector<int>& J,
                  const Eigen::VectorXd& v) {
  double denom = 0.0;
  for (int j : J) denom += v(j) * v(j);
  if (!(denom > 0.0)) return std::numeric_limits<double>::infinity();
  return v.dot(M * v) / denom;
}

bool cone_feasible(const std::vector<int>& J, const Eigen::VectorXd& v, double slack) {
  std::vector<char> in_J(static_cast<std::size_t>(v.size()), 0);
  for (int j : J) in_J[static_cast<std::size_t>(j)] = 1;
  double inside = 0.0, outside = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i)
    (in_J[static_cast<std::size_t>(i)] ? inside : outside) += std::abs(v(i));
  return outside <= 3.0 * inside + slack;
}

namespace {

// Euclidean projection of w onto the l1 ball of radius R (Duchi et al.).
Eigen::VectorXd project_l1_ball(const Eigen::VectorXd& w, double R) {
  if (w.lpNorm<1>() <= R) return w;
  Eigen::VectorXd abs = w.cwiseAbs();
  std::vector<double> u(abs.data(), abs.data() + abs.size());
  std::sort(u.begin(), u.end(), std::greater<double>());
  double cum = 0.0, theta = 0.0;
  for (std::size_t k = 0; k < u.size(); ++k) {
    cum += u[k];
    const double candidate = (cum - R) / static_cast<double>(k + 1);
    if (candidate >= (k + 1 < u.size() ? u[k + 1] : 0.0)) {
      theta = candidate;
      break;
    }
  }
  Eigen::VectorXd out(w.size());
  for (Eigen::Index i = 0; i < w.size(); ++i)
    out(i) = std::copysign(std::max(std::abs(w(i)) - theta, 0.0), w(i));
  return out;
}

struct SubsetWork {
  std::vector<int> J, Jc;
  Eigen::MatrixXd M_JJ, M_cJ, M_cc;
  Eigen::MatrixXd pinv_cc;
  double lip = 0.0;  // max eigenvalue of M_cc
};

SubsetWork make_subset_work(const Eigen::MatrixXd& M, const std::vector<int>& J) {
  const int p = static_cast<int>(M.rows());
  SubsetWork w;
  w.J = J;
  std::vector<char> mark(static_cast<std::size_t>(p), 0);
  for (int j : J) mark[static_cast<std::size_t>(j)] = 1;
  for (int i = 0; i < p; ++i)
    if (!mark[static_cast<std::size_t>(i)]) w.Jc.push_back(i);
  const int k = static_cast<int>(J.size());
  const int m = static_cast<int>(w.Jc.size());
  w.M_JJ.resize(k, k);
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b) w.M_JJ(a, b) = M(J[a], J[b]);
  w.M_cJ.resize(m, k);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < k; ++b) w.M_cJ(a, b) = M(w.Jc[a], J[b]);
  w.M_cc.resize(m, m);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) w.M_cc(a, b) = M(w.Jc[a], w.Jc[b]);
  if (m > 0) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(w.M_cc);
    const Eigen::VectorXd& ev = eig.eigenvalues();
    w.lip = std::max(ev.maxCoeff(), 0.0);
    const double cut = std::max(w.lip, 1.0) * 1e-12;
    Eigen::VectorXd inv = ev.unaryExpr([cut](double e) { return e > cut ? 1.0 / e : 0.0; });
    w.pinv_cc = eig.eigenvectors() * inv.asDiagonal() * eig.eigenvectors().transpose();
  }
  return w;
}

Eigen::VectorXd assemble(const SubsetWork& sw, const Eigen::VectorXd& vJ,
                         const Eigen::VectorXd& w, int p) {
  Eigen::VectorXd v = Eigen::VectorXd::Zero(p);
  for (std::size_t a = 0; a < sw.J.size(); ++a) v(sw.J[a]) = vJ(static_cast<int>(a));
  for (std::size_t a = 0; a < sw.Jc.size(); ++a) v(sw.Jc[a]) = w(static_cast<int>(a));
  return v;
}

// min over ||w||_1 <= R of v'Mv at fixed v_J, by projected gradient.
Eigen::VectorXd inner_solve(const SubsetWork& sw, const Eigen::VectorXd& vJ,
                            double R, int iterations, Eigen::VectorXd w0) {
  const int m = static_cast<int>(sw.Jc.size());
  if (m == 0) return Eigen::VectorXd::Zero(0);
  const Eigen::VectorXd b = sw.M_cJ * vJ;  // gradient is 2(b + M_cc w)
  if (sw.lip <= 0.0) {
    // Quadratic part vanishes: minimize the linear term over the l1 ball.
    Eigen::Index worst;
    b.cwiseAbs().maxCoeff(&worst);
    Eigen::VectorXd w = Eigen::VectorXd::Zero(m);
    if (std::abs(b(worst)) > 0.0) w(worst) = -std::copysign(R, b(worst));
    return w;
  }
  Eigen::VectorXd w = project_l1_ball(std::move(w0), R);
  const double step = 1.0 / sw.lip;
  for (int it = 0; it < iterations; ++it) {
    Eigen::VectorXd next = project_l1_ball(w - step * 2.0 * (b + sw.M_cc * w), R);
    const double change = (next - w).cwiseAbs().maxCoeff();
    w = std::move(next);
    if (change <= 1e-14 * std::max(1.0, R)) break;
  }
  return w;
}

// Multiplier of the active l1 constraint at the inner optimum; 0 if inactive.
double inner_multiplier(const SubsetWork& sw, const Eigen::VectorXd& vJ,
                        const Eigen::VectorXd& w, double R) {
  if (sw.Jc.empty() || w.lpNorm<1>() < R * (1.0 - 1e-9)) return 0.0;
  const Eigen::VectorXd grad = 2.0 * (sw.M_cJ * vJ + sw.M_cc * w);
  const double wmax = w.cwiseAbs().maxCoeff();
  double nu = 0.0;
  for (Eigen::Index i = 0; i < w.size(); ++i)
    if (std::abs(w(i)) > 1e-10 * wmax) nu = std::max(nu, std::abs(grad(i)));
  return nu;
}

struct Candidate {
  double ratio = std::numeric_limits<double>::infinity();
  Eigen::VectorXd v;
};

// Nested minimization for one subset: sphere steps on v_J with an exact
// convex inner solve for the off-J block.
Candidate minimize_on_subset(const Eigen::MatrixXd& M, const SubsetWork& sw,
                             Eigen::VectorXd vJ, const RepOptions& opts) {
  const int p = static_cast<int>(M.rows());
  vJ.normalize();
  Eigen::VectorXd w = inner_solve(sw, vJ, 3.0 * vJ.lpNorm<1>(), opts.inner_iterations,
                                  Eigen::VectorXd::Zero(static_cast<int>(sw.Jc.size())));
  Eigen::VectorXd v = assemble(sw, vJ, w, p);
  double ratio = cone_ratio(M, sw.J, v);

  double step = 0.5;
  for (int it = 0; it < opts.outer_iterations; ++it) {
    if (static_cast<int>(sw.J.size()) == 1) break;  // v_J fixed up to sign
    const double R = 3.0 * vJ.lpNorm<1>();
    const double nu = inner_multiplier(sw, vJ, w, R);
    Eigen::VectorXd gJ(vJ.size());
    const Eigen::VectorXd Mv = M * v;
    for (std::size_t a = 0; a < sw.J.size(); ++a)
      gJ(static_cast<int>(a)) = 2.0 * Mv(sw.J[a]) -
                                3.0 * nu * (vJ(static_cast<int>(a)) >= 0.0 ? 1.0 : -1.0);
    gJ -= gJ.dot(vJ) * vJ;  // tangent component on the unit sphere
    if (gJ.norm() <= opts.tol * std::max(1.0, std::abs(ratio))) break;

    bool improved = false;
    for (int halvings = 0; halvings < 25; ++halvings) {
      Eigen::VectorXd vJ_try = (vJ - step * gJ).normalized();
      Eigen::VectorXd w_try =
          inner_solve(sw, vJ_try, 3.0 * vJ_try.lpNorm<1>(), opts.inner_iterations, w);
      Eigen::VectorXd v_try = assemble(sw, vJ_try, w_try, p);
      const double r_try = cone_ratio(M, sw.J, v_try);
      if (r_try < ratio - 1e-15) {
        vJ = std::move(vJ_try);
        w = std::move(w_try);
        v = std::move(v_try);
        ratio = r_try;
        step = std::min(step * 1.5, 4.0);
        improved = true;
        break;
      }
      step *= 0.5;
    }
    if (!improved) break;
  }
  return {ratio, v};
}

std::vector<int> mask_to_subset(unsigned mask, int p) {
  std::vector<int> J;
  for (int i = 0; i < p; ++i)
    if (mask & (1u << i)) J.push_back(i);
  return J;
}

int subset_bound(int s, int p, const RepOptions& opts) {
  if (s < 1) throw std::invalid_argument("rep: s must be >= 1");
  const int bound = opts.inclusive ? s : s - 1;
  if (bound < 1)
    throw std::invalid_argument(
        "rep: s = 1 with the strict rule |J| < s admits only the empty set; "
        "use s >= 2 or inclusive mode");
  return std::min(bound, p);
}

void validate_matrix(const Eigen::MatrixXd& M) {
  if (M.rows() != M.cols() || M.rows() == 0)
    throw std::invalid_argument("rep: matrix must be square and non-empty");
  const double scale = std::max(1.0, M.cwiseAbs().maxCoeff());
  if ((M - M.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale)
    throw std::invalid_argument("rep: matrix must be symmetric");
}

}  // namespace

RepEstimate rep_exact(const Eigen::MatrixXd& M, int s, const RepOptions& opts) {
  validate_matrix(M);
  const int p = static_cast<int>(M.rows());
  if (p > 12)
    throw std::invalid_argument("rep_exact: p > 12 is infeasible to enumerate; use rep_randomized");
  const int bound = subset_bound(s, p, opts);

  RepEstimate best;
  best.sparsity = s;
  best.method = RepEstimate::Method::exact;
  best.kappa = std::numeric_limits<double>::infinity();

  for (unsigned mask = 1; mask < (1u << p); ++mask) {
    if (std::popcount(mask) > bound) continue;
    const std::vector<int> J = mask_to_subset(mask, p);
    const SubsetWork sw = make_subset_work(M, J);
    const int k = static_cast<int>(J.size());

    std::vector<Eigen::VectorXd> starts;
    for (int a = 0; a < k; ++a) starts.push_back(Eigen::VectorXd::Unit(k, a));

    // Interior candidate: unconstrained off-J minimizer via the Schur
    // complement; feasible iff it lands inside the cone.
    Eigen::MatrixXd schur = sw.M_JJ;
    if (!sw.Jc.empty()) schur -= sw.M_cJ.transpose() * sw.pinv_cc * sw.M_cJ;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(schur);
    Eigen::VectorXd vJ_int = eig.eigenvectors().col(0);
    starts.push_back(vJ_int);
    if (!sw.Jc.empty()) {
      Eigen::VectorXd w_int = -sw.pinv_cc * (sw.M_cJ * vJ_int);
      Eigen::VectorXd v_int = assemble(sw, vJ_int, w_int, p);
      if (cone_feasible(J, v_int, 0.0)) {
        const double r = cone_ratio(M, J, v_int);
        if (r < best.kappa) {
          best.kappa = r;
          best.certificate_J = J;
          best.certificate_v = v_int;
        }
      }
    } else {
      const double r = eig.eigenvalues()(0);
      if (r < best.kappa) {
        best.kappa = r;
        best.certificate_J = J;
        best.certificate_v = assemble(sw, vJ_int, Eigen::VectorXd::Zero(0), p);
      }
    }

    Rng rng = Rng::split(0x9E53u, mask);
    for (int r = 0; r < opts.starts_per_subset; ++r) {
      Eigen::VectorXd vJ(k);
      for (int a = 0; a < k; ++a) vJ(a) = rng.normal();
      if (vJ.norm() > 0) starts.push_back(vJ);
    }

    for (const auto& start : starts) {
      Candidate c = minimize_on_subset(M, sw, start, opts);
      if (c.ratio < best.kappa) {
        best.kappa = c.ratio;
        best.certificate_J = J;
        best.certificate_v = c.v;
      }
    }
  }
  return best;
}

RepEstimate rep_randomized(const Eigen::MatrixXd& M, int s, int budget,
                           std::uint64_t seed, const RepOptions& opts) {
  validate_matrix(M);
  if (budget < 1000) throw std::invalid_argument("rep_randomized: budget must be >= 1000");
  const int p = static_cast<int>(M.rows());
  const int bound = subset_bound(s, p, opts);

  Rng rng = Rng::split(seed, 0xC0DEu);
  std::vector<int> perm(static_cast<std::size_t>(p));

  struct Probe {
    double ratio;
    std::vector<int> J;
    Eigen::VectorXd v;
  };

  // Projected gradient on the ratio with a fixed evaluation budget; descent
  // steps keep the iterate inside the cone by rescaling the off-J block.
  auto refine = [&](const std::vector<int>& J, Eigen::VectorXd v) {
    std::vector<char> mark(static_cast<std::size_t>(p), 0);
    for (int j : J) mark[static_cast<std::size_t>(j)] = 1;
    auto renorm = [&](Eigen::VectorXd& x) {
      double nJ = 0.0;
      for (int j : J) nJ += x(j) * x(j);
      nJ = std::sqrt(nJ);
      if (nJ > 0) x /= nJ;
      double inside = 0.0, outside = 0.0;
      for (int i = 0; i < p; ++i)
        (mark[static_cast<std::size_t>(i)] ? inside : outside) += std::abs(x(i));
      if (outside > 3.0 * inside && outside > 0.0) {
        const double shrink = 3.0 * inside / outside;
        for (int i = 0; i < p; ++i)
          if (!mark[static_cast<std::size_t>(i)]) x(i) *= shrink;
      }
    };
    renorm(v);
    double ratio = cone_ratio(M, J, v);
    double step = 0.25;
    int evals = 0;
    while (evals < opts.refine_eval_budget) {
      Eigen::VectorXd grad = 2.0 * (M * v);
      for (int j : J) grad(j) -= 2.0 * ratio * v(j);
      bool improved = false;
      while (evals < opts.refine_eval_budget) {
        Eigen::VectorXd v_try = v - step * grad;
        renorm(v_try);
        const double r_try = cone_ratio(M, J, v_try);
        ++evals;
        if (r_try < ratio - 1e-15) {
          v = std::move(v_try);
          ratio = r_try;
          step = std::min(step * 1.4, 2.0);
          improved = true;
          break;
        }
        step *= 0.5;
        if (step < 1e-14) break;
      }
      if (!improved) break;
    }
    return Probe{ratio, J, std::move(v)};
  };

  Probe best;
  best.ratio = std::numeric_limits<double>::infinity();
  for (int b = 0; b < budget; ++b) {
    const int k = 1 + static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(bound));
    std::iota(perm.begin(), perm.end(), 0);
    for (int a = 0; a < k; ++a) {
      const int pick = a + static_cast<int>(rng.next_u64() %
                                            static_cast<std::uint64_t>(p - a));
      std::swap(perm[static_cast<std::size_t>(a)], perm[static_cast<std::size_t>(pick)]);
    }
    std::vector<int> J(perm.begin(), perm.begin() + k);
    std::sort(J.begin(), J.end());

    Eigen::VectorXd v = Eigen::VectorXd::Zero(p);
    double l1_J = 0.0;
    for (int j : J) {
      v(j) = rng.normal();
      l1_J += std::abs(v(j));
    }
    const double fill = rng.uniform();  // fraction of the cone radius to use
    Eigen::VectorXd dir(p);
    double dir_l1 = 0.0;
    for (int i = 0; i < p; ++i) {
      dir(i) = rng.normal();
      dir_l1 += std::abs(dir(i));
    }
    if (dir_l1 > 0.0) {
      const double target = fill * 3.0 * l1_J;
      for (int i = 0; i < p; ++i)
        if (std::find(J.begin(), J.end(), i) == J.end())
          v(i) = dir(i) / dir_l1 * target;
    }
    Probe probe = refine(J, std::move(v));
    if (probe.ratio < best.ratio) best = std::move(probe);
  }

  RepEstimate out;
  out.kappa = best.ratio;
  out.sparsity = s;
  out.method = RepEstimate::Method::randomized;
  out.certificate_J = best.J;
  out.certificate_v = best.v;
  return out;
}

}  // namespace sparsedep
