#include "sparsedep/quadrature.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace sparsedep {

namespace {

double simpson(const std::function<double(double)>& f, double a, double b, int intervals) {
  const double h = (b - a) / intervals;
  double odd = 0.0, even = 0.0;
  for (int i = 1; i < intervals; i += 2) odd += f(a + i * h);
  for (int i = 2; i < intervals; i += 2) even += f(a + i * h);
  return h / 3.0 * (f(a) + f(b) + 4.0 * odd + 2.0 * even);
}

}  // namespace

QuadratureResult integrate(const std::function<double(double)>& f, double a,
                           double b, double tol, int max_intervals) {
  if (!(b > a)) throw std::invalid_argument("integrate: requires b > a");
  int intervals = 64;
  double prev = simpson(f, a, b, intervals);
  QuadratureResult out{prev, std::abs(prev), intervals};
  while (intervals < max_intervals) {
    intervals *= 2;
    double cur = simpson(f, a, b, intervals);
    out = {cur, std::abs(cur - prev), intervals};
    if (!std::isfinite(cur)) throw std::invalid_argument("integrate: non-finite integrand");
    if (out.error_estimate <= tol * std::max(1.0, std::abs(cur))) return out;
    prev = cur;
  }
  return out;
}

}  // namespace sparsedep
