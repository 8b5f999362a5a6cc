#pragma once

#include <functional>

namespace sparsedep {

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;  // |last refinement change|
  int intervals = 0;
};

// Composite Simpson with interval doubling until the refinement change drops
// below tol (relative to max(1, |I|)).
QuadratureResult integrate(const std::function<double(double)>& f, double a,
                           double b, double tol = 1e-10,
                           int max_intervals = 1 << 20);

}  // namespace sparsedep
