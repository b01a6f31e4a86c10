#pragma once

#include <functional>
#include <span>
#include <vector>

namespace dalnet {

struct NelderMeadOptions {
  int max_iterations = 2000;
  // Stop when the simplex diameter, relative to max(1, |best|), drops below this.
  double tolerance = 1e-8;
  double initial_step = 0.1;
};

struct NelderMeadResult {
  std::vector<double> x;
  double value = 0.0;
  bool converged = false;
  int iterations = 0;
  int evaluations = 0;
};

// Minimizes f. Non-finite values act as +inf, so they work as hard barriers.
NelderMeadResult nelder_mead(const std::function<double(std::span<const double>)>& f, std::vector<double> x0,
                             const NelderMeadOptions& options = {});

}  // namespace dalnet
