#include "dalnet/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "dalnet/error.hpp"

namespace dalnet {

NelderMeadResult nelder_mead(const std::function<double(std::span<const double>)>& f, std::vector<double> x0,
                             const NelderMeadOptions& options) {
  const std::size_t n = x0.size();
  if (n == 0) throw Error(Errc::InvalidParameter, "nothing to optimize");
  NelderMeadResult result;
  auto eval = [&](const std::vector<double>& x) {
    ++result.evaluations;
    const double v = f(x);
    return std::isfinite(v) ? v : std::numeric_limits<double>::infinity();
  };

  std::vector<std::vector<double>> simplex(n + 1, x0);
  for (std::size_t i = 0; i < n; ++i) {
    const double step = options.initial_step * std::max(1.0, std::abs(x0[i]));
    simplex[i + 1][i] += step;
  }
  std::vector<double> values(n + 1);
  for (std::size_t i = 0; i <= n; ++i) values[i] = eval(simplex[i]);

  std::vector<std::size_t> idx(n + 1);
  std::vector<double> centroid(n), trial(n), trial2(n);
  auto point_along = [&](double t, std::vector<double>& out, const std::vector<double>& worst) {
    for (std::size_t k = 0; k < n; ++k) out[k] = centroid[k] + t * (worst[k] - centroid[k]);
  };

  for (result.iterations = 0; result.iterations < options.max_iterations; ++result.iterations) {
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    const auto& best = simplex[idx[0]];

    double diameter = 0.0;
    double scale = 1.0;
    for (std::size_t k = 0; k < n; ++k) scale = std::max(scale, std::abs(best[k]));
    for (std::size_t i = 1; i <= n; ++i) {
      for (std::size_t k = 0; k < n; ++k) diameter = std::max(diameter, std::abs(simplex[idx[i]][k] - best[k]));
    }
    if (diameter / scale < options.tolerance) {
      result.converged = true;
      break;
    }

    const std::size_t worst = idx[n];
    const std::size_t second = idx[n - 1];
    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t k = 0; k < n; ++k) centroid[k] += simplex[idx[i]][k] / static_cast<double>(n);
    }

    point_along(-1.0, trial, simplex[worst]);
    const double fr = eval(trial);
    if (fr < values[idx[0]]) {
      point_along(-2.0, trial2, simplex[worst]);
      const double fe = eval(trial2);
      if (fe < fr) {
        simplex[worst] = trial2;
        values[worst] = fe;
      } else {
        simplex[worst] = trial;
        values[worst] = fr;
      }
      continue;
    }
    if (fr < values[second]) {
      simplex[worst] = trial;
      values[worst] = fr;
      continue;
    }
    // Contraction: outside when the reflection improved on the worst point.
    const bool outside = fr < values[worst];
    point_along(outside ? -0.5 : 0.5, trial2, simplex[worst]);
    const double fc = eval(trial2);
    if (fc < (outside ? fr : values[worst])) {
      simplex[worst] = trial2;
      values[worst] = fc;
      continue;
    }
    // Shrink towards the best vertex.
    const std::size_t b = idx[0];
    for (std::size_t i = 0; i <= n; ++i) {
      if (i == b) continue;
      for (std::size_t k = 0; k < n; ++k) simplex[i][k] = simplex[b][k] + 0.5 * (simplex[i][k] - simplex[b][k]);
      values[i] = eval(simplex[i]);
    }
  }

  const auto best_it = std::min_element(values.begin(), values.end());
  result.x = simplex[static_cast<std::size_t>(best_it - values.begin())];
  result.value = *best_it;
  return result;
}

}  // namespace dalnet
