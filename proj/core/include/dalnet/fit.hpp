#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "dalnet/model.hpp"
#include "dalnet/pattern.hpp"

namespace dalnet {

struct FitOptions {
  int max_iterations = 2000;
  double tolerance = 1e-8;  // relative simplex diameter
  int starts = 3;           // the initial point plus jittered copies
  double jitter = 0.3;      // half-width of the jitter on the transformed scale
  std::uint64_t seed = 0;
  std::optional<std::vector<double>> start;  // full parameter vector
};

struct FitResult {
  std::string family;
  std::vector<std::string> names;
  std::vector<double> theta;
  double loglik = 0.0;
  double initial_loglik = 0.0;
  bool converged = false;
  int iterations = 0;
  int evaluations = 0;
  std::shared_ptr<const IntensityModel> model;  // the model at theta
};

// Moment-based starting point for the family of `model`.
std::vector<double> default_start(const IntensityModel& model, const PointPattern& pattern);

// Joint maximum likelihood over all parameters of the family of `model`.
// Positive and nonnegative parameters are optimized on the log scale.
FitResult fit_mle(const IntensityModel& model, const PointPattern& pattern, const FitOptions& options = {});

// Maximizes over parameter `free_index` only; the others stay at their values
// in `model`.
FitResult fit_marginal(const IntensityModel& model, const PointPattern& pattern, std::size_t free_index,
                       const FitOptions& options = {});

std::size_t parameter_index(const IntensityModel& model, const std::string& name);

}  // namespace dalnet
