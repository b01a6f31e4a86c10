#include "dalnet/fit.hpp"

#include <cmath>
#include <limits>
#include <numeric>

#include <boost/math/tools/minima.hpp>

#include "dalnet/error.hpp"
#include "dalnet/likelihood.hpp"
#include "dalnet/optimize.hpp"
#include "dalnet/random.hpp"

namespace dalnet {

namespace {

bool log_scale(ParamDomain d) { return d != ParamDomain::real; }

double to_free(double value, ParamDomain d) {
  if (!log_scale(d)) return value;
  if (!(value > 0.0)) throw Error(Errc::InvalidParameter, "starting value must be positive on the log scale");
  return std::log(value);
}

double from_free(double z, ParamDomain d) { return log_scale(d) ? std::exp(z) : z; }

// A log-scale coordinate this far out means the likelihood kept improving
// towards 0 or infinity, so no interior maximum was found.
constexpr double kFreeLimit = 650.0;

bool interior(std::span<const double> z, const std::vector<ParameterInfo>& info) {
  for (std::size_t k = 0; k < z.size(); ++k) {
    if (!std::isfinite(z[k]) || (log_scale(info[k].domain) && std::abs(z[k]) > kFreeLimit)) return false;
  }
  return true;
}

// -log L, with impossible parameter points mapped to +inf.
double negative_loglik(const IntensityModel& model, const PointPattern& pattern, std::span<const double> theta) {
  try {
    const auto candidate = model.with_parameters(theta);
    return -log_likelihood(*candidate, pattern);
  } catch (const Error& e) {
    switch (e.code()) {
      case Errc::DomainError:
      case Errc::NonfiniteIntensity:
      case Errc::InvalidParameter:
      case Errc::NegativeRate:
        return std::numeric_limits<double>::infinity();
      default:
        throw;
    }
  }
}

double mean_interevent_distance(const PointPattern& pattern) {
  const auto records = interevent_distances(pattern);
  double sum = 0.0;
  std::size_t n = 0;
  for (const auto& r : records) {
    if (std::isfinite(r.distance) && r.distance > 0.0) {
      sum += r.distance;
      ++n;
    }
  }
  return n == 0 ? 0.0 : sum / static_cast<double>(n);
}

FitResult make_result(const IntensityModel& model, std::vector<double> theta) {
  FitResult r;
  r.family = model.family();
  for (const auto& info : model.parameter_info()) r.names.push_back(info.name);
  r.model = model.with_parameters(theta);
  r.theta = std::move(theta);
  return r;
}

void require_points(const PointPattern& pattern) {
  if (pattern.empty()) throw Error(Errc::DegenerateData, "cannot fit a model to an empty pattern");
}

}  // namespace

std::size_t parameter_index(const IntensityModel& model, const std::string& name) {
  const auto info = model.parameter_info();
  for (std::size_t k = 0; k < info.size(); ++k) {
    if (info[k].name == name) return k;
  }
  throw Error(Errc::UsageError, "model " + model.family() + " has no parameter '" + name + "'");
}

std::vector<double> default_start(const IntensityModel& model, const PointPattern& pattern) {
  const double total = pattern.network().total_length();
  const double rate = static_cast<double>(pattern.size()) / total;
  const double mean_gap = mean_interevent_distance(pattern);
  const double kappa = mean_gap > 0.0 ? 1.0 / mean_gap : 1.0;
  const std::string family = model.family();
  const auto info = model.parameter_info();
  std::vector<double> theta(info.size());
  if (family == "poisson") {
    theta[0] = rate;
  } else if (family == "hawkes" || family == "modified_hawkes") {
    theta[0] = rate;
    theta[1] = 0.5;
    if (theta.size() > 2) theta[2] = kappa;
  } else if (family == "nonlinear_hawkes") {
    theta[0] = std::log(std::max(rate, 1e-12));
    theta[1] = 0.5;
    theta[2] = kappa;
  } else if (family == "self_correcting") {
    // The intensity stays near one when mu * d balances alpha * count.
    theta[1] = 0.5;
    theta[0] = theta[1] * rate;
  } else if (family == "multitype_hawkes") {
    const auto k = static_cast<std::size_t>(model.mark_count());
    for (std::size_t m = 0; m < k; ++m) {
      theta[m] = std::max(static_cast<double>(pattern.count_with_mark(static_cast<int>(m))), 1.0) / total;
    }
    for (std::size_t j = 0; j < k * k; ++j) {
      theta[k + j] = 0.5 / static_cast<double>(k);
      theta[k + k * k + j] = kappa;
    }
  } else {
    theta = model.parameters();
  }
  return theta;
}

FitResult fit_mle(const IntensityModel& model, const PointPattern& pattern, const FitOptions& options) {
  require_points(pattern);
  const auto info = model.parameter_info();
  if (info.empty()) throw Error(Errc::InvalidParameter, "model has no free parameters");
  std::vector<double> theta0 = options.start ? *options.start : default_start(model, pattern);
  if (theta0.size() != info.size()) throw Error(Errc::InvalidParameter, "starting point has the wrong length");

  std::vector<double> z0(info.size());
  for (std::size_t k = 0; k < info.size(); ++k) z0[k] = to_free(theta0[k], info[k].domain);
  auto theta_of = [&](std::span<const double> z) {
    std::vector<double> theta(z.size());
    for (std::size_t k = 0; k < z.size(); ++k) theta[k] = from_free(z[k], info[k].domain);
    return theta;
  };
  auto objective = [&](std::span<const double> z) { return negative_loglik(model, pattern, theta_of(z)); };

  NelderMeadOptions nm;
  nm.max_iterations = options.max_iterations;
  nm.tolerance = options.tolerance;

  SplitMix64 rng(options.seed);
  NelderMeadResult best;
  best.value = std::numeric_limits<double>::infinity();
  int iterations = 0;
  int evaluations = 0;
  const int starts = std::max(1, options.starts);
  for (int s = 0; s < starts; ++s) {
    std::vector<double> z = z0;
    if (s > 0) {
      for (double& v : z) v += options.jitter * (2.0 * rng.uniform() - 1.0);
    }
    NelderMeadResult r = nelder_mead(objective, z, nm);
    iterations += r.iterations;
    evaluations += r.evaluations;
    if (s == 0 || r.value < best.value) best = std::move(r);
  }
  if (!std::isfinite(best.value)) {
    throw Error(Errc::DegenerateData, "log-likelihood is -inf at every explored parameter point");
  }

  FitResult result = make_result(model, theta_of(best.x));
  result.loglik = -best.value;
  result.initial_loglik = -negative_loglik(model, pattern, theta0);
  result.converged = best.converged && interior(best.x, info);
  result.iterations = iterations;
  result.evaluations = evaluations + 1;
  return result;
}

FitResult fit_marginal(const IntensityModel& model, const PointPattern& pattern, std::size_t free_index,
                       const FitOptions& options) {
  require_points(pattern);
  const auto info = model.parameter_info();
  if (free_index >= info.size()) throw Error(Errc::UsageError, "free parameter index out of range");
  std::vector<double> theta = model.parameters();
  const double start = options.start ? options.start->at(free_index) : default_start(model, pattern)[free_index];
  const ParamDomain domain = info[free_index].domain;
  const double z0 = to_free(start, domain);
  const double half_width = log_scale(domain) ? 10.0 : std::max(10.0, 4.0 * std::abs(z0));

  int evaluations = 0;
  auto objective = [&](double z) {
    ++evaluations;
    std::vector<double> trial = theta;
    trial[free_index] = from_free(z, domain);
    const double v = negative_loglik(model, pattern, trial);
    return std::isfinite(v) ? v : std::numeric_limits<double>::max();
  };

  // Brent's method: golden-section steps with parabolic interpolation.
  const double lo = z0 - half_width;
  const double hi = z0 + half_width;
  std::uintmax_t max_iter = static_cast<std::uintmax_t>(options.max_iterations);
  const auto [z_best, value] = boost::math::tools::brent_find_minima(objective, lo, hi, 40, max_iter);

  std::vector<double> estimate = theta;
  estimate[free_index] = from_free(z_best, domain);
  FitResult result = make_result(model, estimate);
  result.loglik = -value;
  std::vector<double> initial = theta;
  initial[free_index] = start;
  result.initial_loglik = -negative_loglik(model, pattern, initial);
  if (result.initial_loglik > result.loglik) {
    // Brent only finds a local minimum; never report worse than the start.
    result = make_result(model, initial);
    result.loglik = -negative_loglik(model, pattern, initial);
    result.initial_loglik = result.loglik;
  }
  const double edge = 1e-6 * half_width;
  result.converged = static_cast<int>(max_iter) < options.max_iterations && z_best > lo + edge && z_best < hi - edge;
  result.iterations = static_cast<int>(max_iter);
  result.evaluations = evaluations;
  return result;
}

}  // namespace dalnet
