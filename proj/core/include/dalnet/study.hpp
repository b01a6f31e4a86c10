#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "dalnet/fit.hpp"
#include "dalnet/model.hpp"
#include "dalnet/network.hpp"
#include "dalnet/simulation.hpp"

namespace dalnet {

enum class FitMode { joint, marginal, both };

FitMode parse_fit_mode(const std::string& name);

struct StudyConfig {
  std::shared_ptr<const Network> network;
  std::shared_ptr<const IntensityModel> truth;
  int sizes = 4;         // size s scales every length by growth^(s - 1)
  double growth = 1.5;
  int replicates = 1;
  FitMode mode = FitMode::joint;
  Algorithm algorithm = Algorithm::inverse;
  std::uint64_t seed = 0;
  int jobs = 1;
  FitOptions fit;
};

struct StudyEstimate {
  int size = 0;
  int replicate = 0;
  std::string param;  // marginal estimates are named "<param>:marginal"
  double estimate = 0.0;
  bool converged = false;
  double loglik = 0.0;
};

struct StudyFailure {
  int size = 0;
  int replicate = 0;
  std::string message;
};

struct StudyResult {
  std::vector<StudyEstimate> estimates;
  std::vector<StudyFailure> failures;
};

struct SummaryRow {
  int size = 0;
  std::string param;  // "a~b" rows carry the correlation of two joint estimates
  std::size_t n = 0;
  double mean = 0.0;
  double median = 0.0;
  double q1 = 0.0;
  double q3 = 0.0;
  double truth = 0.0;
  double bias = 0.0;
  double mean_abs_error = 0.0;
  double correlation = 0.0;
};

// Seed of replicate r at size s (both 1-based).
std::uint64_t study_seed(const StudyConfig& config, int size, int replicate);

StudyResult run_study(const StudyConfig& config);
std::vector<SummaryRow> summarize(const StudyConfig& config, const StudyResult& result);

double pearson_correlation(std::span<const double> x, std::span<const double> y);
double quantile(std::vector<double> values, double p);

void write_estimates_csv(std::ostream& out, const StudyResult& result);
void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows);

}  // namespace dalnet
