#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "dalnet/pattern.hpp"
#include "dalnet/residuals.hpp"

namespace dalnet {

struct KsResult {
  double statistic = 0.0;
  double p_value = 1.0;
  std::size_t n = 0;
};

// P(K > x) for the limiting Kolmogorov distribution.
double kolmogorov_survival(double x);

// One-sample Kolmogorov-Smirnov test against Exp(1). The p-value uses the
// asymptotic distribution with Stephens' small-sample correction.
KsResult ks_exp1(std::span<const double> gaps);
// Interevent distances of a residual pattern; gaps across junctions are
// dropped unless `include_crossing` is set.
KsResult ks_exp1(std::span<const IntereventRecord> records, bool include_crossing);

KsResult ks_two_sample(std::span<const double> a, std::span<const double> b);

struct EnvelopeResult {
  std::vector<double> grid;
  std::vector<double> observed;
  std::vector<double> lower;
  std::vector<double> upper;
  double p_liberal = 0.0;
  double p_conservative = 1.0;
  int rank = 0;  // extreme rank of the observed curve (ties broken by rank length)
  int n_sim = 0;
};

struct EnvelopeOptions {
  int n_sim = 99;
  double alpha = 0.05;   // level of the reported envelope
  double r_max = 4.0;    // the ECDF is evaluated on [0, r_max]
  int grid_points = 81;
  std::uint64_t seed = 0;  // simulation k uses seed + k
};

// ECDF of the interevent distances evaluated on `grid`.
std::vector<double> interevent_ecdf(const PointPattern& pattern, std::span<const double> grid);

// Extreme-rank envelope test of the residual pattern against unit-rate
// Poisson patterns on the residual network.
EnvelopeResult mc_envelope(const ResidualProcess& residual, const EnvelopeOptions& options = {});

}  // namespace dalnet
