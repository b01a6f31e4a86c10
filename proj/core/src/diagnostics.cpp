#include "dalnet/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "dalnet/error.hpp"
#include "dalnet/models.hpp"
#include "dalnet/simulation.hpp"

namespace dalnet {

double kolmogorov_survival(double x) {
  if (x <= 0.0) return 1.0;
  if (x < 1.18) {
    // Jacobi theta form, fast for small x.
    const double pi2 = std::numbers::pi * std::numbers::pi;
    double sum = 0.0;
    for (int k = 1; k <= 20; ++k) {
      const double j = 2.0 * k - 1.0;
      sum += std::exp(-j * j * pi2 / (8.0 * x * x));
    }
    return std::clamp(1.0 - std::sqrt(2.0 * std::numbers::pi) / x * sum, 0.0, 1.0);
  }
  double sum = 0.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * x * x);
    sum += (k % 2 == 1 ? term : -term);
    if (term < 1e-16) break;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

namespace {

double corrected(double d, double n) {
  const double root = std::sqrt(n);
  return kolmogorov_survival((root + 0.12 + 0.11 / root) * d);
}

}  // namespace

KsResult ks_exp1(std::span<const double> gaps) {
  if (gaps.empty()) throw Error(Errc::EmptySample, "no interevent distances to test");
  std::vector<double> x(gaps.begin(), gaps.end());
  for (double v : x) {
    if (!(v >= 0.0)) throw Error(Errc::InvalidParameter, "gaps must be nonnegative");
  }
  std::sort(x.begin(), x.end());
  const double n = static_cast<double>(x.size());
  double d = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double f = -std::expm1(-x[i]);
    d = std::max({d, f - static_cast<double>(i) / n, static_cast<double>(i + 1) / n - f});
  }
  return {d, corrected(d, n), x.size()};
}

KsResult ks_exp1(std::span<const IntereventRecord> records, bool include_crossing) {
  std::vector<double> gaps;
  for (const auto& r : records) {
    if (include_crossing || !r.crossing) gaps.push_back(r.distance);
  }
  return ks_exp1(gaps);
}

KsResult ks_two_sample(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw Error(Errc::EmptySample, "two-sample test needs two non-empty samples");
  std::vector<double> x(a.begin(), a.end());
  std::vector<double> y(b.begin(), b.end());
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  const double nx = static_cast<double>(x.size());
  const double ny = static_cast<double>(y.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < x.size() && j < y.size()) {
    const double v = std::min(x[i], y[j]);
    while (i < x.size() && x[i] == v) ++i;
    while (j < y.size() && y[j] == v) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / nx - static_cast<double>(j) / ny));
  }
  const double ne = nx * ny / (nx + ny);
  return {d, corrected(d, ne), x.size() + y.size()};
}

std::vector<double> interevent_ecdf(const PointPattern& pattern, std::span<const double> grid) {
  std::vector<double> d;
  for (const auto& r : interevent_distances(pattern)) d.push_back(r.distance);
  std::sort(d.begin(), d.end());
  std::vector<double> out(grid.size(), 0.0);
  if (d.empty()) return out;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const auto it = std::upper_bound(d.begin(), d.end(), grid[k]);
    out[k] = static_cast<double>(it - d.begin()) / static_cast<double>(d.size());
  }
  return out;
}

EnvelopeResult mc_envelope(const ResidualProcess& residual, const EnvelopeOptions& options) {
  if (options.n_sim < 99) throw Error(Errc::InvalidParameter, "envelope needs at least 99 simulations");
  if (options.grid_points < 2) throw Error(Errc::InvalidParameter, "envelope grid needs at least two points");
  EnvelopeResult result;
  result.n_sim = options.n_sim;
  for (int k = 0; k < options.grid_points; ++k) {
    result.grid.push_back(options.r_max * k / (options.grid_points - 1));
  }

  // Curve 0 is the observed one.
  std::vector<std::vector<double>> curves;
  curves.push_back(interevent_ecdf(residual.pattern, result.grid));
  const PoissonModel unit(1.0);
  for (int i = 0; i < options.n_sim; ++i) {
    SimulationConfig cfg;
    cfg.seed = options.seed + static_cast<std::uint64_t>(i);
    curves.push_back(interevent_ecdf(simulate(unit, residual.network, cfg), result.grid));
  }

  // Pointwise ranks count ties against the curve: min(#{<=}, #{>=}).
  const std::size_t total = curves.size();
  const std::size_t points = result.grid.size();
  std::vector<std::vector<int>> ranks(total, std::vector<int>(points));
  std::vector<double> column(total);
  for (std::size_t g = 0; g < points; ++g) {
    for (std::size_t c = 0; c < total; ++c) column[c] = curves[c][g];
    std::sort(column.begin(), column.end());
    for (std::size_t c = 0; c < total; ++c) {
      const double v = curves[c][g];
      const auto below = std::upper_bound(column.begin(), column.end(), v) - column.begin();
      const auto above = column.end() - std::lower_bound(column.begin(), column.end(), v);
      ranks[c][g] = static_cast<int>(std::min(below, above));
    }
  }
  // Extreme rank length: compare the sorted rank vectors lexicographically,
  // which refines the extreme rank (the first entry) and breaks its ties.
  for (auto& r : ranks) std::sort(r.begin(), r.end());
  result.rank = ranks[0].front();
  int less = 0, less_equal = 0;
  std::vector<int> more_extreme(total, 0);
  for (std::size_t c = 0; c < total; ++c) {
    for (std::size_t d = 0; d < total; ++d) {
      if (ranks[d] < ranks[c]) ++more_extreme[c];
    }
  }
  for (std::size_t c = 0; c < total; ++c) {
    less += ranks[c] < ranks[0];
    less_equal += ranks[c] <= ranks[0];
  }
  result.p_liberal = static_cast<double>(less) / static_cast<double>(total);
  result.p_conservative = static_cast<double>(less_equal) / static_cast<double>(total);

  // The envelope spans the simulated curves outside the alpha most extreme.
  const double cut = std::floor(options.alpha * static_cast<double>(total));
  result.observed = curves[0];
  result.lower.assign(points, 1.0);
  result.upper.assign(points, 0.0);
  for (std::size_t c = 1; c < total; ++c) {
    if (static_cast<double>(more_extreme[c]) < cut) continue;
    for (std::size_t g = 0; g < points; ++g) {
      result.lower[g] = std::min(result.lower[g], curves[c][g]);
      result.upper[g] = std::max(result.upper[g], curves[c][g]);
    }
  }
  return result;
}

}  // namespace dalnet
