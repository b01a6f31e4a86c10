#pragma once

// Randomized property checks shared by the unit tests and the acceptance
// runner. Each returns the number of failing cases.

#include <cmath>
#include <numeric>
#include <vector>

#include "oracles.hpp"

namespace dalnet::testing {

inline NetworkLocation random_location(const Network& net, SplitMix64& rng) {
  const std::size_t s = rng() % net.segment_count();
  return {s, net.length(s) * rng.uniform()};
}

// Random linear extension of the segment order.
inline std::vector<std::size_t> random_extension(const Network& net, SplitMix64& rng) {
  std::vector<std::size_t> left(net.segment_count());
  std::iota(left.begin(), left.end(), 0);
  std::vector<std::size_t> order;
  while (!left.empty()) {
    std::vector<std::size_t> ready;
    for (std::size_t k = 0; k < left.size(); ++k) {
      bool free = true;
      for (std::size_t other : left) free = free && !net.reaches(other, left[k]);
      if (free) ready.push_back(k);
    }
    const std::size_t pick = ready[rng() % ready.size()];
    order.push_back(left[pick]);
    left.erase(left.begin() + static_cast<std::ptrdiff_t>(pick));
  }
  return order;
}

inline std::unique_ptr<IntensityModel> random_model(SplitMix64& rng) {
  const double mu = 0.2 + rng.uniform();
  const double alpha = 0.1 + 0.7 * rng.uniform();
  const double kappa = 0.5 + 3.0 * rng.uniform();
  switch (rng() % 4) {
    case 0: return std::make_unique<HawkesModel>(HawkesParams{mu, alpha, kappa});
    case 1: return std::make_unique<ModifiedHawkesModel>(HawkesParams{mu, alpha, kappa});
    case 2: return std::make_unique<NonlinearHawkesModel>(NonlinearHawkesParams{mu - 0.9, 0.75 * alpha - 0.5, kappa});
    default: return std::make_unique<SelfCorrectingModel>(SelfCorrectingParams{0.3 * mu, 0.2 * alpha});
  }
}

inline int check_quasi_metric(int cases, std::uint64_t seed) {
  SplitMix64 rng(seed);
  int failures = 0;
  for (int c = 0; c < cases; ++c) {
    const auto net = random_network(rng);
    const auto vd = vertex_distances(*net);
    const auto u = random_location(*net, rng), v = random_location(*net, rng), w = random_location(*net, rng);
    const double uv = net->distance(u, v), vw = net->distance(v, w), uw = net->distance(u, w);
    const double vu = net->distance(v, u);
    bool ok = net->distance(u, u) == 0.0 && uv >= 0.0;
    if (std::isfinite(uv) && std::isfinite(vw)) ok = ok && uw <= uv + vw + 1e-12;
    const double ref = location_distance(*net, vd, u, v);
    if (std::isfinite(ref)) {
      ok = ok && std::abs(uv - ref) <= 1e-12 * (1.0 + ref);
      // Directed paths never loop back on an acyclic network.
      if (!(u == v)) ok = ok && std::isinf(vu);
    } else {
      ok = ok && std::isinf(uv);
    }
    failures += !ok;
  }
  return failures;
}

inline int check_topological_order(int cases, std::uint64_t seed) {
  SplitMix64 rng(seed);
  int failures = 0;
  for (int c = 0; c < cases; ++c) {
    const auto net = random_network(rng);
    const auto order = net->topological_order();
    bool ok = order.size() == net->segment_count();
    for (std::size_t i = 0; ok && i < order.size(); ++i) {
      for (std::size_t j = i + 1; j < order.size(); ++j) ok = ok && !net->reaches(order[j], order[i]);
    }
    failures += !ok;
  }
  return failures;
}

// A single point's excitation mass over the network plus the mass that runs
// off the sinks is one.
inline int check_modified_mass(int cases, std::uint64_t seed) {
  SplitMix64 rng(seed);
  int failures = 0;
  for (int c = 0; c < cases; ++c) {
    const auto net = random_network(rng);
    const auto x = random_location(*net, rng);
    const PointPattern p(net, std::vector<PointRecord>{{x.segment, x.offset, 0}});
    const double kappa = 0.3 + 2.0 * rng.uniform();
    const double mu = 0.5, alpha = 1.0;
    const ModifiedHawkesModel model({mu, alpha, kappa});
    const double total = std::log(mu) - log_likelihood(model, p);
    const double excited = (total - mu * net->total_length()) / alpha;

    const double tail = net->length(x.segment) - x.offset;
    double escaped = 0.0;
    for (std::size_t v = 0; v < net->vertex_count(); ++v) {
      if (!net->out_segments(v).empty()) continue;
      std::vector<std::pair<double, double>> paths;
      vertex_paths(*net, net->segment(x.segment).head, v, 0.0, 1.0, paths);
      for (const auto& [length, product] : paths) escaped += std::exp(-kappa * (tail + length)) / product;
    }
    failures += !(std::abs(excited + escaped - 1.0) <= 1e-9);
  }
  return failures;
}

inline int check_mark_normalization(int cases, std::uint64_t seed) {
  SplitMix64 rng(seed);
  int failures = 0;
  for (int c = 0; c < cases; ++c) {
    const auto net = random_network(rng);
    const int k = 2 + static_cast<int>(rng() % 3);
    MultitypeHawkesParams params;
    params.alpha.assign(k, std::vector<double>(k));
    params.kappa.assign(k, std::vector<double>(k));
    for (int a = 0; a < k; ++a) {
      params.mu.push_back(0.1 + rng.uniform());
      for (int b = 0; b < k; ++b) {
        params.alpha[a][b] = 0.5 * rng.uniform();
        params.kappa[a][b] = 0.5 + 2.0 * rng.uniform();
      }
    }
    const MultitypeHawkesModel model(params);
    const PointPattern p = random_pattern(net, rng, 3, k);
    const auto f = mark_distribution(model, p, random_location(*net, rng));
    bool ok = f.size() == static_cast<std::size_t>(k);
    double sum = 0.0;
    for (double q : f) {
      ok = ok && q >= 0.0;
      sum += q;
    }
    failures += !(ok && std::abs(sum - 1.0) <= 1e-12);
  }
  return failures;
}

inline int check_likelihood_extension_invariance(int cases, std::uint64_t seed) {
  SplitMix64 rng(seed);
  int failures = 0;
  for (int c = 0; c < cases; ++c) {
    const auto net = random_network(rng);
    const auto model = random_model(rng);
    const PointPattern p = random_pattern(net, rng, 4);
    const auto order = random_extension(*net, rng);
    const double base = log_likelihood(*model, p);
    failures += !(std::abs(log_likelihood(*model, p, order) - base) <= 1e-10 * (1.0 + std::abs(base)));
  }
  return failures;
}

inline int check_seeded_replay(int cases, std::uint64_t seed) {
  SplitMix64 rng(seed);
  int failures = 0;
  for (int c = 0; c < cases; ++c) {
    const auto net = random_network(rng);
    const auto model = random_model(rng);
    const SimulationConfig cfg{rng() % 2 ? Algorithm::inverse : Algorithm::ogata, rng()};
    const auto a = simulate(*model, net, cfg).points();
    const auto b = simulate(*model, net, cfg).points();
    bool ok = a.size() == b.size();
    for (std::size_t i = 0; ok && i < a.size(); ++i) ok = a[i].segment == b[i].segment && a[i].offset == b[i].offset;
    failures += !ok;
  }
  return failures;
}

}  // namespace dalnet::testing
