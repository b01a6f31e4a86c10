#pragma once

#include <cstdint>
#include <memory>
#include <optional>

#include "dalnet/model.hpp"
#include "dalnet/network.hpp"
#include "dalnet/pattern.hpp"
#include "dalnet/random.hpp"

namespace dalnet {

enum class Algorithm { inverse, ogata };

std::string to_string(Algorithm algorithm);
Algorithm parse_algorithm(const std::string& name);

struct SimulationConfig {
  Algorithm algorithm = Algorithm::inverse;
  std::uint64_t seed = 0;
  // Root-solve tolerance as a fraction of the segment length.
  double relative_tolerance = 1e-10;
  // Guard against explosive parameter choices.
  std::size_t max_points = 10'000'000;
};

// Simulates the model segment by segment in topological order. For models
// with more than one mark the result is a marked pattern.
PointPattern simulate(const IntensityModel& model, std::shared_ptr<const Network> net, const SimulationConfig& cfg);
// Same as simulate, but always returns a marked pattern.
PointPattern simulate_marked(const IntensityModel& model, std::shared_ptr<const Network> net,
                             const SimulationConfig& cfg);

// Solves integrated_ground(t) = target for t in (lower, length). Returns
// nullopt when the segment is exhausted, i.e. integrated_ground(length) < target.
std::optional<double> inverse_step(const SegmentIntensity& segment, double length, double lower, double target,
                                   double tolerance);

struct OgataStep {
  enum class Kind { accepted, advance, exhausted };
  Kind kind = Kind::exhausted;
  double offset = 0.0;  // accepted point, or the new current position
};

// One pass of the modified thinning loop from position t.
OgataStep ogata_step(const SegmentIntensity& segment, double length, double t, SplitMix64& rng);

}  // namespace dalnet
