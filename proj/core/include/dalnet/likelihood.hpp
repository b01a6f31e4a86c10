#pragma once

#include <span>

#include "dalnet/model.hpp"
#include "dalnet/pattern.hpp"

namespace dalnet {

// Sum over points of log lambda*(x, m) minus the integral of the ground
// intensity over the network. Segments are accumulated in `order` when given
// (it must be a linear extension of the segment order), otherwise in the
// network's topological order. Throws DomainError when lambda* vanishes at an
// observed point.
double log_likelihood(const IntensityModel& model, const PointPattern& pattern,
                      std::span<const std::size_t> order = {});

// Log-likelihood contribution of a single segment.
double segment_log_likelihood(const IntensityModel& model, const PointPattern& pattern, std::size_t segment);

}  // namespace dalnet
