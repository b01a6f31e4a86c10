#pragma once

#include <memory>
#include <span>
#include <vector>

#include "dalnet/model.hpp"
#include "dalnet/pattern.hpp"

namespace dalnet {

// The pattern mapped through Lambda* onto an abstract network with the same
// topology, whose segment lengths are Lambda* at each segment end.
struct ResidualProcess {
  std::shared_ptr<const Network> network;
  PointPattern pattern;
  std::vector<std::size_t> zero_length_segments;  // retained, and empty
};

ResidualProcess residual_transform(const IntensityModel& model, const PointPattern& pattern);
// One residual process per mark m, built from lambda*(., m) with the full
// marked history.
std::vector<ResidualProcess> residual_transform_marked(const IntensityModel& model, const PointPattern& pattern);

// Gaps of the residual streams laid end to end: segments in topological order
// and, across calls, in the order the processes are given. Each segment
// contributes its whole interval, so the gap that spans a segment boundary
// includes the empty stretches on both sides. The final, censored stretch is
// dropped. Under the true model these gaps are independent Exp(1) variables.
std::vector<double> residual_stream_gaps(std::span<const ResidualProcess> processes);

}  // namespace dalnet
