#include "dalnet/residuals.hpp"

#include <cmath>
#include <string>

#include "dalnet/error.hpp"

namespace dalnet {

namespace {

// Transformed offsets of the points with `mark` (all points when mark < 0).
ResidualProcess transform(const IntensityModel& model, const PointPattern& pattern, int mark) {
  const Network& net = pattern.network();
  model.check_network(net);
  NetworkSpec spec = net.to_spec();
  std::vector<std::vector<MarkedOffset>> points(net.segment_count());
  std::vector<std::size_t> zero;
  for (std::size_t s = 0; s < net.segment_count(); ++s) {
    auto ev = model.on_segment(net, s, pattern.by_segment());
    for (const auto& p : pattern.on_segment(s)) {
      if (mark < 0 || p.mark == mark) {
        const double value = mark < 0 ? ev->integrated_ground(p.offset) : ev->integrated(p.offset, mark);
        if (!std::isfinite(value)) throw Error(Errc::NonfiniteIntensity, "integrated intensity is not finite");
        points[s].push_back({value, 0});
      }
      ev->add_point(p.offset, p.mark);
    }
    const double length = net.length(s);
    const double end = mark < 0 ? ev->integrated_ground(length) : ev->integrated(length, mark);
    if (!std::isfinite(end)) throw Error(Errc::NonfiniteIntensity, "integrated intensity is not finite");
    if (end <= 0.0) {
      if (!points[s].empty()) {
        throw Error(Errc::ZeroLengthSegment, "segment " + std::to_string(net.segment(s).id) +
                                                 " has zero residual length but holds points");
      }
      zero.push_back(s);
    }
    // The spec lists segments in index order.
    spec.segments[s].length = std::max(end, 0.0);
  }
  for (auto& v : spec.vertices) v.coords.reset();
  auto residual_net = std::make_shared<const Network>(Network::build(spec, BuildOptions{.allow_zero_length = true}));
  PointPattern residual(residual_net, std::move(points));
  return {residual_net, std::move(residual), std::move(zero)};
}

}  // namespace

ResidualProcess residual_transform(const IntensityModel& model, const PointPattern& pattern) {
  return transform(model, pattern, -1);
}

std::vector<ResidualProcess> residual_transform_marked(const IntensityModel& model, const PointPattern& pattern) {
  if (model.mark_count() == 1) {
    std::vector<ResidualProcess> out;
    out.push_back(transform(model, pattern, -1));
    return out;
  }
  if (pattern.mark_count() != model.mark_count()) {
    throw Error(Errc::UnknownMark, "pattern and model disagree on the number of marks");
  }
  std::vector<ResidualProcess> out;
  for (int m = 0; m < model.mark_count(); ++m) out.push_back(transform(model, pattern, m));
  return out;
}

std::vector<double> residual_stream_gaps(std::span<const ResidualProcess> processes) {
  std::vector<double> gaps;
  double carry = 0.0;  // distance since the last point
  for (const auto& rp : processes) {
    const Network& net = *rp.network;
    for (std::size_t s : net.topological_order()) {
      double position = 0.0;
      for (const auto& p : rp.pattern.on_segment(s)) {
        const double gap = carry + (p.offset - position);
        gaps.push_back(gap);
        carry = 0.0;
        position = p.offset;
      }
      carry += net.length(s) - position;
    }
  }
  return gaps;
}

}  // namespace dalnet
