#include "dalnet/likelihood.hpp"

#include <cmath>
#include <string>

#include "dalnet/error.hpp"

namespace dalnet {

namespace {

void check_marks(const IntensityModel& model, const PointPattern& pattern) {
  if (model.mark_count() > 1 && pattern.mark_count() != model.mark_count()) {
    throw Error(Errc::UnknownMark, "pattern has " + std::to_string(pattern.mark_count()) + " marks but the model has " +
                                       std::to_string(model.mark_count()));
  }
}

double segment_term(const IntensityModel& model, const PointPattern& pattern, std::size_t s) {
  const Network& net = pattern.network();
  auto ev = model.on_segment(net, s, pattern.by_segment());
  double sum = 0.0;
  for (const auto& p : pattern.on_segment(s)) {
    const double rate = ev->intensity(p.offset, p.mark);
    if (!std::isfinite(rate)) throw Error(Errc::NonfiniteIntensity, "intensity is not finite at an observed point");
    if (rate <= 0.0) {
      throw Error(Errc::DomainError, "zero intensity at offset " + std::to_string(p.offset) + " on segment " +
                                         std::to_string(net.segment(s).id));
    }
    sum += std::log(rate);
    ev->add_point(p.offset, p.mark);
  }
  const double mass = ev->integrated_ground(net.length(s));
  if (!std::isfinite(mass)) throw Error(Errc::NonfiniteIntensity, "integrated intensity is not finite");
  return sum - mass;
}

}  // namespace

double log_likelihood(const IntensityModel& model, const PointPattern& pattern, std::span<const std::size_t> order) {
  const Network& net = pattern.network();
  model.check_network(net);
  check_marks(model, pattern);
  if (order.empty()) order = net.topological_order();
  if (order.size() != net.segment_count()) throw Error(Errc::InvalidParameter, "segment order has the wrong length");
  double total = 0.0;
  for (std::size_t s : order) total += segment_term(model, pattern, s);
  return total;
}

double segment_log_likelihood(const IntensityModel& model, const PointPattern& pattern, std::size_t segment) {
  model.check_network(pattern.network());
  check_marks(model, pattern);
  return segment_term(model, pattern, segment);
}

}  // namespace dalnet
