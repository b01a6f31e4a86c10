#include "dalnet/model.hpp"

#include <cmath>

#include "dalnet/error.hpp"

namespace dalnet {

double SegmentIntensity::ground_intensity(double t) const {
  double sum = 0.0;
  for (int m = 0; m < mark_count(); ++m) sum += intensity(t, m);
  return sum;
}

double SegmentIntensity::integrated_ground(double t) const {
  double sum = 0.0;
  for (int m = 0; m < mark_count(); ++m) sum += integrated(t, m);
  return sum;
}

std::vector<double> SegmentIntensity::mark_distribution(double t) const {
  std::vector<double> probs(static_cast<std::size_t>(mark_count()));
  double total = 0.0;
  for (int m = 0; m < mark_count(); ++m) {
    probs[static_cast<std::size_t>(m)] = intensity(t, m);
    total += probs[static_cast<std::size_t>(m)];
  }
  if (!(total > 0.0)) throw Error(Errc::DomainError, "ground intensity is zero; mark distribution undefined");
  for (auto& p : probs) p /= total;
  return probs;
}

void IntensityModel::check_network(const Network&) const {}

namespace {

std::unique_ptr<SegmentIntensity> evaluator_at(const IntensityModel& model, const PointPattern& history,
                                               const NetworkLocation& u, bool inclusive) {
  const Network& net = history.network();
  net.check_location(u);
  model.check_network(net);
  auto eval = model.on_segment(net, u.segment, history.by_segment());
  for (const auto& p : history.on_segment(u.segment)) {
    if (p.offset < u.offset || (inclusive && p.offset == u.offset)) eval->add_point(p.offset, p.mark);
  }
  return eval;
}

void check_mark(const IntensityModel& model, int mark) {
  if (mark < 0 || mark >= model.mark_count()) {
    throw Error(Errc::UnknownMark, "mark " + std::to_string(mark + 1) + " outside the model's mark space");
  }
}

}  // namespace

double conditional_intensity(const IntensityModel& model, const PointPattern& history, const NetworkLocation& u,
                             int mark) {
  check_mark(model, mark);
  return evaluator_at(model, history, u, false)->intensity(u.offset, mark);
}

double integrated_intensity(const IntensityModel& model, const PointPattern& history, const NetworkLocation& u,
                            int mark) {
  check_mark(model, mark);
  return evaluator_at(model, history, u, false)->integrated(u.offset, mark);
}

double ground_intensity(const IntensityModel& model, const PointPattern& history, const NetworkLocation& u) {
  return evaluator_at(model, history, u, false)->ground_intensity(u.offset);
}

std::vector<double> mark_distribution(const IntensityModel& model, const PointPattern& history,
                                      const NetworkLocation& u) {
  return evaluator_at(model, history, u, false)->mark_distribution(u.offset);
}

ThinningBound thinning_bounds(const IntensityModel& model, const PointPattern& history, const NetworkLocation& u) {
  return evaluator_at(model, history, u, true)->thinning_bound(u.offset);
}

}  // namespace dalnet
