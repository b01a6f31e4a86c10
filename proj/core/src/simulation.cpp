#include "dalnet/simulation.hpp"

#include <cmath>
#include <string>

#include "dalnet/error.hpp"

namespace dalnet {

std::string to_string(Algorithm algorithm) { return algorithm == Algorithm::inverse ? "inverse" : "ogata"; }

Algorithm parse_algorithm(const std::string& name) {
  if (name == "inverse") return Algorithm::inverse;
  if (name == "ogata") return Algorithm::ogata;
  throw Error(Errc::UsageError, "unknown algorithm '" + name + "'");
}

namespace {

constexpr int kMaxRootIterations = 200;

double checked(double value, const char* what) {
  if (!std::isfinite(value)) throw Error(Errc::NonfiniteIntensity, std::string(what) + " is not finite");
  return value;
}

int draw_mark(const SegmentIntensity& ev, double t, SplitMix64& rng) {
  if (ev.mark_count() == 1) return 0;
  const auto probs = ev.mark_distribution(t);
  const double u = rng.uniform();
  double acc = 0.0;
  for (std::size_t m = 0; m < probs.size(); ++m) {
    acc += probs[m];
    if (u < acc) return static_cast<int>(m);
  }
  return static_cast<int>(probs.size()) - 1;
}

void place(SegmentIntensity& ev, std::vector<MarkedOffset>& own, double t, SplitMix64& rng, std::size_t& total,
           std::size_t max_points) {
  const int mark = draw_mark(ev, t, rng);
  ev.add_point(t, mark);
  own.push_back({t, mark});
  if (++total > max_points) throw Error(Errc::InvalidParameter, "simulation exceeded the point limit");
}

void simulate_inverse(SegmentIntensity& ev, double length, double tolerance, std::vector<MarkedOffset>& own,
                      SplitMix64& rng, std::size_t& total, std::size_t max_points) {
  double t = 0.0;
  double level = 0.0;
  while (true) {
    const double target = level + rng.exponential();
    const auto next = inverse_step(ev, length, t, target, tolerance);
    if (!next) return;  // leftover mass is discarded
    t = *next;
    place(ev, own, t, rng, total, max_points);
    level = checked(ev.integrated_ground(t), "integrated intensity");
  }
}

void simulate_ogata(SegmentIntensity& ev, double length, std::vector<MarkedOffset>& own, SplitMix64& rng,
                    std::size_t& total, std::size_t max_points) {
  double t = 0.0;
  while (true) {
    const OgataStep step = ogata_step(ev, length, t, rng);
    if (step.kind == OgataStep::Kind::exhausted) return;
    t = step.offset;
    if (step.kind == OgataStep::Kind::accepted) place(ev, own, t, rng, total, max_points);
  }
}

PointPattern run(const IntensityModel& model, std::shared_ptr<const Network> net, const SimulationConfig& cfg,
                 bool marked) {
  if (!net) throw Error(Errc::InvalidParameter, "simulation needs a network");
  if (!(cfg.relative_tolerance > 0.0)) throw Error(Errc::InvalidParameter, "root-solve tolerance must be positive");
  model.check_network(*net);
  SplitMix64 rng(cfg.seed);
  std::vector<std::vector<MarkedOffset>> points(net->segment_count());
  std::size_t total = 0;
  for (std::size_t s : net->topological_order()) {
    auto ev = model.on_segment(*net, s, points);
    const double length = net->length(s);
    if (cfg.algorithm == Algorithm::inverse) {
      simulate_inverse(*ev, length, cfg.relative_tolerance * length, points[s], rng, total, cfg.max_points);
    } else {
      simulate_ogata(*ev, length, points[s], rng, total, cfg.max_points);
    }
  }
  return PointPattern(std::move(net), std::move(points), model.mark_count(), marked);
}

}  // namespace

PointPattern simulate(const IntensityModel& model, std::shared_ptr<const Network> net, const SimulationConfig& cfg) {
  return run(model, std::move(net), cfg, model.mark_count() > 1);
}

PointPattern simulate_marked(const IntensityModel& model, std::shared_ptr<const Network> net,
                             const SimulationConfig& cfg) {
  return run(model, std::move(net), cfg, true);
}

std::optional<double> inverse_step(const SegmentIntensity& segment, double length, double lower, double target,
                                   double tolerance) {
  if (!(length > lower)) return std::nullopt;
  const double end = checked(segment.integrated_ground(length), "integrated intensity");
  if (end < target) return std::nullopt;

  // Bisection safeguarded Newton: a Newton step is taken only when it stays in
  // the bracket and at least halves the previous step.
  double lo = lower;
  double hi = length;
  double x = 0.5 * (lo + hi);
  double dx = hi - lo;
  double dx_old = dx;
  for (int iter = 0; iter < kMaxRootIterations; ++iter) {
    const double f = checked(segment.integrated_ground(x), "integrated intensity") - target;
    if (f == 0.0) break;
    if (f < 0.0) {
      lo = x;
    } else {
      hi = x;
    }
    const double slope = checked(segment.ground_intensity(x), "intensity");
    const bool newton_ok = slope > 1e-12 && x - f / slope > lo && x - f / slope < hi &&
                           std::abs(f) < std::abs(0.5 * dx_old * slope);
    dx_old = dx;
    if (newton_ok) {
      dx = f / slope;
      x -= dx;
    } else {
      dx = 0.5 * (hi - lo);
      x = lo + dx;
    }
    if (std::abs(dx) <= tolerance || hi - lo <= tolerance) break;
    if (iter + 1 == kMaxRootIterations) {
      throw Error(Errc::RootSolveFailure, "inverse method did not reach tolerance in 200 iterations");
    }
  }
  // Points live in the open interval (lower, length).
  if (x >= length) return std::nullopt;
  return std::max(x, std::nextafter(lower, length));
}

OgataStep ogata_step(const SegmentIntensity& segment, double length, double t, SplitMix64& rng) {
  const ThinningBound b = segment.thinning_bound(t);
  const double bound = checked(b.bound, "thinning bound");
  const double step = rng.exponential(bound);
  const double u = rng.uniform();
  if (t + step > length) return {OgataStep::Kind::exhausted, length};
  if (step > b.horizon) return {OgataStep::Kind::advance, t + b.horizon};
  const double s = t + step;
  const double rate = checked(segment.ground_intensity(s), "intensity");
  if (rate > bound * (1.0 + 1e-9)) {
    throw Error(Errc::BoundViolation, "intensity " + std::to_string(rate) + " exceeds thinning bound " +
                                          std::to_string(bound));
  }
  if (u > rate / bound) return {OgataStep::Kind::advance, s};
  return {OgataStep::Kind::accepted, s};
}

}  // namespace dalnet
