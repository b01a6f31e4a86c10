#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "dalnet/network.hpp"
#include "dalnet/pattern.hpp"

namespace dalnet {

struct ThinningBound {
  double bound = 0.0;    // M*: dominates the intensity on [t, t + horizon]
  double horizon = 0.0;  // L* > 0
};

// Conditional intensity restricted to one segment, given the (fixed) points
// upstream of the segment and the points placed on it so far. Offsets passed
// to add_point must be nondecreasing; queries only see own points strictly
// below the query offset.
class SegmentIntensity {
 public:
  virtual ~SegmentIntensity() = default;

  virtual int mark_count() const { return 1; }
  // lambda*(u_i(t), m); for unmarked models the mark is ignored.
  virtual double intensity(double t, int mark = 0) const = 0;
  // Lambda*(u_i(t), m) = integral of intensity(., m) over (0, t).
  virtual double integrated(double t, int mark = 0) const = 0;
  virtual double ground_intensity(double t) const;
  virtual double integrated_ground(double t) const;
  virtual ThinningBound thinning_bound(double t) const = 0;
  virtual void add_point(double t, int mark = 0) = 0;

  // f*(m | u): intensity(t, m) / ground_intensity(t).
  std::vector<double> mark_distribution(double t) const;
};

enum class ParamDomain { positive, nonnegative, real };

struct ParameterInfo {
  std::string name;
  ParamDomain domain = ParamDomain::positive;
};

// A parametric conditional-intensity model. Implementations are immutable and
// their evaluation is a pure function of (location, history, parameters).
class IntensityModel {
 public:
  virtual ~IntensityModel() = default;

  virtual std::string family() const = 0;
  virtual int mark_count() const { return 1; }
  virtual std::vector<ParameterInfo> parameter_info() const = 0;
  virtual std::vector<double> parameters() const = 0;
  virtual std::unique_ptr<IntensityModel> with_parameters(std::span<const double> theta) const = 0;

  // Throws if the model cannot live on `net` (e.g. missing root).
  virtual void check_network(const Network& net) const;

  // Evaluator for `segment`; only points of `history` on segments upstream of
  // `segment` are read.
  virtual std::unique_ptr<SegmentIntensity> on_segment(const Network& net, std::size_t segment,
                                                       SegmentPoints history) const = 0;
};

// lambda*(u, m) given the points of `history` with y -> u.
double conditional_intensity(const IntensityModel& model, const PointPattern& history, const NetworkLocation& u,
                             int mark = 0);
// Lambda*(u, m) along the segment of u, given `history`.
double integrated_intensity(const IntensityModel& model, const PointPattern& history, const NetworkLocation& u,
                            int mark = 0);
double ground_intensity(const IntensityModel& model, const PointPattern& history, const NetworkLocation& u);
std::vector<double> mark_distribution(const IntensityModel& model, const PointPattern& history,
                                      const NetworkLocation& u);
ThinningBound thinning_bounds(const IntensityModel& model, const PointPattern& history, const NetworkLocation& u);

}  // namespace dalnet
