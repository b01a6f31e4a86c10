#pragma once

#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "dalnet/kernel.hpp"

namespace dalnet::detail {

// Kernel sums for one segment: sources upstream of the segment (weight,
// distance to the segment start) and points already placed on the segment.
// Own points must be added in nondecreasing order of offset. Exponential
// kernels use running sums, so queries at or beyond the last own point are O(1).
class Excitation {
 public:
  explicit Excitation(std::shared_ptr<const Kernel> kernel);

  void add_upstream(double weight, double distance_to_start);
  void add_own(double offset);

  // sum_w w*gamma(D + t) + sum_{s < t} gamma(t - s)
  double density_sum(double t) const;
  // As density_sum, but own points at s == t count (the right limit at t).
  double density_sum_right(double t) const;
  // sum_w w*[Gamma(D + t) - Gamma(D)] + sum_{s < t} Gamma(t - s)
  double cdf_sum(double t) const;

  const Kernel& kernel() const noexcept { return *kernel_; }
  std::size_t own_count() const noexcept { return own_.size(); }

 private:
  double own_density(double t, bool inclusive) const;

  std::shared_ptr<const Kernel> kernel_;
  std::optional<double> rate_;
  std::vector<std::pair<double, double>> upstream_;
  double upstream_decay_ = 0.0;  // sum of w*exp(-rate*D)
  std::vector<double> own_;
  double own_decay_ = 0.0;  // sum of exp(-rate*(last - s)) over own points
};

}  // namespace dalnet::detail
