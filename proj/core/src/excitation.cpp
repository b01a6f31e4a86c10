#include "excitation.hpp"

#include <cmath>

namespace dalnet::detail {

Excitation::Excitation(std::shared_ptr<const Kernel> kernel)
    : kernel_(std::move(kernel)), rate_(kernel_->exponential_rate()) {}

void Excitation::add_upstream(double weight, double distance_to_start) {
  if (rate_) {
    upstream_decay_ += weight * std::exp(-*rate_ * distance_to_start);
  } else {
    upstream_.emplace_back(weight, distance_to_start);
  }
}

void Excitation::add_own(double offset) {
  if (rate_) {
    const double gap = own_.empty() ? 0.0 : offset - own_.back();
    own_decay_ = (own_.empty() ? 0.0 : own_decay_ * std::exp(-*rate_ * gap)) + 1.0;
  }
  own_.push_back(offset);
}

double Excitation::own_density(double t, bool inclusive) const {
  if (own_.empty()) return 0.0;
  const double last = own_.back();
  if (rate_ && (t > last || (inclusive && t == last))) {
    return *rate_ * own_decay_ * std::exp(-*rate_ * (t - last));
  }
  double sum = 0.0;
  for (double s : own_) {
    if (s < t || (inclusive && s == t)) {
      sum += kernel_->density(t - s);
    } else {
      break;
    }
  }
  return sum;
}

double Excitation::density_sum(double t) const {
  double sum = own_density(t, false);
  if (rate_) {
    sum += *rate_ * upstream_decay_ * std::exp(-*rate_ * t);
  } else {
    for (const auto& [w, d] : upstream_) sum += w * kernel_->density(d + t);
  }
  return sum;
}

double Excitation::density_sum_right(double t) const {
  double sum = own_density(t, true);
  if (rate_) {
    sum += *rate_ * upstream_decay_ * std::exp(-*rate_ * t);
  } else {
    for (const auto& [w, d] : upstream_) sum += w * kernel_->density(d + t);
  }
  return sum;
}

double Excitation::cdf_sum(double t) const {
  double sum = 0.0;
  if (rate_) {
    sum += -upstream_decay_ * std::expm1(-*rate_ * t);
    if (!own_.empty()) {
      const double last = own_.back();
      if (t >= last) {
        sum += static_cast<double>(own_.size()) - own_decay_ * std::exp(-*rate_ * (t - last));
      } else {
        for (double s : own_) {
          if (s >= t) break;
          sum += -std::expm1(-*rate_ * (t - s));
        }
      }
    }
    return sum;
  }
  for (const auto& [w, d] : upstream_) sum += w * (kernel_->cdf(d + t) - kernel_->cdf(d));
  for (double s : own_) {
    if (s >= t) break;
    sum += kernel_->cdf(t - s);
  }
  return sum;
}

}  // namespace dalnet::detail
