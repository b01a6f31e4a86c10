#include "dalnet/kernel.hpp"

#include <cmath>
#include <string>

#include "dalnet/error.hpp"

namespace dalnet {

double Kernel::tail_cutoff(double tail) const {
  double hi = 1.0;
  while (1.0 - cdf(hi) > tail) {
    hi *= 2.0;
    if (hi > 1e300) throw Error(Errc::InvalidParameter, "kernel tail does not vanish");
  }
  double lo = 0.0;
  for (int it = 0; it < 200 && hi - lo > 1e-12 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (1.0 - cdf(mid) > tail ? lo : hi) = mid;
  }
  return hi;
}

ExponentialKernel::ExponentialKernel(double rate) : rate_(rate) {
  if (!(rate > 0.0) || !std::isfinite(rate)) {
    throw Error(Errc::InvalidParameter, "kernel rate must be positive, got " + std::to_string(rate));
  }
}

double ExponentialKernel::density(double distance) const {
  return distance < 0.0 ? 0.0 : rate_ * std::exp(-rate_ * distance);
}

double ExponentialKernel::cdf(double distance) const {
  return distance <= 0.0 ? 0.0 : -std::expm1(-rate_ * distance);
}

double ExponentialKernel::tail_cutoff(double tail) const { return -std::log(tail) / rate_; }

}  // namespace dalnet
