#pragma once

#include <memory>
#include <optional>

namespace dalnet {

// Offspring density gamma on (0, inf) with distribution function Gamma.
class Kernel {
 public:
  virtual ~Kernel() = default;

  virtual double density(double distance) const = 0;
  virtual double cdf(double distance) const = 0;
  // Nonincreasing densities let the thinning bound use the current intensity.
  virtual bool nonincreasing() const = 0;
  // Distance beyond which the remaining mass 1 - Gamma(r) drops below `tail`.
  virtual double tail_cutoff(double tail) const;
  // Set for the exponential family, which admits O(1) running sums.
  virtual std::optional<double> exponential_rate() const { return std::nullopt; }
};

// gamma(t) = rate * exp(-rate * t).
class ExponentialKernel final : public Kernel {
 public:
  explicit ExponentialKernel(double rate);

  double rate() const noexcept { return rate_; }
  double density(double distance) const override;
  double cdf(double distance) const override;
  bool nonincreasing() const override { return true; }
  double tail_cutoff(double tail) const override;
  std::optional<double> exponential_rate() const override { return rate_; }

 private:
  double rate_;
};

}  // namespace dalnet
