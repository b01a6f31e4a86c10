#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "dalnet/kernel.hpp"
#include "dalnet/model.hpp"

namespace dalnet {

// Remaining kernel mass below which modified-Hawkes paths are dropped.
inline constexpr double kPathTailMass = 1e-12;

// Poisson process with constant rate `lambda` or a caller-supplied rate
// function of (segment index, offset).
class PoissonModel final : public IntensityModel {
 public:
  using RateFunction = std::function<double(std::size_t segment, double offset)>;
  using BoundFunction = std::function<double(std::size_t segment)>;

  explicit PoissonModel(double lambda);
  // `bound(segment)` must dominate the rate over the whole segment; it is only
  // needed for thinning.
  PoissonModel(RateFunction rate, BoundFunction bound = {});

  bool homogeneous() const noexcept { return !rate_; }
  double lambda() const noexcept { return lambda_; }

  std::string family() const override { return "poisson"; }
  std::vector<ParameterInfo> parameter_info() const override;
  std::vector<double> parameters() const override;
  std::unique_ptr<IntensityModel> with_parameters(std::span<const double> theta) const override;
  std::unique_ptr<SegmentIntensity> on_segment(const Network& net, std::size_t segment,
                                               SegmentPoints history) const override;

 private:
  double lambda_ = 0.0;
  RateFunction rate_;
  BoundFunction bound_;
};

struct HawkesParams {
  double mu = 1.0;     // immigrant intensity per unit length
  double alpha = 0.5;  // mean offspring count
  double kappa = 1.0;  // exponential kernel rate
};

// lambda*(u) = mu + alpha * sum_{x -> u} gamma(d(x, u)).
class HawkesModel final : public IntensityModel {
 public:
  explicit HawkesModel(const HawkesParams& params);
  // Any offspring kernel; parameters() then holds only (mu, alpha).
  HawkesModel(double mu, double alpha, std::shared_ptr<const Kernel> kernel);

  const HawkesParams& params() const noexcept { return params_; }

  std::string family() const override { return "hawkes"; }
  std::vector<ParameterInfo> parameter_info() const override;
  std::vector<double> parameters() const override;
  std::unique_ptr<IntensityModel> with_parameters(std::span<const double> theta) const override;
  std::unique_ptr<SegmentIntensity> on_segment(const Network& net, std::size_t segment,
                                               SegmentPoints history) const override;

 private:
  HawkesParams params_;
  std::shared_ptr<const Kernel> kernel_;
  bool custom_kernel_ = false;
};

// Hawkes variant whose clusters split evenly at diverging junctions:
// lambda*(u) = mu + alpha * sum_x sum_{p in P(x->u)} gamma(|p|) / n_p.
class ModifiedHawkesModel final : public IntensityModel {
 public:
  explicit ModifiedHawkesModel(const HawkesParams& params);
  ModifiedHawkesModel(double mu, double alpha, std::shared_ptr<const Kernel> kernel);

  const HawkesParams& params() const noexcept { return params_; }

  std::string family() const override { return "modified_hawkes"; }
  std::vector<ParameterInfo> parameter_info() const override;
  std::vector<double> parameters() const override;
  std::unique_ptr<IntensityModel> with_parameters(std::span<const double> theta) const override;
  std::unique_ptr<SegmentIntensity> on_segment(const Network& net, std::size_t segment,
                                               SegmentPoints history) const override;

 private:
  HawkesParams params_;
  std::shared_ptr<const Kernel> kernel_;
  bool custom_kernel_ = false;
};

struct NonlinearHawkesParams {
  double mu = 0.0;     // any real
  double alpha = 0.0;  // any real; negative values give regular patterns
  double kappa = 1.0;
};

// lambda*(u) = exp[mu + alpha * sum_{x -> u} gamma(d(x, u))].
class NonlinearHawkesModel final : public IntensityModel {
 public:
  explicit NonlinearHawkesModel(const NonlinearHawkesParams& params);

  const NonlinearHawkesParams& params() const noexcept { return params_; }

  std::string family() const override { return "nonlinear_hawkes"; }
  std::vector<ParameterInfo> parameter_info() const override;
  std::vector<double> parameters() const override;
  std::unique_ptr<IntensityModel> with_parameters(std::span<const double> theta) const override;
  std::unique_ptr<SegmentIntensity> on_segment(const Network& net, std::size_t segment,
                                               SegmentPoints history) const override;

 private:
  NonlinearHawkesParams params_;
  std::shared_ptr<const Kernel> kernel_;
};

struct SelfCorrectingParams {
  double mu = 1.0;
  double alpha = 0.0;
};

// lambda*(u) = exp{mu * d(v0, u) - alpha * |x on sp(v0, u)|}; the root v0 is
// the network's root and sp is the tie-broken shortest root path.
class SelfCorrectingModel final : public IntensityModel {
 public:
  explicit SelfCorrectingModel(const SelfCorrectingParams& params);

  const SelfCorrectingParams& params() const noexcept { return params_; }

  std::string family() const override { return "self_correcting"; }
  std::vector<ParameterInfo> parameter_info() const override;
  std::vector<double> parameters() const override;
  std::unique_ptr<IntensityModel> with_parameters(std::span<const double> theta) const override;
  void check_network(const Network& net) const override;
  std::unique_ptr<SegmentIntensity> on_segment(const Network& net, std::size_t segment,
                                               SegmentPoints history) const override;

 private:
  SelfCorrectingParams params_;
};

struct MultitypeHawkesParams {
  std::vector<double> mu;                  // K baselines
  std::vector<std::vector<double>> alpha;  // alpha[source][target]
  std::vector<std::vector<double>> kappa;  // kernel rates, same layout
};

// lambda*(u, m) = mu_m + sum_{x_i -> u} alpha[m_i][m] * gamma_{m_i, m}(d(x_i, u)).
class MultitypeHawkesModel final : public IntensityModel {
 public:
  explicit MultitypeHawkesModel(const MultitypeHawkesParams& params);

  const MultitypeHawkesParams& params() const noexcept { return params_; }

  std::string family() const override { return "multitype_hawkes"; }
  int mark_count() const override { return static_cast<int>(params_.mu.size()); }
  std::vector<ParameterInfo> parameter_info() const override;
  std::vector<double> parameters() const override;
  std::unique_ptr<IntensityModel> with_parameters(std::span<const double> theta) const override;
  std::unique_ptr<SegmentIntensity> on_segment(const Network& net, std::size_t segment,
                                               SegmentPoints history) const override;

 private:
  MultitypeHawkesParams params_;
  std::vector<std::vector<std::shared_ptr<const Kernel>>> kernels_;
};

}  // namespace dalnet
