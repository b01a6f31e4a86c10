#include "dalnet/models.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dalnet/error.hpp"
#include "dalnet/quadrature.hpp"
#include "excitation.hpp"

namespace dalnet {

namespace {

using detail::Excitation;

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(Errc::InvalidParameter, what);
}

bool finite_positive(double v) { return std::isfinite(v) && v > 0.0; }

void check_history(const Network& net, SegmentPoints history) {
  if (history.size() != net.segment_count()) {
    throw Error(Errc::InvalidParameter, "history does not match the network's segments");
  }
}

// Calls fn(point, distance from the point to the start of `segment`) for every
// history point upstream of `segment`.
template <typename Fn>
void for_each_upstream(const Network& net, std::size_t segment, SegmentPoints history, Fn&& fn) {
  const std::size_t tail = net.segment(segment).tail;
  for (std::size_t j = 0; j < net.segment_count(); ++j) {
    if (history[j].empty() || !net.reaches(j, segment)) continue;
    const Segment& sj = net.segment(j);
    const double mid = net.vertex_distance(sj.head, tail);
    for (const auto& p : history[j]) fn(p, (sj.length - p.offset) + mid);
  }
}

class HomogeneousPoissonSegment final : public SegmentIntensity {
 public:
  HomogeneousPoissonSegment(double lambda, double length) : lambda_(lambda), length_(length) {}
  double intensity(double, int) const override { return lambda_; }
  double integrated(double t, int) const override { return lambda_ * t; }
  ThinningBound thinning_bound(double t) const override { return {lambda_, length_ - t}; }
  void add_point(double, int) override {}

 private:
  double lambda_;
  double length_;
};

class InhomogeneousPoissonSegment final : public SegmentIntensity {
 public:
  InhomogeneousPoissonSegment(const PoissonModel::RateFunction& rate, const PoissonModel::BoundFunction& bound,
                              std::size_t segment, double length)
      : rate_(rate), bound_(bound), segment_(segment), length_(length) {}

  double intensity(double t, int) const override {
    const double value = rate_(segment_, t);
    if (value < 0.0) throw Error(Errc::NegativeRate, "rate function returned " + std::to_string(value));
    return value;
  }
  double integrated(double t, int) const override {
    return adaptive_simpson([this](double s) { return intensity(s, 0); }, 0.0, t, 1e-12);
  }
  ThinningBound thinning_bound(double t) const override {
    if (!bound_) throw Error(Errc::InvalidParameter, "thinning needs an upper bound for the rate function");
    return {bound_(segment_), length_ - t};
  }
  void add_point(double, int) override {}

 private:
  PoissonModel::RateFunction rate_;
  PoissonModel::BoundFunction bound_;
  std::size_t segment_;
  double length_;
};

class HawkesSegment final : public SegmentIntensity {
 public:
  HawkesSegment(double mu, double alpha, std::shared_ptr<const Kernel> kernel, double length)
      : mu_(mu), alpha_(alpha), length_(length), excitation_(std::move(kernel)) {}

  Excitation& excitation() { return excitation_; }

  double intensity(double t, int) const override { return mu_ + alpha_ * excitation_.density_sum(t); }
  double integrated(double t, int) const override { return mu_ * t + alpha_ * excitation_.cdf_sum(t); }
  ThinningBound thinning_bound(double t) const override {
    if (!excitation_.kernel().nonincreasing()) {
      throw Error(Errc::InvalidParameter, "thinning bound needs a nonincreasing kernel");
    }
    return {mu_ + alpha_ * excitation_.density_sum_right(t), length_ - t};
  }
  void add_point(double t, int) override { excitation_.add_own(t); }

 private:
  double mu_;
  double alpha_;
  double length_;
  Excitation excitation_;
};

class NonlinearHawkesSegment final : public SegmentIntensity {
 public:
  NonlinearHawkesSegment(const NonlinearHawkesParams& params, std::shared_ptr<const Kernel> kernel, double length)
      : params_(params), length_(length), excitation_(std::move(kernel)) {}

  Excitation& excitation() { return excitation_; }

  double intensity(double t, int) const override {
    return std::exp(params_.mu + params_.alpha * excitation_.density_sum(t));
  }

  double integrated(double t, int) const override {
    if (t >= last_) return cached_ + piece(last_, t);
    // Query below the last own point: rebuild from the start, one piece per
    // gap between own points so the integrand is smooth on each piece.
    double total = 0.0;
    double lo = 0.0;
    for (double s : own_) {
      if (s >= t) break;
      total += piece(lo, s);
      lo = s;
    }
    return total + piece(lo, t);
  }

  ThinningBound thinning_bound(double t) const override {
    if (params_.alpha >= 0.0) {
      return {std::exp(params_.mu + params_.alpha * excitation_.density_sum_right(t)), length_ - t};
    }
    return {std::exp(params_.mu), length_ - t};
  }

  void add_point(double t, int) override {
    cached_ = integrated(t, 0);
    last_ = t;
    own_.push_back(t);
    excitation_.add_own(t);
  }

 private:
  double piece(double a, double b) const {
    if (!(b > a)) return 0.0;
    // Own points at s <= a are already placed; inside (a, b) the integrand
    // has no kinks, so the density seen from the right of a is the one to use.
    return adaptive_simpson(
        [this, a](double s) {
          const double d = (s == a) ? excitation_.density_sum_right(s) : excitation_.density_sum(s);
          return std::exp(params_.mu + params_.alpha * d);
        },
        a, b, 1e-12);
  }

  NonlinearHawkesParams params_;
  double length_;
  Excitation excitation_;
  std::vector<double> own_;
  double last_ = 0.0;
  double cached_ = 0.0;
};

class SelfCorrectingSegment final : public SegmentIntensity {
 public:
  SelfCorrectingSegment(const SelfCorrectingParams& params, double root_distance, double root_count,
                        double length)
      : params_(params), root_distance_(root_distance), root_count_(root_count), length_(length) {}

  double intensity(double t, int) const override {
    return std::exp(params_.mu * (root_distance_ + t) - params_.alpha * (root_count_ + count_below(t)));
  }

  double integrated(double t, int) const override {
    if (t >= last_) return cached_ + piece(last_, t, static_cast<double>(own_.size()));
    double total = 0.0;
    double lo = 0.0;
    double j = 0.0;
    for (double s : own_) {
      if (s >= t) break;
      total += piece(lo, s, j);
      lo = s;
      j += 1.0;
    }
    return total + piece(lo, t, j);
  }

  ThinningBound thinning_bound(double t) const override {
    // Absent new points the intensity grows along the segment, so its value
    // at the segment end dominates.
    const double count = static_cast<double>(std::upper_bound(own_.begin(), own_.end(), t) - own_.begin());
    return {std::exp(params_.mu * (root_distance_ + length_) - params_.alpha * (root_count_ + count)),
            length_ - t};
  }

  void add_point(double t, int) override {
    cached_ = integrated(t, 0);
    last_ = t;
    own_.push_back(t);
  }

 private:
  double count_below(double t) const {
    return static_cast<double>(std::lower_bound(own_.begin(), own_.end(), t) - own_.begin());
  }

  // Integral over (a, b) with j own points below a.
  double piece(double a, double b, double j) const {
    if (!(b > a)) return 0.0;
    const double level = params_.mu * (root_distance_ + a) - params_.alpha * (root_count_ + j);
    return std::exp(level) * std::expm1(params_.mu * (b - a)) / params_.mu;
  }

  SelfCorrectingParams params_;
  double root_distance_;
  double root_count_;
  double length_;
  std::vector<double> own_;
  double last_ = 0.0;
  double cached_ = 0.0;
};

class MultitypeHawkesSegment final : public SegmentIntensity {
 public:
  MultitypeHawkesSegment(const MultitypeHawkesParams& params,
                         const std::vector<std::vector<std::shared_ptr<const Kernel>>>& kernels, double length)
      : params_(params), length_(length) {
    const std::size_t k = params.mu.size();
    excitation_.resize(k);
    for (std::size_t a = 0; a < k; ++a) {
      for (std::size_t m = 0; m < k; ++m) excitation_[a].emplace_back(kernels[a][m]);
    }
  }

  void add_upstream(int mark, double distance) {
    for (auto& e : excitation_.at(static_cast<std::size_t>(mark))) e.add_upstream(1.0, distance);
  }

  int mark_count() const override { return static_cast<int>(params_.mu.size()); }

  double intensity(double t, int mark) const override {
    const auto m = static_cast<std::size_t>(mark);
    double value = params_.mu.at(m);
    for (std::size_t a = 0; a < excitation_.size(); ++a) {
      value += params_.alpha[a][m] * excitation_[a][m].density_sum(t);
    }
    return value;
  }

  double integrated(double t, int mark) const override {
    const auto m = static_cast<std::size_t>(mark);
    double value = params_.mu.at(m) * t;
    for (std::size_t a = 0; a < excitation_.size(); ++a) {
      value += params_.alpha[a][m] * excitation_[a][m].cdf_sum(t);
    }
    return value;
  }

  ThinningBound thinning_bound(double t) const override {
    double bound = 0.0;
    for (std::size_t m = 0; m < params_.mu.size(); ++m) {
      bound += params_.mu[m];
      for (std::size_t a = 0; a < excitation_.size(); ++a) {
        bound += params_.alpha[a][m] * excitation_[a][m].density_sum_right(t);
      }
    }
    return {bound, length_ - t};
  }

  void add_point(double t, int mark) override {
    if (mark < 0 || mark >= mark_count()) throw Error(Errc::UnknownMark, "mark " + std::to_string(mark + 1));
    for (auto& e : excitation_[static_cast<std::size_t>(mark)]) e.add_own(t);
  }

 private:
  MultitypeHawkesParams params_;
  double length_;
  std::vector<std::vector<Excitation>> excitation_;  // [source mark][target mark]
};

void check_hawkes(double mu, double alpha) {
  require(finite_positive(mu), "hawkes mu must be positive");
  require(finite_positive(alpha), "hawkes alpha must be positive");
}

}  // namespace

// --- Poisson -----------------------------------------------------------------

PoissonModel::PoissonModel(double lambda) : lambda_(lambda) {
  require(std::isfinite(lambda) && lambda >= 0.0, "poisson lambda must be nonnegative");
}

PoissonModel::PoissonModel(RateFunction rate, BoundFunction bound)
    : rate_(std::move(rate)), bound_(std::move(bound)) {
  require(static_cast<bool>(rate_), "poisson rate function is empty");
}

std::vector<ParameterInfo> PoissonModel::parameter_info() const {
  if (!homogeneous()) return {};
  return {{"lambda", ParamDomain::nonnegative}};
}

std::vector<double> PoissonModel::parameters() const {
  if (!homogeneous()) return {};
  return {lambda_};
}

std::unique_ptr<IntensityModel> PoissonModel::with_parameters(std::span<const double> theta) const {
  if (!homogeneous()) {
    require(theta.empty(), "inhomogeneous poisson has no free parameters");
    return std::make_unique<PoissonModel>(rate_, bound_);
  }
  require(theta.size() == 1, "poisson takes one parameter");
  return std::make_unique<PoissonModel>(theta[0]);
}

std::unique_ptr<SegmentIntensity> PoissonModel::on_segment(const Network& net, std::size_t segment,
                                                           SegmentPoints) const {
  if (homogeneous()) return std::make_unique<HomogeneousPoissonSegment>(lambda_, net.length(segment));
  return std::make_unique<InhomogeneousPoissonSegment>(rate_, bound_, segment, net.length(segment));
}

// --- Hawkes ------------------------------------------------------------------

HawkesModel::HawkesModel(const HawkesParams& params)
    : params_(params), kernel_(std::make_shared<ExponentialKernel>(params.kappa)) {
  check_hawkes(params.mu, params.alpha);
}

HawkesModel::HawkesModel(double mu, double alpha, std::shared_ptr<const Kernel> kernel)
    : params_{mu, alpha, 0.0}, kernel_(std::move(kernel)), custom_kernel_(true) {
  check_hawkes(mu, alpha);
  require(kernel_ != nullptr, "hawkes kernel is null");
  if (auto rate = kernel_->exponential_rate()) params_.kappa = *rate;
}

std::vector<ParameterInfo> HawkesModel::parameter_info() const {
  std::vector<ParameterInfo> info{{"mu", ParamDomain::positive}, {"alpha", ParamDomain::positive}};
  if (!custom_kernel_) info.push_back({"kappa", ParamDomain::positive});
  return info;
}

std::vector<double> HawkesModel::parameters() const {
  if (custom_kernel_) return {params_.mu, params_.alpha};
  return {params_.mu, params_.alpha, params_.kappa};
}

std::unique_ptr<IntensityModel> HawkesModel::with_parameters(std::span<const double> theta) const {
  if (custom_kernel_) {
    require(theta.size() == 2, "hawkes with a custom kernel takes (mu, alpha)");
    return std::make_unique<HawkesModel>(theta[0], theta[1], kernel_);
  }
  require(theta.size() == 3, "hawkes takes (mu, alpha, kappa)");
  return std::make_unique<HawkesModel>(HawkesParams{theta[0], theta[1], theta[2]});
}

std::unique_ptr<SegmentIntensity> HawkesModel::on_segment(const Network& net, std::size_t segment,
                                                          SegmentPoints history) const {
  check_history(net, history);
  auto eval = std::make_unique<HawkesSegment>(params_.mu, params_.alpha, kernel_, net.length(segment));
  for_each_upstream(net, segment, history,
                    [&](const MarkedOffset&, double distance) { eval->excitation().add_upstream(1.0, distance); });
  return eval;
}

// --- Modified Hawkes -----------------------------------------------------------

ModifiedHawkesModel::ModifiedHawkesModel(const HawkesParams& params)
    : params_(params), kernel_(std::make_shared<ExponentialKernel>(params.kappa)) {
  check_hawkes(params.mu, params.alpha);
}

ModifiedHawkesModel::ModifiedHawkesModel(double mu, double alpha, std::shared_ptr<const Kernel> kernel)
    : params_{mu, alpha, 0.0}, kernel_(std::move(kernel)), custom_kernel_(true) {
  check_hawkes(mu, alpha);
  require(kernel_ != nullptr, "hawkes kernel is null");
  if (auto rate = kernel_->exponential_rate()) params_.kappa = *rate;
}

std::vector<ParameterInfo> ModifiedHawkesModel::parameter_info() const {
  std::vector<ParameterInfo> info{{"mu", ParamDomain::positive}, {"alpha", ParamDomain::positive}};
  if (!custom_kernel_) info.push_back({"kappa", ParamDomain::positive});
  return info;
}

std::vector<double> ModifiedHawkesModel::parameters() const {
  if (custom_kernel_) return {params_.mu, params_.alpha};
  return {params_.mu, params_.alpha, params_.kappa};
}

std::unique_ptr<IntensityModel> ModifiedHawkesModel::with_parameters(std::span<const double> theta) const {
  if (custom_kernel_) {
    require(theta.size() == 2, "modified hawkes with a custom kernel takes (mu, alpha)");
    return std::make_unique<ModifiedHawkesModel>(theta[0], theta[1], kernel_);
  }
  require(theta.size() == 3, "modified hawkes takes (mu, alpha, kappa)");
  return std::make_unique<ModifiedHawkesModel>(HawkesParams{theta[0], theta[1], theta[2]});
}

std::unique_ptr<SegmentIntensity> ModifiedHawkesModel::on_segment(const Network& net, std::size_t segment,
                                                                  SegmentPoints history) const {
  check_history(net, history);
  auto eval = std::make_unique<HawkesSegment>(params_.mu, params_.alpha, kernel_, net.length(segment));
  const double cutoff = kernel_->tail_cutoff(kPathTailMass);
  const std::size_t tail = net.segment(segment).tail;
  for (std::size_t j = 0; j < net.segment_count(); ++j) {
    if (history[j].empty() || !net.reaches(j, segment)) continue;
    const Segment& sj = net.segment(j);
    const auto paths = net.enumerate_vertex_paths(sj.head, tail, cutoff);
    for (const auto& p : history[j]) {
      const double exit = sj.length - p.offset;
      for (const auto& path : paths) {
        const double distance = exit + path.length;
        if (distance > cutoff) continue;
        eval->excitation().add_upstream(1.0 / static_cast<double>(path.split_product), distance);
      }
    }
  }
  return eval;
}

// --- Non-linear Hawkes -------------------------------------------------------

NonlinearHawkesModel::NonlinearHawkesModel(const NonlinearHawkesParams& params)
    : params_(params), kernel_(std::make_shared<ExponentialKernel>(params.kappa)) {
  require(std::isfinite(params.mu), "nonlinear hawkes mu must be finite");
  require(std::isfinite(params.alpha), "nonlinear hawkes alpha must be finite");
}

std::vector<ParameterInfo> NonlinearHawkesModel::parameter_info() const {
  return {{"mu", ParamDomain::real}, {"alpha", ParamDomain::real}, {"kappa", ParamDomain::positive}};
}

std::vector<double> NonlinearHawkesModel::parameters() const { return {params_.mu, params_.alpha, params_.kappa}; }

std::unique_ptr<IntensityModel> NonlinearHawkesModel::with_parameters(std::span<const double> theta) const {
  require(theta.size() == 3, "nonlinear hawkes takes (mu, alpha, kappa)");
  return std::make_unique<NonlinearHawkesModel>(NonlinearHawkesParams{theta[0], theta[1], theta[2]});
}

std::unique_ptr<SegmentIntensity> NonlinearHawkesModel::on_segment(const Network& net, std::size_t segment,
                                                                   SegmentPoints history) const {
  check_history(net, history);
  auto eval = std::make_unique<NonlinearHawkesSegment>(params_, kernel_, net.length(segment));
  for_each_upstream(net, segment, history,
                    [&](const MarkedOffset&, double distance) { eval->excitation().add_upstream(1.0, distance); });
  return eval;
}

// --- Self-correcting -----------------------------------------------------------

SelfCorrectingModel::SelfCorrectingModel(const SelfCorrectingParams& params) : params_(params) {
  require(finite_positive(params.mu), "self-correcting mu must be positive");
  require(std::isfinite(params.alpha) && params.alpha >= 0.0, "self-correcting alpha must be nonnegative");
}

std::vector<ParameterInfo> SelfCorrectingModel::parameter_info() const {
  return {{"mu", ParamDomain::positive}, {"alpha", ParamDomain::nonnegative}};
}

std::vector<double> SelfCorrectingModel::parameters() const { return {params_.mu, params_.alpha}; }

std::unique_ptr<IntensityModel> SelfCorrectingModel::with_parameters(std::span<const double> theta) const {
  require(theta.size() == 2, "self-correcting takes (mu, alpha)");
  return std::make_unique<SelfCorrectingModel>(SelfCorrectingParams{theta[0], theta[1]});
}

void SelfCorrectingModel::check_network(const Network& net) const {
  if (!net.root()) throw Error(Errc::NoRootDesignated, "self-correcting model needs a root vertex");
  if (!net.root_reaches_all()) throw Error(Errc::RootCannotReach, "root does not reach every segment");
}

std::unique_ptr<SegmentIntensity> SelfCorrectingModel::on_segment(const Network& net, std::size_t segment,
                                                                  SegmentPoints history) const {
  check_history(net, history);
  const RootPath& path = net.root_path_to_vertex(net.segment(segment).tail);
  double count = 0.0;
  for (std::size_t s : path.segments) count += static_cast<double>(history[s].size());
  return std::make_unique<SelfCorrectingSegment>(params_, path.distance, count, net.length(segment));
}

// --- Multitype Hawkes ----------------------------------------------------------

MultitypeHawkesModel::MultitypeHawkesModel(const MultitypeHawkesParams& params) : params_(params) {
  const std::size_t k = params.mu.size();
  require(k >= 1, "multitype hawkes needs at least one mark");
  require(params.alpha.size() == k && params.kappa.size() == k, "alpha and kappa must be K x K");
  for (std::size_t a = 0; a < k; ++a) {
    require(finite_positive(params.mu[a]), "multitype mu must be positive");
    require(params.alpha[a].size() == k && params.kappa[a].size() == k, "alpha and kappa must be K x K");
    kernels_.emplace_back();
    for (std::size_t m = 0; m < k; ++m) {
      require(std::isfinite(params.alpha[a][m]) && params.alpha[a][m] >= 0.0,
              "multitype alpha must be nonnegative");
      kernels_.back().push_back(std::make_shared<ExponentialKernel>(params.kappa[a][m]));
    }
  }
}

std::vector<ParameterInfo> MultitypeHawkesModel::parameter_info() const {
  const std::size_t k = params_.mu.size();
  std::vector<ParameterInfo> info;
  for (std::size_t m = 0; m < k; ++m) info.push_back({"mu[" + std::to_string(m + 1) + "]", ParamDomain::positive});
  for (const char* name : {"alpha", "kappa"}) {
    const auto domain = std::string(name) == "alpha" ? ParamDomain::nonnegative : ParamDomain::positive;
    for (std::size_t a = 0; a < k; ++a) {
      for (std::size_t m = 0; m < k; ++m) {
        info.push_back({std::string(name) + "[" + std::to_string(a + 1) + "," + std::to_string(m + 1) + "]", domain});
      }
    }
  }
  return info;
}

std::vector<double> MultitypeHawkesModel::parameters() const {
  std::vector<double> theta = params_.mu;
  for (const auto& row : params_.alpha) theta.insert(theta.end(), row.begin(), row.end());
  for (const auto& row : params_.kappa) theta.insert(theta.end(), row.begin(), row.end());
  return theta;
}

std::unique_ptr<IntensityModel> MultitypeHawkesModel::with_parameters(std::span<const double> theta) const {
  const std::size_t k = params_.mu.size();
  require(theta.size() == k + 2 * k * k, "multitype hawkes takes K + 2K^2 parameters");
  MultitypeHawkesParams p;
  p.mu.assign(theta.begin(), theta.begin() + static_cast<std::ptrdiff_t>(k));
  std::size_t pos = k;
  for (auto* matrix : {&p.alpha, &p.kappa}) {
    matrix->assign(k, std::vector<double>(k));
    for (std::size_t a = 0; a < k; ++a) {
      for (std::size_t m = 0; m < k; ++m) (*matrix)[a][m] = theta[pos++];
    }
  }
  return std::make_unique<MultitypeHawkesModel>(p);
}

std::unique_ptr<SegmentIntensity> MultitypeHawkesModel::on_segment(const Network& net, std::size_t segment,
                                                                   SegmentPoints history) const {
  check_history(net, history);
  auto eval = std::make_unique<MultitypeHawkesSegment>(params_, kernels_, net.length(segment));
  for_each_upstream(net, segment, history,
                    [&](const MarkedOffset& p, double distance) { eval->add_upstream(p.mark, distance); });
  return eval;
}

}  // namespace dalnet
