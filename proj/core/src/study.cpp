#include "dalnet/study.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numeric>
#include <ostream>
#include <thread>

#include "dalnet/error.hpp"

namespace dalnet {

FitMode parse_fit_mode(const std::string& name) {
  if (name == "joint") return FitMode::joint;
  if (name == "marginal") return FitMode::marginal;
  if (name == "both") return FitMode::both;
  throw Error(Errc::UsageError, "unknown fit mode '" + name + "'");
}

std::uint64_t study_seed(const StudyConfig& config, int size, int replicate) {
  return config.seed + static_cast<std::uint64_t>(size - 1) * static_cast<std::uint64_t>(config.replicates) +
         static_cast<std::uint64_t>(replicate - 1);
}

namespace {

struct Task {
  int size;
  int replicate;
};

std::vector<StudyEstimate> run_replicate(const StudyConfig& config, const std::shared_ptr<const Network>& net,
                                         const Task& task) {
  SimulationConfig sim;
  sim.algorithm = config.algorithm;
  sim.seed = study_seed(config, task.size, task.replicate);
  const PointPattern pattern = simulate(*config.truth, net, sim);

  FitOptions options = config.fit;
  options.seed = sim.seed;
  const auto info = config.truth->parameter_info();
  std::vector<StudyEstimate> out;
  if (config.mode != FitMode::marginal) {
    const FitResult fit = fit_mle(*config.truth, pattern, options);
    for (std::size_t k = 0; k < info.size(); ++k) {
      out.push_back({task.size, task.replicate, info[k].name, fit.theta[k], fit.converged, fit.loglik});
    }
  }
  if (config.mode != FitMode::joint) {
    for (std::size_t k = 0; k < info.size(); ++k) {
      const FitResult fit = fit_marginal(*config.truth, pattern, k, options);
      out.push_back({task.size, task.replicate, info[k].name + ":marginal", fit.theta[k], fit.converged, fit.loglik});
    }
  }
  return out;
}

}  // namespace

StudyResult run_study(const StudyConfig& config) {
  if (!config.network || !config.truth) throw Error(Errc::InvalidParameter, "study needs a network and a model");
  if (config.replicates < 1) throw Error(Errc::InvalidParameter, "study needs at least one replicate");
  if (config.sizes < 1) throw Error(Errc::InvalidParameter, "study needs at least one size");
  if (!(config.growth > 0.0)) throw Error(Errc::NonpositiveFactor, "growth factor must be positive");

  std::vector<std::shared_ptr<const Network>> nets;
  for (int s = 1; s <= config.sizes; ++s) {
    nets.push_back(std::make_shared<const Network>(config.network->scaled(std::pow(config.growth, s - 1))));
  }
  std::vector<Task> tasks;
  for (int s = 1; s <= config.sizes; ++s) {
    for (int r = 1; r <= config.replicates; ++r) tasks.push_back({s, r});
  }

  std::vector<std::vector<StudyEstimate>> estimates(tasks.size());
  std::vector<std::string> errors(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      try {
        estimates[i] = run_replicate(config, nets[static_cast<std::size_t>(tasks[i].size - 1)], tasks[i]);
      } catch (const std::exception& e) {
        errors[i] = e.what();
      }
    }
  };
  const int jobs = std::clamp(config.jobs, 1, static_cast<int>(tasks.size()));
  std::vector<std::jthread> pool;
  for (int j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  pool.clear();

  StudyResult result;
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    if (!errors[i].empty()) {
      result.failures.push_back({tasks[i].size, tasks[i].replicate, errors[i]});
      continue;
    }
    result.estimates.insert(result.estimates.end(), estimates[i].begin(), estimates[i].end());
  }
  return result;
}

double quantile(std::vector<double> values, double p) {
  if (values.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::sort(values.begin(), values.end());
  const double pos = p * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, values.size() - 1);
  return values[lo] + (pos - static_cast<double>(lo)) * (values[hi] - values[lo]);
}

double pearson_correlation(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = std::min(x.size(), y.size());
  if (n < 2) return std::numeric_limits<double>::quiet_NaN();
  const double mx = std::accumulate(x.begin(), x.begin() + n, 0.0) / static_cast<double>(n);
  const double my = std::accumulate(y.begin(), y.begin() + n, 0.0) / static_cast<double>(n);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx <= 0.0 || syy <= 0.0) return std::numeric_limits<double>::quiet_NaN();
  return sxy / std::sqrt(sxx * syy);
}

std::vector<SummaryRow> summarize(const StudyConfig& config, const StudyResult& result) {
  const auto info = config.truth->parameter_info();
  const auto truth = config.truth->parameters();
  std::vector<std::string> names;
  std::map<std::string, double> truth_of;
  for (std::size_t k = 0; k < info.size(); ++k) {
    truth_of[info[k].name] = truth[k];
    truth_of[info[k].name + ":marginal"] = truth[k];
  }
  if (config.mode != FitMode::marginal) {
    for (const auto& i : info) names.push_back(i.name);
  }
  if (config.mode != FitMode::joint) {
    for (const auto& i : info) names.push_back(i.name + ":marginal");
  }

  std::vector<SummaryRow> rows;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (int s = 1; s <= config.sizes; ++s) {
    // Per parameter, estimates keyed by replicate so pairs line up.
    std::map<std::string, std::map<int, double>> by_param;
    for (const auto& e : result.estimates) {
      if (e.size == s) by_param[e.param][e.replicate] = e.estimate;
    }
    for (const auto& name : names) {
      std::vector<double> v;
      for (const auto& [rep, value] : by_param[name]) v.push_back(value);
      SummaryRow row;
      row.size = s;
      row.param = name;
      row.n = v.size();
      row.truth = truth_of[name];
      row.correlation = nan;
      if (v.empty()) {
        row.mean = row.median = row.q1 = row.q3 = row.bias = row.mean_abs_error = nan;
      } else {
        row.mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
        row.median = quantile(v, 0.5);
        row.q1 = quantile(v, 0.25);
        row.q3 = quantile(v, 0.75);
        row.bias = row.mean - row.truth;
        double mae = 0.0;
        for (double x : v) mae += std::abs(x - row.truth);
        row.mean_abs_error = mae / static_cast<double>(v.size());
      }
      rows.push_back(row);
    }
    if (config.mode == FitMode::marginal) continue;
    for (std::size_t a = 0; a < info.size(); ++a) {
      for (std::size_t b = a + 1; b < info.size(); ++b) {
        std::vector<double> x, y;
        const auto& ea = by_param[info[a].name];
        const auto& eb = by_param[info[b].name];
        for (const auto& [rep, value] : ea) {
          const auto it = eb.find(rep);
          if (it == eb.end()) continue;
          x.push_back(value);
          y.push_back(it->second);
        }
        SummaryRow row;
        row.size = s;
        row.param = info[a].name + "~" + info[b].name;
        row.n = x.size();
        row.mean = row.median = row.q1 = row.q3 = row.truth = row.bias = row.mean_abs_error = nan;
        row.correlation = pearson_correlation(x, y);
        rows.push_back(row);
      }
    }
  }
  return rows;
}

namespace {

void put(std::ostream& out, double v) {
  if (std::isnan(v)) {
    out << "NA";
  } else {
    out << v;
  }
}

}  // namespace

void write_estimates_csv(std::ostream& out, const StudyResult& result) {
  const auto precision = out.precision(17);
  out << "size,replicate,param,estimate,converged,loglik\n";
  for (const auto& e : result.estimates) {
    out << e.size << ',' << e.replicate << ',' << e.param << ',';
    put(out, e.estimate);
    out << ',' << (e.converged ? "true" : "false") << ',';
    put(out, e.loglik);
    out << '\n';
  }
  out.precision(precision);
}

void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows) {
  const auto precision = out.precision(17);
  out << "size,param,n,mean,median,q1,q3,truth,bias,mean_abs_error,correlation\n";
  for (const auto& r : rows) {
    out << r.size << ',' << r.param << ',' << r.n;
    for (double v : {r.mean, r.median, r.q1, r.q3, r.truth, r.bias, r.mean_abs_error, r.correlation}) {
      out << ',';
      put(out, v);
    }
    out << '\n';
  }
  out.precision(precision);
}

}  // namespace dalnet
