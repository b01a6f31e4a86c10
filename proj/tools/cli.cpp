#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <ostream>
#include <sstream>
#include <thread>

#include "dalnet/dalnet.hpp"

namespace dalnet::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Options {
  std::string network;
  std::string pattern;
  std::string model;
  std::string out;
  std::uint64_t seed = 0;
  int replicates = 1;
  std::string algorithm = "inverse";
  int jobs = 1;

  // fit
  std::string family;
  std::string mode = "joint";
  std::vector<std::string> fixed;
  std::vector<std::string> start;
  int marks = 0;

  // residuals
  int n_sim = 99;

  // study
  std::string config;
  std::optional<int> study_replicates;
  std::optional<std::uint64_t> study_seed;
};

std::shared_ptr<const Network> load_network(const std::string& path) {
  return std::make_shared<const Network>(read_network(path));
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(Errc::UsageError, "cannot create output directory " + dir.string() + ": " + ec.message());
}

std::pair<std::string, double> parse_assignment(const std::string& text) {
  const auto eq = text.rfind('=');
  if (eq == std::string::npos || eq == 0) throw Error(Errc::UsageError, "expected name=value, got '" + text + "'");
  try {
    std::size_t used = 0;
    const std::string value = text.substr(eq + 1);
    const double v = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return {text.substr(0, eq), v};
  } catch (const std::exception&) {
    throw Error(Errc::UsageError, "bad numeric value in '" + text + "'");
  }
}

json parsed(const std::string& text) { return json::parse(text); }

// ---------------------------------------------------------------- validate

int cmd_validate(const Options& o, std::ostream& out) {
  const Network net = read_network(o.network);
  std::string shape = net.is_out_tree() ? "out-tree" : "dag";
  std::string root = "no root";
  if (net.root()) root = net.root_reaches_all() ? "root reachable" : "root cannot reach every segment";
  out << "valid, " << net.segment_count() << " segments, " << shape << ", " << root << "\n";
  out << "total length: " << net.total_length() << "\n";
  out << "topological order:";
  for (std::size_t s : net.topological_order()) out << ' ' << net.segment(s).id;
  out << "\n";
  for (const auto& s : net.segments()) {
    out << "segment " << s.id << ": " << net.vertices()[s.tail].id << " -> " << net.vertices()[s.head].id
        << ", length " << s.length << "\n";
  }
  return 0;
}

// ---------------------------------------------------------------- simulate

int cmd_simulate(const Options& o, std::ostream& out) {
  if (o.replicates < 1) throw Error(Errc::UsageError, "--replicates must be at least 1");
  const auto net = load_network(o.network);
  const auto model = read_model(o.model);
  const Algorithm algorithm = parse_algorithm(o.algorithm);
  const fs::path dir = o.out.empty() ? fs::path(".") : fs::path(o.out);
  ensure_dir(dir);

  const auto n = static_cast<std::size_t>(o.replicates);
  std::vector<std::optional<PointPattern>> patterns(n);
  std::vector<std::string> errors(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t r = next++; r < n; r = next++) {
      try {
        SimulationConfig cfg;
        cfg.algorithm = algorithm;
        cfg.seed = o.seed + r;
        patterns[r].emplace(simulate(*model, net, cfg));
      } catch (const std::exception& e) {
        errors[r] = e.what();
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    const int jobs = std::clamp(o.jobs, 1, o.replicates);
    for (int j = 1; j < jobs; ++j) pool.emplace_back(worker);
    worker();
  }

  const json spec = parsed(model_to_json(*model));
  for (std::size_t r = 0; r < n; ++r) {
    if (!errors[r].empty()) throw std::runtime_error(errors[r]);
    const std::uint64_t seed = o.seed + r;
    const std::string stem = "pattern_" + std::to_string(seed);
    write_pattern(*patterns[r], dir / (stem + ".csv"));
    json sidecar = spec;
    sidecar["seed"] = seed;
    sidecar["algorithm"] = to_string(algorithm);
    sidecar["network"] = o.network;
    sidecar["n_points"] = patterns[r]->size();
    write_text_file(dir / (stem + ".json"), sidecar.dump(2) + "\n");
    out << (dir / (stem + ".csv")).string() << ": " << patterns[r]->size() << " points\n";
  }
  return 0;
}

// ---------------------------------------------------------------- fit

int cmd_fit(const Options& o, std::ostream& out) {
  if (o.family.empty() && o.model.empty()) throw Error(Errc::UsageError, "fit needs --family or --model");
  if (o.mode != "joint" && o.mode != "marginal") throw Error(Errc::UsageError, "--mode must be joint or marginal");
  const auto net = load_network(o.network);

  std::unique_ptr<IntensityModel> base;
  if (!o.model.empty()) {
    base = read_model(o.model);
    if (!o.family.empty() && o.family != base->family()) {
      throw Error(Errc::UsageError, "--family disagrees with the model in --model");
    }
  } else {
    base = default_model(o.family, std::max(o.marks, 1));
  }
  const std::optional<int> marks =
      base->mark_count() > 1 ? std::optional<int>(base->mark_count()) : std::nullopt;
  const PointPattern pattern = read_pattern(o.pattern, net, marks);

  const auto info = base->parameter_info();
  std::vector<double> theta = o.model.empty() ? default_start(*base, pattern) : base->parameters();
  for (const auto& s : o.start) {
    const auto [name, value] = parse_assignment(s);
    theta[parameter_index(*base, name)] = value;
  }
  std::vector<bool> is_fixed(info.size(), false);
  for (const auto& s : o.fixed) {
    const auto [name, value] = parse_assignment(s);
    const std::size_t k = parameter_index(*base, name);
    theta[k] = value;
    is_fixed[k] = true;
  }

  FitOptions options;
  options.seed = o.seed;
  FitResult result;
  if (o.mode == "joint") {
    if (std::any_of(is_fixed.begin(), is_fixed.end(), [](bool b) { return b; })) {
      throw Error(Errc::UsageError, "--fixed requires --mode marginal");
    }
    options.start = theta;
    result = fit_mle(*base, pattern, options);
  } else {
    const auto free_count = std::count(is_fixed.begin(), is_fixed.end(), false);
    if (free_count != 1) {
      throw Error(Errc::UsageError, "marginal mode needs exactly one free parameter, got " +
                                        std::to_string(free_count));
    }
    const std::size_t k = static_cast<std::size_t>(std::find(is_fixed.begin(), is_fixed.end(), false) -
                                                   is_fixed.begin());
    const auto model = base->with_parameters(theta);
    options.start = theta;
    result = fit_marginal(*model, pattern, k, options);
  }

  json doc = parsed(model_to_json(*result.model));
  doc["loglik"] = result.loglik;
  doc["converged"] = result.converged;
  doc["iterations"] = result.iterations;
  doc["evaluations"] = result.evaluations;
  doc["mode"] = o.mode;
  doc["n_points"] = pattern.size();
  const std::string text = doc.dump(2) + "\n";
  if (o.out.empty()) {
    out << text;
  } else {
    write_text_file(o.out, text);
  }
  return 0;
}

// ---------------------------------------------------------------- residuals

json ks_json(const KsResult& r) { return {{"statistic", r.statistic}, {"p_value", r.p_value}, {"n", r.n}}; }

void write_residual_outputs(const ResidualProcess& rp, const Options& o, const fs::path& dir,
                            const std::string& suffix, std::ostream& out) {
  write_network(*rp.network, dir / ("residual_network" + suffix + ".json"));
  write_pattern(rp.pattern, dir / ("residual_pattern" + suffix + ".csv"));

  const auto records = interevent_distances(rp.pattern);
  std::ostringstream inter;
  inter.precision(17);
  inter << "child,parent,distance,label\n";
  for (const auto& r : records) {
    inter << r.child << ',' << r.parent << ',' << r.distance << ',' << (r.crossing ? "across" : "within") << '\n';
  }
  write_text_file(dir / ("interevent" + suffix + ".csv"), inter.str());

  std::vector<std::size_t> idx(records.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return records[a].distance < records[b].distance;
  });
  std::ostringstream qq;
  qq.precision(17);
  qq << "empirical_quantile,theoretical_quantile,label\n";
  const double n = static_cast<double>(records.size());
  for (std::size_t i = 0; i < idx.size(); ++i) {
    const auto& r = records[idx[i]];
    const double p = (static_cast<double>(i) + 0.5) / n;
    qq << r.distance << ',' << -std::log1p(-p) << ',' << (r.crossing ? "across" : "within") << '\n';
  }
  write_text_file(dir / ("qq" + suffix + ".csv"), qq.str());

  const KsResult within = ks_exp1(records, false);
  const KsResult all = ks_exp1(records, true);
  EnvelopeOptions env_options;
  env_options.n_sim = o.n_sim;
  env_options.seed = o.seed;
  const EnvelopeResult env = mc_envelope(rp, env_options);

  json diag;
  diag["n_points"] = rp.pattern.size();
  diag["residual_length"] = rp.network->total_length();
  std::vector<SegmentId> zero;
  for (std::size_t s : rp.zero_length_segments) zero.push_back(rp.network->segment(s).id);
  diag["zero_length_segments"] = zero;
  diag["ks_within"] = ks_json(within);
  diag["ks_all"] = ks_json(all);
  diag["envelope"] = {{"grid", env.grid},
                      {"observed", env.observed},
                      {"lower", env.lower},
                      {"upper", env.upper},
                      {"p_liberal", env.p_liberal},
                      {"p_conservative", env.p_conservative},
                      {"rank", env.rank},
                      {"n_sim", env.n_sim}};
  write_text_file(dir / ("diagnostics" + suffix + ".json"), diag.dump(2) + "\n");

  out << "residuals" << suffix << ": " << rp.pattern.size() << " points, KS within p = " << within.p_value
      << ", KS all p = " << all.p_value << ", envelope p in [" << env.p_liberal << ", " << env.p_conservative
      << "]\n";
}

int cmd_residuals(const Options& o, std::ostream& out) {
  const auto net = load_network(o.network);
  const auto model = read_model(o.model);
  const std::optional<int> marks =
      model->mark_count() > 1 ? std::optional<int>(model->mark_count()) : std::nullopt;
  const PointPattern pattern = read_pattern(o.pattern, net, marks);
  const fs::path dir = o.out.empty() ? fs::path(".") : fs::path(o.out);
  ensure_dir(dir);
  if (model->mark_count() == 1) {
    write_residual_outputs(residual_transform(*model, pattern), o, dir, "", out);
  } else {
    const auto processes = residual_transform_marked(*model, pattern);
    for (std::size_t m = 0; m < processes.size(); ++m) {
      write_residual_outputs(processes[m], o, dir, "_mark" + std::to_string(m + 1), out);
    }
  }
  return 0;
}

// ---------------------------------------------------------------- study

int cmd_study(const Options& o, std::ostream& out, std::ostream& err) {
  json cfg;
  try {
    cfg = json::parse(read_text_file(o.config));
  } catch (const json::parse_error& e) {
    throw Error(Errc::ParseError, e.what());
  }
  static const std::set<std::string> keys = {"network", "model", "sizes", "growth", "replicates",
                                             "mode", "algorithm", "seed"};
  for (const auto& [key, value] : cfg.items()) {
    if (!keys.contains(key)) throw Error(Errc::ParseError, "unknown key '" + key + "' in study config");
  }
  if (!cfg.contains("network") || !cfg.contains("model")) {
    throw Error(Errc::ParseError, "study config needs 'network' and 'model'");
  }
  StudyConfig study;
  try {
    fs::path network_path = cfg["network"].get<std::string>();
    if (network_path.is_relative()) network_path = fs::path(o.config).parent_path() / network_path;
    study.network = load_network(network_path.string());
    study.truth = parse_model_json(cfg["model"].dump());
    study.sizes = cfg.value("sizes", 4);
    study.growth = cfg.value("growth", 1.5);
    study.replicates = cfg.value("replicates", 1);
    study.mode = parse_fit_mode(cfg.value("mode", std::string("joint")));
    study.algorithm = parse_algorithm(cfg.value("algorithm", std::string("inverse")));
    study.seed = cfg.value("seed", std::uint64_t{0});
  } catch (const json::exception& e) {
    throw Error(Errc::ParseError, e.what());
  }
  if (o.study_replicates) study.replicates = *o.study_replicates;
  if (o.study_seed) study.seed = *o.study_seed;
  study.jobs = o.jobs;

  const StudyResult result = run_study(study);
  for (const auto& f : result.failures) {
    err << "replicate " << f.replicate << " at size " << f.size << " failed: " << f.message << "\n";
  }
  const fs::path dir = o.out.empty() ? fs::path(".") : fs::path(o.out);
  ensure_dir(dir);
  std::ostringstream estimates, summary;
  write_estimates_csv(estimates, result);
  write_summary_csv(summary, summarize(study, result));
  write_text_file(dir / "estimates.csv", estimates.str());
  write_text_file(dir / "summary.csv", summary.str());
  out << "study: " << study.sizes << " sizes x " << study.replicates << " replicates, " << result.failures.size()
      << " failures\n";
  return 0;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Point processes on directed acyclic linear networks", "dalnet"};
  app.require_subcommand(1);
  Options o;

  auto* validate = app.add_subcommand("validate", "Load and check a network file");
  validate->add_option("--network", o.network, "Network JSON")->required();

  auto* sim = app.add_subcommand("simulate", "Simulate patterns from a model");
  sim->add_option("--network", o.network, "Network JSON")->required();
  sim->add_option("--model", o.model, "Model spec JSON")->required();
  sim->add_option("--seed", o.seed, "Seed of the first replicate");
  sim->add_option("--replicates", o.replicates, "Number of patterns; replicate r uses seed + r");
  sim->add_option("--algorithm", o.algorithm, "inverse or ogata")->check(CLI::IsMember({"inverse", "ogata"}));
  sim->add_option("--jobs", o.jobs, "Worker threads");
  sim->add_option("--out", o.out, "Output directory");

  auto* fit = app.add_subcommand("fit", "Maximum likelihood fit");
  fit->add_option("--network", o.network, "Network JSON")->required();
  fit->add_option("--pattern", o.pattern, "Pattern CSV")->required();
  fit->add_option("--family", o.family, "Model family");
  fit->add_option("--model", o.model, "Model spec JSON giving the family and starting values");
  fit->add_option("--mode", o.mode, "joint or marginal")->check(CLI::IsMember({"joint", "marginal"}));
  fit->add_option("--fixed", o.fixed, "name=value held fixed (marginal mode)");
  fit->add_option("--start", o.start, "name=value starting value");
  fit->add_option("--marks", o.marks, "Mark count for the multitype family");
  fit->add_option("--seed", o.seed, "Seed for the jittered restarts");
  fit->add_option("--out", o.out, "Output JSON file (default stdout)");

  auto* res = app.add_subcommand("residuals", "Residual analysis of a fitted model");
  res->add_option("--network", o.network, "Network JSON")->required();
  res->add_option("--pattern", o.pattern, "Pattern CSV")->required();
  res->add_option("--model", o.model, "Fitted model JSON")->required();
  res->add_option("--n-sim", o.n_sim, "Envelope simulations");
  res->add_option("--seed", o.seed, "Seed of the envelope simulations");
  res->add_option("--out", o.out, "Output directory");

  auto* study = app.add_subcommand("study", "Simulation study over growing networks");
  study->add_option("--config", o.config, "Study config JSON")->required();
  study->add_option("--replicates", o.study_replicates, "Override the replicate count");
  study->add_option("--seed", o.study_seed, "Override the base seed");
  study->add_option("--jobs", o.jobs, "Worker threads");
  study->add_option("--out", o.out, "Output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 2;
  }

  try {
    if (*validate) return cmd_validate(o, out);
    if (*sim) return cmd_simulate(o, out);
    if (*fit) return cmd_fit(o, out);
    if (*res) return cmd_residuals(o, out);
    if (*study) return cmd_study(o, out, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.code() == Errc::UsageError ? 2 : 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace dalnet::cli
