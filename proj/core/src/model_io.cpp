#include "dalnet/model_io.hpp"

#include <set>

#include <json.hpp>

#include "dalnet/error.hpp"
#include "dalnet/models.hpp"
#include "dalnet/network_io.hpp"

namespace dalnet {

using nlohmann::json;

namespace {

const std::set<std::string> kTopLevelKeys = {"model", "params", "loglik", "converged", "iterations",
                                             "evaluations", "mode", "free", "n_points"};

void expect_keys(const json& obj, const std::set<std::string>& keys, const std::string& family) {
  if (!obj.is_object()) throw Error(Errc::ParseError, "'params' must be an object");
  for (const auto& [key, value] : obj.items()) {
    if (!keys.contains(key)) throw Error(Errc::ParseError, "unknown parameter '" + key + "' for " + family);
  }
  for (const auto& key : keys) {
    if (!obj.contains(key)) throw Error(Errc::ParseError, "missing parameter '" + key + "' for " + family);
  }
}

template <typename T>
T get(const json& obj, const char* key) {
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception& e) {
    throw Error(Errc::ParseError, std::string("bad value for '") + key + "': " + e.what());
  }
}

}  // namespace

std::unique_ptr<IntensityModel> parse_model_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(Errc::ParseError, e.what());
  }
  if (!doc.is_object()) throw Error(Errc::ParseError, "model spec must be a JSON object");
  for (const auto& [key, value] : doc.items()) {
    if (!kTopLevelKeys.contains(key)) throw Error(Errc::ParseError, "unknown key '" + key + "' in model spec");
  }
  if (!doc.contains("model") || !doc.contains("params")) {
    throw Error(Errc::ParseError, "model spec needs 'model' and 'params'");
  }
  const auto family = get<std::string>(doc, "model");
  const json& p = doc["params"];

  if (family == "poisson") {
    expect_keys(p, {"lambda"}, family);
    return std::make_unique<PoissonModel>(get<double>(p, "lambda"));
  }
  if (family == "hawkes" || family == "modified_hawkes") {
    expect_keys(p, {"mu", "alpha", "kappa"}, family);
    const HawkesParams hp{get<double>(p, "mu"), get<double>(p, "alpha"), get<double>(p, "kappa")};
    if (family == "hawkes") return std::make_unique<HawkesModel>(hp);
    return std::make_unique<ModifiedHawkesModel>(hp);
  }
  if (family == "nonlinear_hawkes") {
    expect_keys(p, {"mu", "alpha", "kappa"}, family);
    return std::make_unique<NonlinearHawkesModel>(
        NonlinearHawkesParams{get<double>(p, "mu"), get<double>(p, "alpha"), get<double>(p, "kappa")});
  }
  if (family == "self_correcting") {
    expect_keys(p, {"mu", "alpha"}, family);
    return std::make_unique<SelfCorrectingModel>(SelfCorrectingParams{get<double>(p, "mu"), get<double>(p, "alpha")});
  }
  if (family == "multitype_hawkes") {
    expect_keys(p, {"mu", "alpha", "kappa"}, family);
    MultitypeHawkesParams mp;
    mp.mu = get<std::vector<double>>(p, "mu");
    mp.alpha = get<std::vector<std::vector<double>>>(p, "alpha");
    mp.kappa = get<std::vector<std::vector<double>>>(p, "kappa");
    return std::make_unique<MultitypeHawkesModel>(mp);
  }
  throw Error(Errc::ParseError, "unknown model family '" + family + "'");
}

std::unique_ptr<IntensityModel> read_model(const std::filesystem::path& path) {
  return parse_model_json(read_text_file(path));
}

std::string model_to_json(const IntensityModel& model) {
  json doc;
  doc["model"] = model.family();
  json params = json::object();
  if (const auto* mt = dynamic_cast<const MultitypeHawkesModel*>(&model)) {
    params["mu"] = mt->params().mu;
    params["alpha"] = mt->params().alpha;
    params["kappa"] = mt->params().kappa;
  } else {
    const auto info = model.parameter_info();
    const auto theta = model.parameters();
    if (info.empty()) throw Error(Errc::InvalidParameter, "model has no serializable parameters");
    for (std::size_t k = 0; k < info.size(); ++k) params[info[k].name] = theta[k];
  }
  doc["params"] = params;
  return doc.dump(2);
}

std::unique_ptr<IntensityModel> default_model(const std::string& family, int mark_count) {
  if (family == "poisson") return std::make_unique<PoissonModel>(1.0);
  if (family == "hawkes") return std::make_unique<HawkesModel>(HawkesParams{1.0, 0.5, 1.0});
  if (family == "modified_hawkes") return std::make_unique<ModifiedHawkesModel>(HawkesParams{1.0, 0.5, 1.0});
  if (family == "nonlinear_hawkes") return std::make_unique<NonlinearHawkesModel>(NonlinearHawkesParams{0.0, 0.5, 1.0});
  if (family == "self_correcting") return std::make_unique<SelfCorrectingModel>(SelfCorrectingParams{0.1, 0.5});
  if (family == "multitype_hawkes") {
    if (mark_count < 1) throw Error(Errc::InvalidParameter, "mark count must be positive");
    const auto k = static_cast<std::size_t>(mark_count);
    return std::make_unique<MultitypeHawkesModel>(MultitypeHawkesParams{
        std::vector<double>(k, 1.0), std::vector<std::vector<double>>(k, std::vector<double>(k, 0.5)),
        std::vector<std::vector<double>>(k, std::vector<double>(k, 1.0))});
  }
  throw Error(Errc::UsageError, "unknown model family '" + family + "'");
}

}  // namespace dalnet
