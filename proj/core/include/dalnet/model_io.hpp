#pragma once

#include <filesystem>
#include <memory>
#include <string>

#include "dalnet/model.hpp"

namespace dalnet {

// {"model": "poisson|hawkes|modified_hawkes|nonlinear_hawkes|self_correcting|multitype_hawkes",
//  "params": {...}}
// Parameter keys: poisson {lambda}; the three Hawkes variants {mu, alpha, kappa};
// self_correcting {mu, alpha}; multitype_hawkes {mu: [K], alpha: [[K x K]],
// kappa: [[K x K]]}. Fit results written by the CLI carry extra bookkeeping
// keys (loglik, converged, ...) which are accepted and ignored.
std::unique_ptr<IntensityModel> parse_model_json(const std::string& text);
std::unique_ptr<IntensityModel> read_model(const std::filesystem::path& path);

std::string model_to_json(const IntensityModel& model);

// Model of `family` at a default parameter point, used as a template when
// fitting. `mark_count` sizes the multitype family.
std::unique_ptr<IntensityModel> default_model(const std::string& family, int mark_count = 1);

}  // namespace dalnet
