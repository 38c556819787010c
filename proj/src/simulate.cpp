#include "doe/simulate.hpp"

#include <cmath>

#include "doe/error.hpp"
#include "doe/rng.hpp"

namespace doe {

namespace {

double round_to(double value, int decimals) {
  const double scale = std::pow(10.0, decimals);
  return std::round(value * scale) / scale;
}

}  // namespace

ExperimentData simulate_response(const DesignMatrix& design, const SimModel& model) {
  ensure_well_formed(design);
  if (!(model.noise_sd >= 0.0) || !std::isfinite(model.noise_sd)) {
    throw ValidationError("noise sd must be finite and non-negative");
  }
  if (model.round_decimals < 0) {
    throw ValidationError("round decimals must be non-negative");
  }
  if (model.noise_sd > 0.0 && !model.seed.has_value()) {
    throw ValidationError("noisy simulation requires a seed");
  }

  std::vector<std::pair<std::size_t, double>> mains;
  mains.reserve(model.main_coefs.size());
  for (const auto& [name, coef] : model.main_coefs) {
    mains.emplace_back(design.factor_index(name), coef);
  }
  std::vector<std::tuple<std::size_t, std::size_t, double>> interactions;
  interactions.reserve(model.interaction_coefs.size());
  for (const auto& term : model.interaction_coefs) {
    interactions.emplace_back(design.factor_index(term.a), design.factor_index(term.b),
                              term.coef);
  }

  Rng rng(model.seed.value_or(0));
  ExperimentData data;
  data.design = design;
  data.response_name = model.response_name;
  data.response.reserve(design.runs.size());
  for (const auto& run : design.runs) {
    double value = model.intercept;
    for (const auto& [f, coef] : mains) {
      value += coef * run.settings[f];
    }
    for (const auto& [f, g, coef] : interactions) {
      value += coef * run.settings[f] * run.settings[g];
    }
    if (model.noise_sd > 0.0) {
      value += model.noise_sd * rng.next_gaussian();
    }
    data.response.push_back(round_to(value, model.round_decimals));
  }
  return data;
}

std::vector<double> seeded_gaussian(std::uint64_t seed, std::size_t count) {
  Rng rng(seed);
  std::vector<double> values;
  values.reserve(count);
  for (std::size_t i = 0; i < count; ++i) values.push_back(rng.next_gaussian());
  return values;
}

}  // namespace doe
