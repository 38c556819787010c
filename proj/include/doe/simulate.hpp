#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "doe/design.hpp"
#include "doe/effects.hpp"

namespace doe {

// A linear-plus-interactions response generator with seeded Gaussian noise:
//   response = round(intercept + sum coef_f * x_f + sum coef_fg * x_f * x_g
//                    + Normal(0, noise_sd), round_decimals)
struct SimModel {
  struct InteractionCoef {
    std::string a;
    std::string b;
    double coef = 0.0;
  };

  double intercept = 0.0;
  std::map<std::string, double> main_coefs;
  std::vector<InteractionCoef> interaction_coefs;
  double noise_sd = 0.0;
  int round_decimals = 1;
  std::optional<std::uint64_t> seed;  // required when noise_sd > 0

  std::string response_name = "Resp";
};

// Simulated responses for every run, in run order. Rounding happens after
// the noise is added. Identical (design, model) give identical output; noise
// is drawn one variate per run from Rng(seed). Unknown model factors or
// missing seed with noise_sd > 0 -> ValidationError.
ExperimentData simulate_response(const DesignMatrix& design, const SimModel& model);

// `count` standard normal variates from Rng(seed); see rng.hpp for the
// generator and transform contract.
std::vector<double> seeded_gaussian(std::uint64_t seed, std::size_t count);

}  // namespace doe
