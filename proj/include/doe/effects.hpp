#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "doe/design.hpp"

namespace doe {

// A design joined with one numeric response per run, in run order.
struct ExperimentData {
  DesignMatrix design;
  std::vector<double> response;
  std::string response_name = "Resp";
};

// Structural check: one finite response per run. Throws ValidationError.
void ensure_well_formed(const ExperimentData& data);

// A named contrast. mean_difference is mean(high group) - mean(low group);
// half_effect is always mean_difference / 2.
struct EffectEstimate {
  std::string target;        // "X", "X*B", "X | B=+1"
  double mean_difference = 0.0;
  double half_effect = 0.0;
  double mean_low = 0.0;
  double mean_high = 0.0;
  int n_low = 0;
  int n_high = 0;
};

// Mean response at the factor's +1 level minus mean at -1. For a 3-level
// factor only the -1/+1 extremes enter; center runs carry no slope
// information and are skipped. Empty group -> EstimationError.
EffectEstimate main_effect(const ExperimentData& data, std::string_view factor);

// Contrast on the product column f*g: mean(response | f*g=+1) minus
// mean(response | f*g=-1). Rows where the product is 0 are skipped.
EffectEstimate interaction_effect(const ExperimentData& data,
                                  std::string_view factor_f,
                                  std::string_view factor_g);

// main_effect of `focal` restricted to runs where `conditioning` sits at
// cond_level.
EffectEstimate conditional_effect(const ExperimentData& data,
                                  std::string_view focal,
                                  std::string_view conditioning,
                                  Code cond_level);

// A miniature one-factor comparison: two runs identical everywhere except
// the studied factor, which sits at (level_low, level_high).
struct EdgePair {
  int run_low = 0;       // run id at level_low
  int run_high = 0;      // run id at level_high
  double difference = 0; // response_high - response_low
};

// Every such pair in the data, sorted by (run_low, run_high) id. May be empty.
std::vector<EdgePair> edge_differences(const ExperimentData& data,
                                       std::string_view factor,
                                       Code level_low, Code level_high);

// (mean edge-difference of `factor` with conditioning at +1
//  - mean edge-difference with conditioning at -1) / 2.
// Pairs are formed at the factor's extreme levels. Missing pairs on either
// side -> EstimationError.
double paired_interaction(const ExperimentData& data, std::string_view factor,
                          std::string_view conditioning);

// One group of responses sharing a conditioning-level combination.
struct Cell {
  LevelCombo combo;            // one code per conditioning factor
  std::vector<double> values;  // in run order
  double mean = 0.0;
};

// Responses grouped by the given factors' level combinations, cells ordered
// by combination ascending. No factors -> a single cell with the grand mean.
std::vector<Cell> cell_means(const ExperimentData& data,
                             std::span<const std::string> conditioning);

}  // namespace doe
