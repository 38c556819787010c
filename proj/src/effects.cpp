#include "doe/effects.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "doe/error.hpp"

namespace doe {

namespace {

std::string code_text(Code code) {
  switch (code) {
    case -1: return "-1";
    case 0: return "0";
    default: return "+1";
  }
}

double mean_of(const std::vector<double>& values) {
  return std::accumulate(values.begin(), values.end(), 0.0) /
         static_cast<double>(values.size());
}

EffectEstimate contrast(std::string target, const std::vector<double>& low,
                        const std::vector<double>& high) {
  if (low.empty() || high.empty()) {
    throw EstimationError("effect '" + target + "': " +
                          (low.empty() ? std::string("low") : std::string("high")) +
                          " group is empty");
  }
  EffectEstimate estimate;
  estimate.target = std::move(target);
  estimate.mean_low = mean_of(low);
  estimate.mean_high = mean_of(high);
  estimate.mean_difference = estimate.mean_high - estimate.mean_low;
  estimate.half_effect = estimate.mean_difference / 2.0;
  estimate.n_low = static_cast<int>(low.size());
  estimate.n_high = static_cast<int>(high.size());
  return estimate;
}

}  // namespace

void ensure_well_formed(const ExperimentData& data) {
  ensure_well_formed(data.design);
  if (data.response.size() != data.design.runs.size()) {
    throw ValidationError("response length does not match run count");
  }
  for (const double value : data.response) {
    if (!std::isfinite(value)) {
      throw ValidationError("non-finite response value");
    }
  }
  if (data.response_name.empty()) {
    throw ValidationError("empty response name");
  }
}

EffectEstimate main_effect(const ExperimentData& data, std::string_view factor) {
  ensure_well_formed(data);
  const std::size_t f = data.design.factor_index(factor);
  std::vector<double> low, high;
  for (std::size_t i = 0; i < data.design.runs.size(); ++i) {
    switch (data.design.runs[i].settings[f]) {
      case -1: low.push_back(data.response[i]); break;
      case +1: high.push_back(data.response[i]); break;
      default: break;  // center runs carry no slope information
    }
  }
  return contrast(std::string(factor), low, high);
}

EffectEstimate interaction_effect(const ExperimentData& data,
                                  std::string_view factor_f,
                                  std::string_view factor_g) {
  ensure_well_formed(data);
  const std::size_t f = data.design.factor_index(factor_f);
  const std::size_t g = data.design.factor_index(factor_g);
  if (f == g) {
    throw ValidationError("interaction needs two distinct factors");
  }
  std::vector<double> low, high;
  for (std::size_t i = 0; i < data.design.runs.size(); ++i) {
    const auto& settings = data.design.runs[i].settings;
    switch (settings[f] * settings[g]) {
      case -1: low.push_back(data.response[i]); break;
      case +1: high.push_back(data.response[i]); break;
      default: break;
    }
  }
  return contrast(std::string(factor_f) + "*" + std::string(factor_g), low, high);
}

EffectEstimate conditional_effect(const ExperimentData& data, std::string_view focal,
                                  std::string_view conditioning, Code cond_level) {
  ensure_well_formed(data);
  const std::size_t f = data.design.factor_index(focal);
  const std::size_t c = data.design.factor_index(conditioning);
  if (f == c) {
    throw ValidationError("conditional effect needs distinct focal and conditioning factors");
  }
  if (!data.design.factors[c].has_level(cond_level)) {
    throw ValidationError("conditioning level not declared for factor '" +
                          std::string(conditioning) + "'");
  }
  std::vector<double> low, high;
  for (std::size_t i = 0; i < data.design.runs.size(); ++i) {
    const auto& settings = data.design.runs[i].settings;
    if (settings[c] != cond_level) continue;
    switch (settings[f]) {
      case -1: low.push_back(data.response[i]); break;
      case +1: high.push_back(data.response[i]); break;
      default: break;
    }
  }
  return contrast(std::string(focal) + " | " + std::string(conditioning) + "=" +
                      code_text(cond_level),
                  low, high);
}

std::vector<EdgePair> edge_differences(const ExperimentData& data,
                                       std::string_view factor,
                                       Code level_low, Code level_high) {
  ensure_well_formed(data);
  const std::size_t f = data.design.factor_index(factor);
  const auto& spec = data.design.factors[f];
  if (level_low == level_high) {
    throw ValidationError("edge levels must differ");
  }
  if (!spec.has_level(level_low) || !spec.has_level(level_high)) {
    throw ValidationError("edge level not declared for factor '" + std::string(factor) + "'");
  }

  const auto& runs = data.design.runs;
  std::vector<EdgePair> pairs;
  for (std::size_t i = 0; i < runs.size(); ++i) {
    for (std::size_t j = i + 1; j < runs.size(); ++j) {
      const auto& a = runs[i].settings;
      const auto& b = runs[j].settings;
      const bool forward = a[f] == level_low && b[f] == level_high;
      const bool backward = a[f] == level_high && b[f] == level_low;
      if (!forward && !backward) continue;
      bool rest_equal = true;
      for (std::size_t k = 0; k < a.size(); ++k) {
        if (k != f && a[k] != b[k]) {
          rest_equal = false;
          break;
        }
      }
      if (!rest_equal) continue;
      const std::size_t lo = forward ? i : j;
      const std::size_t hi = forward ? j : i;
      pairs.push_back(EdgePair{runs[lo].id, runs[hi].id,
                               data.response[hi] - data.response[lo]});
    }
  }
  std::sort(pairs.begin(), pairs.end(), [](const EdgePair& a, const EdgePair& b) {
    return std::pair(a.run_low, a.run_high) < std::pair(b.run_low, b.run_high);
  });
  return pairs;
}

double paired_interaction(const ExperimentData& data, std::string_view factor,
                          std::string_view conditioning) {
  ensure_well_formed(data);
  const std::size_t f = data.design.factor_index(factor);
  const std::size_t c = data.design.factor_index(conditioning);
  if (f == c) {
    throw ValidationError("paired interaction needs distinct factors");
  }
  const auto& spec = data.design.factors[f];
  const auto pairs = edge_differences(data, factor, spec.levels.front(), spec.levels.back());

  // Both runs of a pair share the conditioning level, so either one keys it.
  std::map<int, std::size_t> run_rows;
  for (std::size_t i = 0; i < data.design.runs.size(); ++i) {
    run_rows[data.design.runs[i].id] = i;
  }
  std::vector<double> low, high;
  for (const auto& pair : pairs) {
    switch (data.design.runs[run_rows[pair.run_low]].settings[c]) {
      case -1: low.push_back(pair.difference); break;
      case +1: high.push_back(pair.difference); break;
      default: break;
    }
  }
  if (low.empty() || high.empty()) {
    throw EstimationError("paired interaction '" + std::string(factor) + "' vs '" +
                          std::string(conditioning) + "': no complete pairs at " +
                          (low.empty() ? "low" : "high") + " conditioning level");
  }
  return (mean_of(high) - mean_of(low)) / 2.0;
}

std::vector<Cell> cell_means(const ExperimentData& data,
                             std::span<const std::string> conditioning) {
  ensure_well_formed(data);
  std::vector<std::size_t> indices;
  indices.reserve(conditioning.size());
  for (const auto& name : conditioning) indices.push_back(data.design.factor_index(name));

  std::map<LevelCombo, std::vector<double>> groups;
  for (std::size_t i = 0; i < data.design.runs.size(); ++i) {
    LevelCombo combo;
    combo.reserve(indices.size());
    for (const std::size_t f : indices) combo.push_back(data.design.runs[i].settings[f]);
    groups[combo].push_back(data.response[i]);
  }

  std::vector<Cell> cells;
  cells.reserve(groups.size());
  for (auto& [combo, values] : groups) {
    Cell cell;
    cell.combo = combo;
    cell.mean = mean_of(values);
    cell.values = std::move(values);
    cells.push_back(std::move(cell));
  }
  return cells;
}

}  // namespace doe
