#include "doe/screening.hpp"

#include <algorithm>
#include <cmath>

#include "doe/error.hpp"

namespace doe {

namespace {

void ensure_two_level_factors(const DesignMatrix& design) {
  for (const auto& factor : design.factors) {
    if (!factor.is_two_level()) {
      throw ValidationError("screening requires two-level factors; '" + factor.name +
                            "' is not");
    }
  }
}

}  // namespace

std::vector<EffectEstimate> rank_effects(const ExperimentData& data) {
  ensure_well_formed(data);
  ensure_two_level_factors(data.design);
  std::vector<EffectEstimate> effects;
  effects.reserve(data.design.factors.size());
  for (const auto& factor : data.design.factors) {
    effects.push_back(main_effect(data, factor.name));
  }
  // Stable sort keeps declaration order among ties.
  std::stable_sort(effects.begin(), effects.end(),
                   [](const EffectEstimate& a, const EffectEstimate& b) {
                     return std::fabs(a.mean_difference) > std::fabs(b.mean_difference);
                   });
  return effects;
}

ActiveSelection flag_active(std::span<const EffectEstimate> ranked,
                            double relative_threshold, double absolute_floor) {
  if (ranked.empty()) {
    throw ValidationError("flag_active needs at least one effect");
  }
  if (!(relative_threshold > 0.0 && relative_threshold < 1.0)) {
    throw ValidationError("relative threshold must lie strictly between 0 and 1");
  }
  if (absolute_floor < 0.0) {
    throw ValidationError("absolute floor must be non-negative");
  }

  double max_magnitude = 0.0;
  for (const auto& effect : ranked) {
    max_magnitude = std::max(max_magnitude, std::fabs(effect.mean_difference));
  }

  ActiveSelection selection;
  if (max_magnitude == 0.0 && absolute_floor == 0.0) {
    selection.threshold_used = 0.0;  // nothing distinguishable from nothing
    return selection;
  }
  selection.threshold_used = std::max(relative_threshold * max_magnitude, absolute_floor);
  for (const auto& effect : ranked) {
    if (std::fabs(effect.mean_difference) >= selection.threshold_used) {
      selection.active.push_back(effect.target);
    }
  }
  return selection;
}

PanelData main_effects_panels(const ExperimentData& data) {
  ensure_well_formed(data);
  ensure_two_level_factors(data.design);
  PanelData panels;
  panels.panels.reserve(data.design.factors.size());
  for (std::size_t f = 0; f < data.design.factors.size(); ++f) {
    Panel panel;
    panel.factor = data.design.factors[f].name;
    panel.points.reserve(data.design.runs.size());
    for (std::size_t i = 0; i < data.design.runs.size(); ++i) {
      panel.points.emplace_back(data.design.runs[i].settings[f], data.response[i]);
    }
    const EffectEstimate estimate = main_effect(data, panel.factor);
    panel.mean_low = estimate.mean_low;
    panel.mean_high = estimate.mean_high;
    panels.panels.push_back(std::move(panel));
  }
  return panels;
}

StructuredLayout structured_plot_layout(const ExperimentData& data,
                                        std::string_view focal,
                                        const std::array<std::string, 2>& conditioners) {
  ensure_well_formed(data);
  const std::size_t f = data.design.factor_index(focal);
  const std::size_t c1 = data.design.factor_index(conditioners[0]);
  const std::size_t c2 = data.design.factor_index(conditioners[1]);
  if (f == c1 || f == c2 || c1 == c2) {
    throw ValidationError("structured plot needs a focal factor and two distinct conditioners");
  }
  for (const std::size_t idx : {f, c1, c2}) {
    if (!data.design.factors[idx].is_two_level()) {
      throw ValidationError("structured plot factor '" + data.design.factors[idx].name +
                            "' must be two-level");
    }
  }

  StructuredLayout layout;
  layout.focal = std::string(focal);
  layout.conditioners = conditioners;
  // Cell order (L,L), (H,L), (L,H), (H,H): conditioner 1 alternates within
  // each pair, conditioner 2 switches between the pairs.
  const std::array<std::pair<Code, Code>, 4> cell_keys{
      std::pair{-1, -1}, std::pair{+1, -1}, std::pair{-1, +1}, std::pair{+1, +1}};
  for (std::size_t cell = 0; cell < 4; ++cell) {
    layout.cells[cell].cond1 = cell_keys[cell].first;
    layout.cells[cell].cond2 = cell_keys[cell].second;
  }

  // Gather (focal level, run id, row) per cell, then order by level, then id.
  for (std::size_t cell = 0; cell < 4; ++cell) {
    std::vector<std::tuple<Code, int, std::size_t>> members;
    for (std::size_t i = 0; i < data.design.runs.size(); ++i) {
      const auto& settings = data.design.runs[i].settings;
      if (settings[c1] == cell_keys[cell].first && settings[c2] == cell_keys[cell].second) {
        members.emplace_back(settings[f], data.design.runs[i].id, i);
      }
    }
    std::sort(members.begin(), members.end());
    for (const auto& [level, id, row] : members) {
      layout.cells[cell].points.emplace_back(level, data.response[row]);
      layout.cells[cell].run_ids.push_back(id);
    }
  }
  return layout;
}

ScreeningReport screen(const ExperimentData& data, double relative_threshold,
                       double absolute_floor) {
  ScreeningReport report;
  report.effects = rank_effects(data);
  ActiveSelection selection = flag_active(report.effects, relative_threshold, absolute_floor);
  report.active = std::move(selection.active);
  report.threshold_used = selection.threshold_used;
  report.diagnostics = validate_design(data.design);

  if (static_cast<int>(report.active.size()) > kProjectionSafeFactorLimit) {
    report.warnings.push_back(
        "more than " + std::to_string(kProjectionSafeFactorLimit) +
        " active factors: a 12-run screening design no longer projects onto a "
        "replicated full factorial over the active subset");
  }
  if (!report.diagnostics.orthogonal()) {
    report.warnings.push_back(
        "design columns are not mutually orthogonal; effect estimates may be "
        "contaminated by one another");
  }
  if (!report.diagnostics.duplicate_runs.empty()) {
    report.warnings.push_back("design contains duplicated runs");
  }
  return report;
}

}  // namespace doe
