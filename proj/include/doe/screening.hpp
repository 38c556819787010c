#pragma once

#include <array>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "doe/design.hpp"
#include "doe/effects.hpp"

namespace doe {

// Default selection rule: a factor is active when its effect magnitude is at
// least one third of the largest. Reproduces visual screening of a dominant
// effect plus runners-up.
inline constexpr double kDefaultRelativeThreshold = 1.0 / 3.0;

// If more than this many factors come out active, a 12-run screening design
// no longer guarantees a clean projection onto the active subset.
inline constexpr int kProjectionSafeFactorLimit = 4;

// Main effect of every factor, sorted by |mean_difference| descending; ties
// keep factor declaration order. Requires all factors two-level.
std::vector<EffectEstimate> rank_effects(const ExperimentData& data);

struct ActiveSelection {
  std::vector<std::string> active;  // prefix of the ranked list
  double threshold_used = 0.0;
};

// Flags every effect with |mean_difference| >= threshold_used where
// threshold_used = relative_threshold * max|mean_difference|, raised to
// absolute_floor when that is larger. All-zero effects -> empty selection.
ActiveSelection flag_active(std::span<const EffectEstimate> ranked,
                            double relative_threshold,
                            double absolute_floor = 0.0);

// One per-factor panel: every run's (coded level, response) point and the two
// level means the joined line passes through.
struct Panel {
  std::string factor;
  std::vector<std::pair<Code, double>> points;  // run order
  double mean_low = 0.0;
  double mean_high = 0.0;
};

struct PanelData {
  std::vector<Panel> panels;  // factor declaration order
};

// Panel layout for the per-factor main-effects display. Requires all factors
// two-level.
PanelData main_effects_panels(const ExperimentData& data);

// One cell of the structured display: the runs at a fixed conditioner-level
// pair, plotted against the focal factor.
struct StructuredCell {
  Code cond1 = 0;
  Code cond2 = 0;
  std::vector<std::pair<Code, double>> points;  // by focal level, then run id
  std::vector<int> run_ids;                     // same order as points
};

// Four cells keyed by conditioner levels, left to right:
// (L,L), (H,L), (L,H), (H,H) - the first conditioner alternates within each
// pair, the second switches between the pairs.
struct StructuredLayout {
  std::string focal;
  std::array<std::string, 2> conditioners;
  std::array<StructuredCell, 4> cells;
};

StructuredLayout structured_plot_layout(const ExperimentData& data,
                                        std::string_view focal,
                                        const std::array<std::string, 2>& conditioners);

// The assembled screening result: ranked effects, the flagged active subset,
// and design diagnostics.
struct ScreeningReport {
  std::vector<EffectEstimate> effects;  // |mean_difference| descending
  std::vector<std::string> active;
  double threshold_used = 0.0;
  DesignDiagnostics diagnostics;
  std::vector<std::string> warnings;
};

ScreeningReport screen(const ExperimentData& data,
                       double relative_threshold = kDefaultRelativeThreshold,
                       double absolute_floor = 0.0);

}  // namespace doe
